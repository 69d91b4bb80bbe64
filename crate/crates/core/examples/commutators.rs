//! Anchored brackets reduce to plain commutators.
//!
//! Run with `cargo run --example commutators`.

use poleplace::algebroid::{oblique_example, orthogonal_example, QrConvention};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for conv in [QrConvention::Householder, QrConvention::NonNegativeDiagonal] {
        let ex = orthogonal_example(conv)?;
        println!("orthogonal anchor, {conv:?} QR");
        println!("  Q <A1,A2> Q^T      = {:?}", ex.bracket_side.to_rows());
        println!("  [Q A1 Q^T, Q A2 Q^T] = {:?}", ex.commutator_side.to_rows());
        println!("  difference         = {:.2e}", (&ex.bracket_side - &ex.commutator_side).max_abs());
    }

    let ob = oblique_example()?;
    println!("\noblique anchor (exact rationals)");
    println!("an(A1) =\n{}", ob.anchored_a1);
    println!("an(A2) =\n{}", ob.anchored_a2);
    println!("an({{A1,A2}}) =\n{}", ob.bracket_side);
    println!("identity holds exactly: {}", ob.bracket_side == ob.commutator_side);
    Ok(())
}
