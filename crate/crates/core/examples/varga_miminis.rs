//! Schur-based methods on the well-conditioned scaled-diagonal family.
//!
//! Run with `cargo run --release --example varga_miminis`.

use poleplace::bench::{run_one, ExampleFamily, PoleOrder};
use poleplace::linalg::PrecisionMode;
use poleplace::placement::Algorithm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>3} {:<20} {:>12}", "n", "algorithm", "max|err|");
    for n in [4, 8, 12, 16] {
        let fam = ExampleFamily::scaled_diagonal(n, Some(341));
        for algo in [Algorithm::Varga, Algorithm::Miminis, Algorithm::Algebroid2] {
            let r = run_one(&fam, algo, PrecisionMode::Bits64, PoleOrder::Forward)?;
            match &r.failure {
                None => println!("{n:>3} {:<20} {:>12.3e}", algo.name(), r.max_abs_error),
                Some(e) => println!("{n:>3} {:<20} failed: {e}", algo.name()),
            }
        }
    }
    Ok(())
}
