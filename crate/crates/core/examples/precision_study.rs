//! The same placements in 32-bit and 64-bit arithmetic.
//!
//! Run with `cargo run --release --example precision_study -- 8`.

use poleplace::bench::{run_one, ExampleFamily, PoleOrder};
use poleplace::linalg::PrecisionMode;
use poleplace::placement::Algorithm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map_or(Ok(8), |s| s.parse())?;
    let fam = ExampleFamily::integer(n);
    println!("integer family, n = {n}");
    println!("{:<20} {:<5} {:>12} {:>6}", "algorithm", "bits", "max|err|", "pairs");
    for algo in [Algorithm::Ackermann, Algorithm::Miminis, Algorithm::Algebroid1, Algorithm::Algebroid2] {
        for prec in [PrecisionMode::Bits32, PrecisionMode::Bits64] {
            let r = run_one(&fam, algo, prec, PoleOrder::Forward)?;
            match &r.failure {
                None => println!("{:<20} {:<5} {:>12.3e} {:>6}", algo.name(), prec, r.max_abs_error, r.complex_pair_count),
                Some(e) => println!("{:<20} {:<5} failed: {e}", algo.name(), prec),
            }
        }
    }
    Ok(())
}
