//! Eigenvalue errors and spurious complex pairs on the integer family.
//!
//! Run with `cargo run --release --example integer_family`.

use poleplace::bench::{run_suite, ExampleFamily, PoleOrder, SuiteConfig};
use poleplace::linalg::PrecisionMode;
use poleplace::placement::Algorithm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SuiteConfig {
        families: (8..=12).map(ExampleFamily::integer).collect(),
        algorithms: vec![
            Algorithm::Ackermann,
            Algorithm::Miminis,
            Algorithm::Algebroid1,
            Algorithm::Algebroid2,
        ],
        precisions: vec![PrecisionMode::Bits64],
        orders: vec![PoleOrder::Forward, PoleOrder::Reversed],
    };
    print!("{}", run_suite(&cfg)?.render_text());
    Ok(())
}
