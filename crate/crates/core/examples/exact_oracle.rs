//! Exact rational gains for the integer family, compared against the
//! floating-point algorithms.
//!
//! Run with `cargo run --example exact_oracle -- 8`.

use num_bigint::BigInt;
use poleplace::bench::{integer_example_entries, ExampleFamily};
use poleplace::exact::{place_exact_roots, rational_to_decimal, rational_to_f64, ExactMatrix};
use poleplace::placement::{place, Algorithm, PoleSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map_or(Ok(8), |s| s.parse())?;
    let (a, b) = integer_example_entries(n)?;
    let a = ExactMatrix::from_i64_rows(&a)?;
    let b: Vec<BigInt> = b.into_iter().map(BigInt::from).collect();
    let roots: Vec<i64> = (1..=n as i64).map(|k| -k).collect();

    let exact = place_exact_roots(&a, &b, &roots)?.simplify();
    let ratio = exact.ratio()?;
    println!("exact gain, n = {n}");
    for r in &ratio {
        println!("  {r}  ~ {}", rational_to_decimal(r, 12));
    }

    let fam = ExampleFamily::integer(n);
    let sys = fam.system()?;
    let spec = PoleSpec::real(&fam.default_poles());
    println!("\nrelative error of each float algorithm against the exact gain");
    for algo in Algorithm::ALL {
        match place(&sys, &spec, algo) {
            Ok(k) => {
                let err = k
                    .as_slice()
                    .iter()
                    .zip(&ratio)
                    .map(|(x, r)| {
                        let e = rational_to_f64(r);
                        (x - e).abs() / e.abs().max(1.0)
                    })
                    .fold(0.0, f64::max);
                println!("  {:<20} {err:.2e}", algo.name());
            }
            Err(e) => println!("  {:<20} failed: {e}", algo.name()),
        }
    }
    Ok(())
}
