//! Every algorithm on the three-state example, poles -1, -2, -3.
//!
//! Run with `cargo run --example fil_rouge`.

use poleplace::bench::evaluate_placement;
use poleplace::linalg::{DenseMatrix, DenseVector, PrecisionMode};
use poleplace::placement::{place, Algorithm, PoleSpec, StateSpace};

fn main() {
    let sys = StateSpace::new(
        DenseMatrix::from_f64_rows(&[[1.0, 3.0, 5.0], [7.0, 13.0, 17.0], [1.0, 1.0, 1.0]]),
        DenseVector::from_f64(&[1.0, 1.0, 1.0]),
    )
    .expect("square system");
    let spec = PoleSpec::real(&[-1.0, -2.0, -3.0]);

    println!("{:<20} {:>10} {:>10} {:>10}  max|err|", "algorithm", "k1", "k2", "k3");
    for algo in Algorithm::ALL {
        match place(&sys, &spec, algo) {
            Ok(k) => {
                let rec = evaluate_placement(&sys, &spec, &k, PrecisionMode::Bits64);
                let g = k.as_slice();
                println!("{:<20} {:>10.6} {:>10.6} {:>10.6}  {:.1e}", algo.name(), g[0], g[1], g[2], rec.max_abs_error);
            }
            Err(e) => println!("{:<20} failed: {e}", algo.name()),
        }
    }
    println!("\nexpected K = (4, 7.5, 9.5)");
}
