//! The anchor chain: controllability test, gain extraction and the
//! nested feedback evaluation that never forms K.
//!
//! Run with `cargo run --example anchor_chain`.

use poleplace::linalg::{DenseMatrix, DenseVector};
use poleplace::placement::{
    build_anchor_chain, chain_controllability_report, feedback_eval, gain_from_chain, PoleSpec, StateSpace,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ones = DenseVector::<f64>::from_f64(&[1.0, 1.0, 1.0]);
    let good = StateSpace::new(
        DenseMatrix::from_f64_rows(&[[1.0, 3.0, 5.0], [7.0, 13.0, 17.0], [1.0, 1.0, 1.0]]),
        ones.clone(),
    )?;
    let bad = StateSpace::new(
        DenseMatrix::from_f64_rows(&[[6.0, 4.0, -9.0], [5.0, 2.0, -6.0], [0.0, 0.0, 1.0]]),
        ones,
    )?;

    for (name, sys) in [("controllable", &good), ("uncontrollable", &bad)] {
        let chain = build_anchor_chain(sys)?;
        let report = chain_controllability_report(&chain, 1e-10);
        println!("{name}: {report:?}");
    }

    let spec = PoleSpec::real(&[-1.0, -2.0, -3.0]);
    let chain = build_anchor_chain(&good)?;
    let k = gain_from_chain(&chain, &good, &spec)?;
    println!("\nK from the chain = {:?}", k.as_slice());

    let x = DenseVector::from_f64(&[0.3, -1.2, 2.0]);
    let nested = feedback_eval(&chain, &good, &spec, &x)?;
    let direct = -k.k.dot(&x);
    println!("u(x) nested = {nested:.15}");
    println!("u(x) = -Kx  = {direct:.15}");
    Ok(())
}
