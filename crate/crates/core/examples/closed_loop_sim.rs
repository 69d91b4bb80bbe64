//! RK4 closed-loop simulation, with the gain vector and with the nested
//! chain feedback.
//!
//! The scaled diagonal family is strongly non-normal: the state grows by
//! several orders of magnitude before it decays, so the default horizon is
//! well past five time constants.
//!
//! Run with `cargo run --release --example closed_loop_sim -- 6 2000`.

use poleplace::bench::ExampleFamily;
use poleplace::linalg::DenseVector;
use poleplace::placement::PoleSpec;
use poleplace::sim::{simulate, trace_diff, FeedbackMode, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map_or(Ok(6), |s| s.parse())?;
    let horizon: f64 = std::env::args().nth(2).map_or(Ok(2000.0), |s| s.parse())?;
    let fam = ExampleFamily::scaled_diagonal(n, Some(341));
    let sys = fam.system()?;
    let spec = PoleSpec::real(&fam.default_poles());
    let x0 = DenseVector::new((1..=n).map(|k| k as f64).collect())?;

    let cfg = SimConfig::new(horizon, 0.05, x0.clone(), FeedbackMode::GainVector)?;
    let gain = simulate(&sys, &spec, &cfg, None)?;
    let cfg = SimConfig::new(horizon, 0.05, x0, FeedbackMode::ChainFunction)?;
    let chain = simulate(&sys, &spec, &cfg, None)?;
    let diff = trace_diff(&gain, &chain)?;

    println!("n = {n}, horizon {} s, {} steps", cfg.horizon, cfg.steps());
    println!("|x(0)|  = {:.6}", gain.states[0].iter().map(|v| v * v).sum::<f64>().sqrt());
    let peak = gain.states.iter().map(|x| x.iter().map(|v| v * v).sum::<f64>().sqrt()).fold(0.0, f64::max);
    println!("peak    = {peak:.6e}");
    println!("|x(T)|  = {:.6e} (gain vector)", gain.final_norm());
    println!("|x(T)|  = {:.6e} (chain feedback)", chain.final_norm());
    println!("max |gain - chain| = {:.3e}, relative {:.3e}", diff.sup_abs(), diff.sup_abs() / gain.sup_abs());
    Ok(())
}
