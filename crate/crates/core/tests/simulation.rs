use poleplace::bench::ExampleFamily;
use poleplace::linalg::DenseVector;
use poleplace::placement::PoleSpec;
use poleplace::sim::{simulate, trace_diff, FeedbackMode, SimConfig};

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

#[test]
fn diag7_single_precision_transient_then_decay() {
    let fam = ExampleFamily::scaled_diagonal(7, Some(341));
    let sys = fam.system().unwrap().cast::<f32>();
    let spec = PoleSpec::real(&fam.default_poles());
    let x0 = DenseVector::<f32>::from_f64(&[1.0; 7]);

    let cfg = SimConfig::new(2000.0, 0.05, x0.clone(), FeedbackMode::GainVector).unwrap();
    let tr = simulate(&sys, &spec, &cfg, None).unwrap();
    let start = norm(&tr.states[0]);
    let peak = tr.states.iter().map(|x| norm(x)).fold(0.0, f64::max);
    assert!(peak > 10.0 * start, "peak {peak}");
    assert!(tr.final_norm() < start, "final {}", tr.final_norm());

    let chain_cfg = SimConfig::new(2000.0, 0.05, x0, FeedbackMode::ChainFunction).unwrap();
    let chain = simulate(&sys, &spec, &chain_cfg, None).unwrap();
    let diff = trace_diff(&tr, &chain).unwrap();
    assert!(diff.sup_abs() <= 1e-2 * tr.sup_abs(), "{} vs {}", diff.sup_abs(), tr.sup_abs());
}

#[test]
fn diag6_double_precision_decays() {
    let fam = ExampleFamily::scaled_diagonal(6, Some(341));
    let sys = fam.system().unwrap();
    let spec = PoleSpec::real(&fam.default_poles());
    let x0 = DenseVector::new((1..=6).map(|k| k as f64).collect()).unwrap();
    let cfg = SimConfig::new(2000.0, 0.05, x0, FeedbackMode::GainVector).unwrap();
    let tr = simulate(&sys, &spec, &cfg, None).unwrap();
    assert!(tr.final_norm() < 1e-3, "{}", tr.final_norm());
}
