//! Closed-loop RK4 simulation with gain-vector or chain feedback.

use std::fmt::Write as _;

use thiserror::Error;

use crate::linalg::{DenseVector, Real};
use crate::placement::{
    build_anchor_chain, gain_from_chain, AnchorChain, ChainFeedback, Gain, PlacementError, PoleSpec, StateSpace,
};

/// States with a larger norm abort the run.
pub const OVERFLOW_GUARD: f64 = 1e12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("state diverged at t = {time}: norm {norm:e}")]
    DivergedState { time: f64, norm: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("time grids differ")]
    GridMismatch,
    #[error(transparent)]
    Placement(#[from] PlacementError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeedbackMode {
    /// `u = -K x` with `K` extracted from the chain.
    GainVector,
    /// `u` evaluated through the anchor chain, without forming `K`.
    ChainFunction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig<T = f64> {
    pub horizon: f64,
    pub step: f64,
    pub x0: DenseVector<T>,
    pub feedback: FeedbackMode,
}

impl<T: Real> SimConfig<T> {
    pub fn new(horizon: f64, step: f64, x0: DenseVector<T>, feedback: FeedbackMode) -> Result<Self, SimError> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(SimError::InvalidConfig(format!("horizon must be positive, got {horizon}")));
        }
        if !(step > 0.0 && step <= horizon) {
            return Err(SimError::InvalidConfig(format!("step must lie in (0, {horizon}], got {step}")));
        }
        Ok(Self {
            horizon,
            step,
            x0,
            feedback,
        })
    }

    /// `h = 0.01` and a horizon of five times the slowest time constant.
    pub fn with_defaults(spec: &PoleSpec, x0: DenseVector<T>, feedback: FeedbackMode) -> Result<Self, SimError> {
        let slowest = spec
            .poles()?
            .iter()
            .map(|r| r.re.abs())
            .fold(f64::INFINITY, f64::min);
        if !(slowest > 0.0 && slowest.is_finite()) {
            return Err(SimError::InvalidConfig("default horizon needs poles off the imaginary axis".into()));
        }
        Self::new(5.0 / slowest, 0.01, x0, feedback)
    }

    pub fn steps(&self) -> usize {
        (self.horizon / self.step + 1e-9).floor() as usize
    }
}

/// Sampled trajectory, widened to `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &[f64] {
        self.states.last().map_or(&[], Vec::as_slice)
    }

    pub fn final_norm(&self) -> f64 {
        norm(self.final_state())
    }

    /// Largest state norm along the trace.
    pub fn max_norm(&self) -> f64 {
        self.states.iter().map(|s| norm(s)).fold(0.0, f64::max)
    }

    /// Largest absolute entry.
    pub fn sup_abs(&self) -> f64 {
        self.states.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// `t,x1,...,xn` with a header line.
    pub fn to_csv(&self) -> String {
        let n = self.states.first().map_or(0, Vec::len);
        let mut out = String::from("t");
        for i in 1..=n {
            let _ = write!(out, ",x{i}");
        }
        out.push('\n');
        for (t, s) in self.times.iter().zip(&self.states) {
            let _ = write!(out, "{t}");
            for v in s {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Pointwise `a - b` on identical grids.
pub fn trace_diff(a: &Trace, b: &Trace) -> Result<Trace, SimError> {
    if a.times != b.times || a.states.iter().zip(&b.states).any(|(x, y)| x.len() != y.len()) {
        return Err(SimError::GridMismatch);
    }
    Ok(Trace {
        times: a.times.clone(),
        states: a
            .states
            .iter()
            .zip(&b.states)
            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect())
            .collect(),
    })
}

/// One classical Runge-Kutta step.
pub fn rk4_step<T: Real>(
    f: impl Fn(T, &DenseVector<T>) -> DenseVector<T>,
    t: T,
    x: &DenseVector<T>,
    h: T,
) -> Result<DenseVector<T>, SimError> {
    let half = h / T::cast(2.0);
    let k1 = f(t, x);
    let k2 = f(t + half, &x.axpy(half, &k1));
    let k3 = f(t + half, &x.axpy(half, &k2));
    let k4 = f(t + h, &x.axpy(h, &k3));
    let sum = k1.axpy(T::cast(2.0), &k2).axpy(T::cast(2.0), &k3).axpy(T::one(), &k4);
    let next = x.axpy(h / T::cast(6.0), &sum);
    if !next.is_finite() || !k1.is_finite() {
        return Err(SimError::DivergedState {
            time: t.widen(),
            norm: f64::INFINITY,
        });
    }
    Ok(next)
}

/// Integrates `x' = A x + B u(x)` on the grid of `cfg`.
pub fn simulate_with<T: Real>(
    sys: &StateSpace<T>,
    horizon: f64,
    step: f64,
    x0: &DenseVector<T>,
    control: impl Fn(&DenseVector<T>) -> T,
) -> Result<Trace, SimError> {
    if x0.len() != sys.n() {
        return Err(SimError::InvalidConfig(format!(
            "x0 has {} entries for a system of order {}",
            x0.len(),
            sys.n()
        )));
    }
    let steps = (horizon / step + 1e-9).floor() as usize;
    let h = T::cast(step);
    let rhs = |_: T, x: &DenseVector<T>| sys.a().matvec(x).axpy(control(x), sys.b());
    let mut x = x0.clone();
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(x.to_f64());
    for i in 0..steps {
        let t = i as f64 * step;
        x = rk4_step(rhs, T::cast(t), &x, h).map_err(|e| match e {
            SimError::DivergedState { .. } => SimError::DivergedState {
                time: t,
                norm: f64::INFINITY,
            },
            other => other,
        })?;
        let nx = x.norm().widen();
        if nx > OVERFLOW_GUARD {
            return Err(SimError::DivergedState {
                time: (i + 1) as f64 * step,
                norm: nx,
            });
        }
        times.push((i + 1) as f64 * step);
        states.push(x.to_f64());
    }
    Ok(Trace { times, states })
}

/// Closed loop under the mode of `cfg`. The gain vector is extracted from
/// the chain; a chain is built when none is supplied.
pub fn simulate<T: Real>(
    sys: &StateSpace<T>,
    spec: &PoleSpec,
    cfg: &SimConfig<T>,
    chain: Option<&AnchorChain<T>>,
) -> Result<Trace, SimError> {
    let owned;
    let chain = match chain {
        Some(c) => c,
        None => {
            owned = build_anchor_chain(sys)?;
            &owned
        }
    };
    match cfg.feedback {
        FeedbackMode::GainVector => {
            let k = gain_from_chain(chain, sys, spec)?;
            simulate_gain(sys, cfg, &k)
        }
        FeedbackMode::ChainFunction => {
            let fb = ChainFeedback::new(chain.clone(), sys.clone(), spec)?;
            simulate_with(sys, cfg.horizon, cfg.step, &cfg.x0, |x| fb.eval(x))
        }
    }
}

/// Closed loop `u = -K x` for a given gain.
pub fn simulate_gain<T: Real>(sys: &StateSpace<T>, cfg: &SimConfig<T>, k: &Gain<T>) -> Result<Trace, SimError> {
    if k.k.len() != sys.n() {
        return Err(SimError::InvalidConfig("gain length differs from the system order".into()));
    }
    simulate_with(sys, cfg.horizon, cfg.step, &cfg.x0, |x| -k.k.dot(x))
}

/// Observed order from three resolutions `h, h/2, h/4`:
/// `log2(|x_h - x_h/2| / |x_h/2 - x_h/4|)` at the final time.
pub fn richardson_order(sys: &StateSpace<f64>, k: &Gain<f64>, x0: &DenseVector<f64>, horizon: f64, h: f64) -> Result<f64, SimError> {
    let run = |step: f64| -> Result<Vec<f64>, SimError> {
        Ok(simulate_with(sys, horizon, step, x0, |x| -k.k.dot(x))?.final_state().to_vec())
    };
    let (a, b, c) = (run(h)?, run(h / 2.0)?, run(h / 4.0)?);
    let d1: Vec<f64> = a.iter().zip(&b).map(|(p, q)| p - q).collect();
    let d2: Vec<f64> = b.iter().zip(&c).map(|(p, q)| p - q).collect();
    Ok((norm(&d1) / norm(&d2)).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DenseMatrix;

    fn fil_rouge() -> StateSpace<f64> {
        StateSpace::new(
            DenseMatrix::from_f64_rows(&[[1.0, 3.0, 5.0], [7.0, 13.0, 17.0], [1.0, 1.0, 1.0]]),
            DenseVector::filled(3, 1.0),
        )
        .unwrap()
    }

    #[test]
    fn rk4_basics() {
        let x = DenseVector::from_f64(&[1.0, -2.0]);
        let y = rk4_step(|_, x: &DenseVector<f64>| DenseVector::zeros(x.len()), 0.0, &x, 0.1).unwrap();
        assert_eq!(y, x);
        let y = rk4_step(|_, x: &DenseVector<f64>| x.scale(-1.0), 0.0, &DenseVector::from_f64(&[1.0]), 0.1).unwrap();
        let want = 1.0 - 0.1 + 0.01 / 2.0 - 0.001 / 6.0 + 0.0001 / 24.0;
        assert!((y[0] - want).abs() < 1e-15, "{}", y[0]);
        assert!((y[0] - 0.904_837_5).abs() < 1e-15);
        assert!((y[0] - (-0.1f64).exp()).abs() < 1e-7);
        let r = rk4_step(|_, x: &DenseVector<f64>| x.map(|_| f64::NAN), 0.0, &DenseVector::from_f64(&[1.0]), 0.1);
        assert!(matches!(r, Err(SimError::DivergedState { .. })));
    }

    #[test]
    fn fil_rouge_decays() {
        let sys = fil_rouge();
        let spec = PoleSpec::real(&[-1.0, -2.0, -3.0]);
        let x0 = DenseVector::from_f64(&[1.0, 2.0, 3.0]);
        let mut traces = Vec::new();
        for mode in [FeedbackMode::GainVector, FeedbackMode::ChainFunction] {
            let cfg = SimConfig::new(10.0, 0.01, x0.clone(), mode).unwrap();
            let tr = simulate(&sys, &spec, &cfg, None).unwrap();
            assert_eq!(tr.len(), 1001);
            assert!((tr.times[1000] - 10.0).abs() < 1e-12);
            assert!(tr.final_norm() < 1e-3, "{}", tr.final_norm());
            traces.push(tr);
        }
        let d = trace_diff(&traces[0], &traces[1]).unwrap();
        assert!(d.sup_abs() <= 1e-8 * traces[0].max_norm());
    }

    #[test]
    fn zero_state_and_errors() {
        let sys = fil_rouge();
        let spec = PoleSpec::real(&[-1.0, -2.0, -3.0]);
        let cfg = SimConfig::new(1.0, 0.1, DenseVector::zeros(3), FeedbackMode::ChainFunction).unwrap();
        let tr = simulate(&sys, &spec, &cfg, None).unwrap();
        assert_eq!(tr.sup_abs(), 0.0);
        assert!(SimConfig::<f64>::new(0.0, 0.1, DenseVector::zeros(3), FeedbackMode::GainVector).is_err());
        assert!(SimConfig::<f64>::new(1.0, 2.0, DenseVector::zeros(3), FeedbackMode::GainVector).is_err());
        let short = Trace {
            times: vec![0.0],
            states: vec![vec![0.0; 3]],
        };
        assert_eq!(trace_diff(&tr, &short), Err(SimError::GridMismatch));
        assert_eq!(trace_diff(&tr, &tr).unwrap().sup_abs(), 0.0);
    }

    #[test]
    fn divergence_guard() {
        let sys = StateSpace::new(DenseMatrix::<f64>::from_f64_rows(&[[10.0]]), DenseVector::from_f64(&[1.0])).unwrap();
        let r = simulate_with(&sys, 10.0, 0.01, &DenseVector::from_f64(&[1.0]), |_| 0.0);
        assert!(matches!(r, Err(SimError::DivergedState { .. })), "{r:?}");
    }

    #[test]
    fn order_four() {
        let sys = fil_rouge();
        let k = Gain::new(DenseVector::from_f64(&[4.0, 7.5, 9.5]));
        let p = richardson_order(&sys, &k, &DenseVector::from_f64(&[1.0, 2.0, 3.0]), 2.0, 0.1).unwrap();
        assert!((3.5..=4.5).contains(&p), "{p}");
    }

    #[test]
    fn csv_layout() {
        let tr = Trace {
            times: vec![0.0, 0.5],
            states: vec![vec![1.0, 2.0], vec![0.5, 1.0]],
        };
        assert_eq!(tr.to_csv(), "t,x1,x2\n0,1,2\n0.5,0.5,1\n");
    }

    #[test]
    fn default_horizon() {
        let spec = PoleSpec::real(&[-0.01, -0.02]);
        let cfg = SimConfig::with_defaults(&spec, DenseVector::<f64>::zeros(2), FeedbackMode::GainVector).unwrap();
        assert!((cfg.horizon - 500.0).abs() < 1e-9);
        assert_eq!(cfg.step, 0.01);
    }
}
