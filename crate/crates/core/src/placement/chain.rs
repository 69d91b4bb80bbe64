use super::quotient::annihilator;
use super::{degeneracy_tol, Gain, PlacementError, PoleSpec, StateSpace};
use crate::linalg::{svd_decompose, DenseMatrix, DenseVector, Real};

/// One level of the anchor chain.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchorLevel<T = f64> {
    /// `(n-i) x (n-i+1)` anchor annihilating the previous quotient input.
    pub an: DenseMatrix<T>,
    /// `(n-i) x n` transfer map `an_i ... an_1 A^i`.
    pub a_t: DenseMatrix<T>,
    /// Quotient input `a_t B`.
    pub b: DenseVector<T>,
}

/// Anchors of the second algebroid method, from the forward sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchorChain<T = f64> {
    pub levels: Vec<AnchorLevel<T>>,
    n: usize,
    b0: DenseVector<T>,
    a_norm: T,
}

impl<T: Real> AnchorChain<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `A_{t,n-1}` (the identity when `n = 1`).
    pub fn last_transfer(&self) -> DenseMatrix<T> {
        self.levels
            .last()
            .map_or_else(|| DenseMatrix::identity(self.n), |l| l.a_t.clone())
    }

    /// The final scalar `B_{n-1}`; `B_0 = B` when `n = 1`.
    pub fn final_input(&self) -> T {
        self.levels.last().map_or(self.b0[0], |l| l.b[0])
    }

    /// `B_k` for `k = 0..n-1`.
    pub fn input(&self, k: usize) -> &DenseVector<T> {
        if k == 0 {
            &self.b0
        } else {
            &self.levels[k - 1].b
        }
    }
}

/// Forward sweep: `an_i = W Q^T` where `Q^T` annihilates `B_(i-1)` and `W` is
/// the transposed left singular basis of `Q^T A_(t,i-1) A`.
pub fn build_anchor_chain<T: Real>(sys: &StateSpace<T>) -> Result<AnchorChain<T>, PlacementError> {
    let n = sys.n();
    let a = sys.a();
    let b = sys.b();
    let mut at = a.clone();
    let mut bt = b.clone();
    let mut levels = Vec::with_capacity(n.saturating_sub(1));
    for _ in 1..n {
        let an0 = annihilator(&bt);
        let w = svd_decompose(&(&an0 * &at))?.u.transpose();
        let an = &w * &an0;
        let a_t = &an * &at;
        let bi = a_t.matvec(b);
        at = &a_t * a;
        bt = bi.clone();
        levels.push(AnchorLevel { an, a_t, b: bi });
    }
    Ok(AnchorChain {
        levels,
        n,
        b0: b.clone(),
        a_norm: a.frobenius(),
    })
}

/// Outcome of the chain-based controllability test.
#[derive(Debug, Clone, PartialEq)]
pub struct ControllabilityReport {
    pub controllable: bool,
    /// First `k` with `|B_k| <= tol |A|^k |B|`.
    pub first_vanishing_level: Option<usize>,
    pub min_quotient_input_norm: f64,
}

/// Flags loss of controllability where a quotient input vanishes.
pub fn chain_controllability_report<T: Real>(chain: &AnchorChain<T>, tol: f64) -> ControllabilityReport {
    let b_norm = chain.b0.norm().widen();
    let a_norm = chain.a_norm.widen();
    let levels: Vec<usize> = if chain.levels.is_empty() { vec![0] } else { (1..chain.n).collect() };
    let mut first = None;
    let mut min = f64::INFINITY;
    for k in levels {
        let bk = chain.input(k).norm().widen();
        min = min.min(bk);
        if first.is_none() && (bk == 0.0 || bk <= tol * a_norm.powi(k as i32) * b_norm) {
            first = Some(k);
        }
    }
    ControllabilityReport {
        controllable: first.is_none(),
        first_vanishing_level: first,
        min_quotient_input_norm: min,
    }
}

fn ascending<T: Real>(sys: &StateSpace<T>, spec: &PoleSpec) -> Result<Vec<T>, PlacementError> {
    spec.check_degree(sys.n())?;
    let mut pp = spec.coefficients::<T>()?.into_vec();
    pp.reverse();
    Ok(pp)
}

fn final_denominator<T: Real>(chain: &AnchorChain<T>, sys: &StateSpace<T>) -> Result<T, PlacementError> {
    if chain.n != sys.n() {
        return Err(PlacementError::DimensionMismatch("chain built for another system".into()));
    }
    let den = chain.final_input();
    let scale = chain.last_transfer().frobenius() * sys.b().norm();
    if !(den.abs() > degeneracy_tol::<T>() * scale) {
        return Err(PlacementError::UncontrollableSystem(
            "final quotient input of the anchor chain vanishes".into(),
        ));
    }
    Ok(den)
}

/// Construction phase: nested evaluation of `Phi(A)` through the chain,
/// `K = (sum_i an_(n-1)..an_(i+1) A_(t,i) p_i + A_(t,n-1) A) / B_(n-1)`.
pub fn gain_from_chain<T: Real>(chain: &AnchorChain<T>, sys: &StateSpace<T>, spec: &PoleSpec) -> Result<Gain<T>, PlacementError> {
    let pp = ascending(sys, spec)?;
    let den = final_denominator(chain, sys)?;
    let n = sys.n();
    let mut kt = DenseMatrix::identity(n).scale(pp[0]);
    for (i, level) in chain.levels.iter().enumerate() {
        kt = &level.a_t.scale(pp[i + 1]) + &(&level.an * &kt);
    }
    kt = &kt + &(&chain.last_transfer() * sys.a());
    Ok(Gain::new(kt.row_vector(0).scale(T::one() / den)))
}

/// The control `u = -K x` evaluated through the chain without forming `K`.
pub fn feedback_eval<T: Real>(
    chain: &AnchorChain<T>,
    sys: &StateSpace<T>,
    spec: &PoleSpec,
    x: &DenseVector<T>,
) -> Result<T, PlacementError> {
    if x.len() != sys.n() {
        return Err(PlacementError::DimensionMismatch("state length".into()));
    }
    let pp = ascending(sys, spec)?;
    let den = final_denominator(chain, sys)?;
    Ok(feedback_with(chain, sys, &pp, den, x))
}

pub(crate) fn feedback_with<T: Real>(chain: &AnchorChain<T>, sys: &StateSpace<T>, pp: &[T], den: T, x: &DenseVector<T>) -> T {
    let mut ut = x.scale(pp[0]);
    for (i, level) in chain.levels.iter().enumerate() {
        ut = level.a_t.matvec(x).scale(pp[i + 1]).axpy(T::one(), &level.an.matvec(&ut));
    }
    let tail = chain.last_transfer().matvec(&sys.a().matvec(x));
    -(ut[0] + tail[0]) / den
}

/// Precomputed chain feedback, for repeated evaluation in simulations.
#[derive(Debug, Clone)]
pub struct ChainFeedback<T = f64> {
    chain: AnchorChain<T>,
    sys: StateSpace<T>,
    pp: Vec<T>,
    den: T,
}

impl<T: Real> ChainFeedback<T> {
    pub fn new(chain: AnchorChain<T>, sys: StateSpace<T>, spec: &PoleSpec) -> Result<Self, PlacementError> {
        let pp = ascending(&sys, spec)?;
        let den = final_denominator(&chain, &sys)?;
        Ok(Self { chain, sys, pp, den })
    }

    pub fn eval(&self, x: &DenseVector<T>) -> T {
        feedback_with(&self.chain, &self.sys, &self.pp, self.den, x)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn fil_rouge_chain() {
        let sys = fil_rouge::<f64>();
        let chain = build_anchor_chain(&sys).unwrap();
        assert_eq!(chain.levels.len(), 2);
        let b1 = &chain.levels[0].b;
        assert!((b1[0].abs() - 25.6571).abs() < 1e-4 && (b1[1].abs() - 0.6172).abs() < 1e-4, "{b1:?}");
        assert!((chain.levels[1].b[0].abs() - 7.9186).abs() < 1e-4);
        let k = gain_from_chain(&chain, &sys, &poles123()).unwrap();
        assert_gain(&k, &[4.0, 7.5, 9.5], 1e-9);
        let u = feedback_eval(&chain, &sys, &poles123(), &DenseVector::from_f64(&[1.0, 1.0, 1.0])).unwrap();
        assert!((u + 21.0).abs() < 1e-9);
        let u0 = feedback_eval(&chain, &sys, &poles123(), &DenseVector::zeros(3)).unwrap();
        assert_eq!(u0, 0.0);
    }

    #[test]
    fn chain_identities() {
        let sys = fil_rouge::<f64>();
        let chain = build_anchor_chain(&sys).unwrap();
        let a = sys.a();
        let mut prod = DenseMatrix::identity(3);
        let mut ak = DenseMatrix::identity(3);
        for (k, level) in chain.levels.iter().enumerate() {
            let akm1b = ak.matvec(sys.b());
            ak = &ak * a;
            prod = &level.an * &prod;
            let lhs = &prod * &ak;
            assert!((&lhs - &level.a_t).max_abs() < 1e-9 * ak.max_abs(), "level {k}");
            assert!(prod.matvec(&akm1b).max_abs() < 1e-9 * akm1b.max_abs());
            assert!((&level.a_t.matvec(sys.b()) - &level.b).max_abs() == 0.0);
        }
    }

    #[test]
    fn reports() {
        let chain = build_anchor_chain(&fil_rouge::<f64>()).unwrap();
        let r = chain_controllability_report(&chain, 1e-8);
        assert!(r.controllable);
        assert!((r.min_quotient_input_norm - 7.9186).abs() < 1e-4);
        let chain = build_anchor_chain(&uncontrollable::<f64>()).unwrap();
        let r = chain_controllability_report(&chain, 1e-8);
        assert!(!r.controllable);
        assert!(r.first_vanishing_level.unwrap() <= 2);
        assert!(matches!(
            gain_from_chain(&chain, &uncontrollable::<f64>(), &poles123()),
            Err(PlacementError::UncontrollableSystem(_))
        ));
        let zero_b = StateSpace::new(fil_rouge::<f64>().a().clone(), DenseVector::zeros(3)).unwrap();
        let r = chain_controllability_report(&build_anchor_chain(&zero_b).unwrap(), 1e-8);
        assert_eq!(r.first_vanishing_level, Some(1));
    }

    #[test]
    fn cayley_hamilton_gives_zero() {
        let sys = fil_rouge::<f64>();
        let chain = build_anchor_chain(&sys).unwrap();
        let a = sys.a();
        let tr = a.trace();
        let a2 = a * a;
        let c2 = 0.5 * (tr * tr - a2.trace());
        let det = crate::linalg::determinant(a).unwrap();
        let spec = PoleSpec::char_poly(vec![1.0, -tr, c2, -det]).unwrap();
        let k = gain_from_chain(&chain, &sys, &spec).unwrap();
        assert!(k.k.max_abs() < 1e-9);
    }

    #[test]
    fn scalar_chain() {
        let sys = StateSpace::new(DenseMatrix::<f64>::from_f64_rows(&[[2.0]]), DenseVector::from_f64(&[1.0])).unwrap();
        let chain = build_anchor_chain(&sys).unwrap();
        let k = gain_from_chain(&chain, &sys, &PoleSpec::real(&[-1.0])).unwrap();
        assert_eq!(k.as_slice(), &[3.0]);
    }
}
