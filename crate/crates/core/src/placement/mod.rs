//! Single-input pole placement.
//!
//! Every public gain follows one sign convention: the spectrum of `A - B K`
//! is the requested one.

mod ackermann;
mod chain;
mod hyperplane;
mod miminis;
mod quotient;
mod varga;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{
    group_conjugates, poly_from_roots, ComplexScalar, DenseMatrix, DenseVector, LinalgError, PrecisionMode, Real,
    RootGroup,
};

pub use ackermann::{ackermann_direct, ackermann_factored, controllability_matrix, horner_char_matrix};
pub use chain::{
    build_anchor_chain, chain_controllability_report, feedback_eval, ChainFeedback, gain_from_chain, AnchorChain, AnchorLevel,
    ControllabilityReport,
};
pub use hyperplane::{hyperplane_normal, hyperplane_point, place_determinantal, place_sliding, sliding_steps, Hyperplane};
pub use miminis::{place_miminis, place_miminis_iterated};
pub use quotient::{place_algebroid1, quotient_stack, Algebroid1Variant, QuotientLevel, QuotientStack};
pub use varga::place_varga;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlacementError {
    #[error("uncontrollable system: {0}")]
    UncontrollableSystem(String),
    #[error("shift by {lambda} is numerically singular")]
    SingularShift { lambda: f64 },
    #[error("input component {index} is zero")]
    ZeroInputComponent { index: usize },
    #[error("ParallelHyperplanes: the pole hyperplanes do not intersect in a single point")]
    ParallelHyperplanes,
    #[error("DegenerateProjection at step {step}: hyperplanes nearly parallel")]
    DegenerateProjection { step: usize },
    #[error("ComplexBlockUnsupported: Schur form of A has a 2x2 block")]
    ComplexBlockUnsupported,
    #[error("unsupported pole specification: {0}")]
    UnsupportedPoles(String),
    #[error("invalid pole set: {0}")]
    InvalidPoleSet(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Linalg(LinalgError),
}

impl From<LinalgError> for PlacementError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::InvalidPoleSet(s) => PlacementError::InvalidPoleSet(s),
            other => PlacementError::Linalg(other),
        }
    }
}

/// The single-input system `x' = A x + B u`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpace<T = f64> {
    a: DenseMatrix<T>,
    b: DenseVector<T>,
}

impl<T: Real> StateSpace<T> {
    pub fn new(a: DenseMatrix<T>, b: DenseVector<T>) -> Result<Self, PlacementError> {
        if !a.is_square() {
            return Err(PlacementError::DimensionMismatch(format!(
                "A is {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if a.rows() != b.len() {
            return Err(PlacementError::DimensionMismatch(format!(
                "A is {0}x{0} but B has {1} entries",
                a.rows(),
                b.len()
            )));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(PlacementError::Linalg(LinalgError::NonFinite(0)));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &DenseMatrix<T> {
        &self.a
    }

    pub fn b(&self) -> &DenseVector<T> {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn cast<U: Real>(&self) -> StateSpace<U> {
        StateSpace {
            a: self.a.cast(),
            b: self.b.cast(),
        }
    }

    /// `A - B K`.
    pub fn closed_loop(&self, k: &Gain<T>) -> DenseMatrix<T> {
        &self.a - &DenseMatrix::outer(&self.b, &k.k)
    }
}

/// Placement target.
#[derive(Debug, Clone, PartialEq)]
pub enum PoleSpec {
    /// Ordered eigenvalues, closed under conjugation.
    Roots(Vec<ComplexScalar>),
    /// Monic coefficients `[1, p1, ..., pn]` of the characteristic polynomial.
    CharPoly(Vec<f64>),
}

impl PoleSpec {
    pub fn roots(roots: Vec<ComplexScalar>) -> Result<Self, PlacementError> {
        if roots.is_empty() {
            return Err(PlacementError::InvalidPoleSet("no poles".into()));
        }
        group_conjugates(&roots)?;
        Ok(PoleSpec::Roots(roots))
    }

    pub fn real(poles: &[f64]) -> Self {
        PoleSpec::Roots(poles.iter().map(|&p| ComplexScalar::real(p)).collect())
    }

    pub fn char_poly(coeffs: Vec<f64>) -> Result<Self, PlacementError> {
        if coeffs.len() < 2 || coeffs[0] != 1.0 {
            return Err(PlacementError::InvalidPoleSet(
                "characteristic polynomial must be monic of degree >= 1".into(),
            ));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(PlacementError::InvalidPoleSet("non-finite coefficient".into()));
        }
        Ok(PoleSpec::CharPoly(coeffs))
    }

    pub fn degree(&self) -> usize {
        match self {
            PoleSpec::Roots(r) => r.len(),
            PoleSpec::CharPoly(c) => c.len() - 1,
        }
    }

    /// Same poles in reverse order; a characteristic polynomial is unchanged.
    pub fn reversed(&self) -> Self {
        match self {
            PoleSpec::Roots(r) => PoleSpec::Roots(r.iter().rev().copied().collect()),
            c => c.clone(),
        }
    }

    /// Monic descending coefficients.
    pub fn coefficients<T: Real>(&self) -> Result<DenseVector<T>, PlacementError> {
        match self {
            PoleSpec::Roots(r) => Ok(poly_from_roots(r)?),
            PoleSpec::CharPoly(c) => Ok(DenseVector::from_f64(c)),
        }
    }

    /// The target eigenvalues; a characteristic polynomial is solved through
    /// its companion matrix.
    pub fn poles(&self) -> Result<Vec<ComplexScalar>, PlacementError> {
        match self {
            PoleSpec::Roots(r) => Ok(r.clone()),
            PoleSpec::CharPoly(c) => {
                let n = c.len() - 1;
                let comp = DenseMatrix::from_fn(n, n, |i, j| {
                    if i == 0 {
                        -c[j + 1]
                    } else if j + 1 == i {
                        1.0
                    } else {
                        0.0
                    }
                });
                Ok(crate::linalg::eigenvalues(&comp)?)
            }
        }
    }

    pub(crate) fn check_degree(&self, n: usize) -> Result<(), PlacementError> {
        if self.degree() != n {
            return Err(PlacementError::DimensionMismatch(format!(
                "{} poles for a system of order {n}",
                self.degree()
            )));
        }
        Ok(())
    }

    pub(crate) fn groups(&self) -> Result<Vec<RootGroup>, PlacementError> {
        match self {
            PoleSpec::Roots(r) => Ok(group_conjugates(r)?),
            PoleSpec::CharPoly(_) => Err(PlacementError::UnsupportedPoles(
                "this method needs explicit poles, not a characteristic polynomial".into(),
            )),
        }
    }

    /// The poles as reals, for methods restricted to real spectra.
    pub(crate) fn real_roots(&self) -> Result<Vec<f64>, PlacementError> {
        self.groups()?
            .into_iter()
            .map(|g| match g {
                RootGroup::Real(r) => Ok(r),
                RootGroup::Pair { .. } => Err(PlacementError::UnsupportedPoles(
                    "this method places real poles only".into(),
                )),
            })
            .collect()
    }
}

/// Row feedback gain for `u = -K x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gain<T = f64> {
    pub k: DenseVector<T>,
}

impl<T: Real> Gain<T> {
    pub fn new(k: DenseVector<T>) -> Self {
        Self { k }
    }

    pub fn to_f64(&self) -> Gain<f64> {
        Gain { k: self.k.cast() }
    }

    pub fn as_slice(&self) -> &[T] {
        self.k.as_slice()
    }
}

/// The placement algorithms available through [`place`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Algorithm {
    Ackermann,
    AckermannFactored,
    Determinantal,
    Sliding,
    Algebroid1,
    Algebroid1Solve,
    Algebroid2,
    Miminis,
    Varga,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::Ackermann,
        Algorithm::AckermannFactored,
        Algorithm::Determinantal,
        Algorithm::Sliding,
        Algorithm::Algebroid1,
        Algorithm::Algebroid1Solve,
        Algorithm::Algebroid2,
        Algorithm::Miminis,
        Algorithm::Varga,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ackermann => "ackermann",
            Algorithm::AckermannFactored => "ackermann-factored",
            Algorithm::Determinantal => "determinantal",
            Algorithm::Sliding => "sliding",
            Algorithm::Algebroid1 => "algebroid1",
            Algorithm::Algebroid1Solve => "algebroid1-solve",
            Algorithm::Algebroid2 => "algebroid2",
            Algorithm::Miminis => "miminis",
            Algorithm::Varga => "varga",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().to_ascii_lowercase();
        let alias = match s.as_str() {
            "alg1" => "algebroid1",
            "alg2" => "algebroid2",
            other => other,
        };
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == alias)
            .ok_or_else(|| format!("unknown algorithm '{s}'"))
    }
}

/// Runs `algo` in the arithmetic of `T`.
pub fn place<T: Real>(sys: &StateSpace<T>, spec: &PoleSpec, algo: Algorithm) -> Result<Gain<T>, PlacementError> {
    match algo {
        Algorithm::Ackermann => ackermann_direct(sys, spec),
        Algorithm::AckermannFactored => ackermann_factored(sys, spec),
        Algorithm::Determinantal => place_determinantal(sys, spec),
        Algorithm::Sliding => place_sliding(sys, spec),
        Algorithm::Algebroid1 => place_algebroid1(sys, spec, Algebroid1Variant::QrBased),
        Algorithm::Algebroid1Solve => place_algebroid1(sys, spec, Algebroid1Variant::SolveBased),
        Algorithm::Algebroid2 => {
            let chain = build_anchor_chain(sys)?;
            gain_from_chain(&chain, sys, spec)
        }
        Algorithm::Miminis => place_miminis(sys, spec),
        Algorithm::Varga => place_varga(sys, spec),
    }
}

/// Runs `algo` at the requested precision on an `f64` system; the gain is
/// widened back to `f64`.
pub fn place_with_precision(
    sys: &StateSpace<f64>,
    spec: &PoleSpec,
    algo: Algorithm,
    precision: PrecisionMode,
) -> Result<Gain<f64>, PlacementError> {
    match precision {
        PrecisionMode::Bits64 => place(sys, spec, algo),
        PrecisionMode::Bits32 => place(&sys.cast::<f32>(), spec, algo).map(|g| g.to_f64()),
    }
}

/// Relative tolerance used by the degeneracy checks.
pub(crate) fn degeneracy_tol<T: Real>() -> T {
    T::cast(1e3) * T::epsilon()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn fil_rouge<T: Real>() -> StateSpace<T> {
        StateSpace::new(
            DenseMatrix::from_f64_rows(&[[1.0, 3.0, 5.0], [7.0, 13.0, 17.0], [1.0, 1.0, 1.0]]),
            DenseVector::from_f64(&[1.0, 1.0, 1.0]),
        )
        .unwrap()
    }

    pub fn uncontrollable<T: Real>() -> StateSpace<T> {
        StateSpace::new(
            DenseMatrix::from_f64_rows(&[[6.0, 4.0, -9.0], [5.0, 2.0, -6.0], [0.0, 0.0, 1.0]]),
            DenseVector::from_f64(&[1.0, 1.0, 1.0]),
        )
        .unwrap()
    }

    pub fn poles123() -> PoleSpec {
        PoleSpec::real(&[-1.0, -2.0, -3.0])
    }

    pub fn assert_gain(k: &Gain<f64>, expected: &[f64], tol: f64) {
        for (a, b) in k.as_slice().iter().zip(expected) {
            assert!((a - b).abs() <= tol, "{:?} vs {:?}", k.as_slice(), expected);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn every_algorithm_on_fil_rouge() {
        let sys = fil_rouge::<f64>();
        for algo in Algorithm::ALL {
            let k = place(&sys, &poles123(), algo).unwrap();
            assert_gain(&k, &[4.0, 7.5, 9.5], 1e-8);
        }
    }

    #[test]
    fn algorithm_names_round_trip() {
        for algo in Algorithm::ALL {
            assert_eq!(algo.name().parse::<Algorithm>().unwrap(), algo);
        }
        assert_eq!("alg2".parse::<Algorithm>().unwrap(), Algorithm::Algebroid2);
        assert!("place".parse::<Algorithm>().is_err());
    }

    #[test]
    fn pole_spec_validation() {
        assert!(PoleSpec::roots(vec![ComplexScalar::new(-1.0, 2.0), ComplexScalar::real(-3.0)]).is_err());
        assert!(PoleSpec::char_poly(vec![2.0, 1.0]).is_err());
        let s = PoleSpec::real(&[-1.0, -2.0]);
        assert_eq!(s.reversed(), PoleSpec::real(&[-2.0, -1.0]));
        assert!(StateSpace::new(DenseMatrix::<f64>::identity(2), DenseVector::from_f64(&[1.0])).is_err());
    }

    #[test]
    fn single_precision_is_close() {
        let sys = fil_rouge::<f64>();
        for algo in Algorithm::ALL {
            let k = place_with_precision(&sys, &poles123(), algo, PrecisionMode::Bits32).unwrap();
            assert_gain(&k, &[4.0, 7.5, 9.5], 1e-3);
        }
    }
}
