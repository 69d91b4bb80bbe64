//! Dense real kernels shared by every placement algorithm.
//!
//! Everything is generic over [`Real`], which is implemented for `f64` and
//! `f32`. Running an algorithm at `f32` is how the 32-bit precision mode is
//! realised: every arithmetic result is a correctly rounded binary32 value
//! before it is reused.

mod lu;
mod matrix;
mod poly;
mod qr;
mod schur;
mod svd;

use std::fmt;
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::Float;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lu::{determinant, solve_linear};
pub use matrix::{DenseMatrix, DenseVector};
pub use poly::{group_conjugates, poly_from_roots, RootGroup};
pub use qr::{householder_qr, qr_decompose, QrFactors};
pub use schur::{balance, eigenvalues, eigenvalues_balanced, hessenberg, schur_decompose, SchurFactors};
pub use svd::{svd_decompose, SvdFactors};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {detail}")]
    Shape { op: &'static str, detail: String },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-finite entry at position {0}")]
    NonFinite(usize),
    #[error("empty matrix or vector")]
    Empty,
    #[error("numerically singular system (pivot {pivot:e} below threshold {threshold:e})")]
    SingularSystem { pivot: f64, threshold: f64 },
    #[error("{algorithm} did not converge after {iterations} iterations")]
    NoConvergence {
        algorithm: &'static str,
        iterations: usize,
    },
    #[error("invalid pole set: {0}")]
    InvalidPoleSet(String),
}

/// Floating-point precision used for the arithmetic of an algorithm run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PrecisionMode {
    Bits32,
    Bits64,
}

impl PrecisionMode {
    pub fn epsilon(self) -> f64 {
        match self {
            PrecisionMode::Bits32 => f32::EPSILON as f64,
            PrecisionMode::Bits64 => f64::EPSILON,
        }
    }

    pub fn bits(self) -> u32 {
        match self {
            PrecisionMode::Bits32 => 32,
            PrecisionMode::Bits64 => 64,
        }
    }
}

impl fmt::Display for PrecisionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bits())
    }
}

/// Scalar type an algorithm can run in.
pub trait Real:
    Float
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + Default
    + Send
    + Sync
    + 'static
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
{
    const MODE: PrecisionMode;

    /// Round an `f64` to this type.
    fn cast(x: f64) -> Self;

    /// Exact widening to `f64`.
    fn widen(self) -> f64;
}

impl Real for f64 {
    const MODE: PrecisionMode = PrecisionMode::Bits64;

    #[inline]
    fn cast(x: f64) -> Self {
        x
    }

    #[inline]
    fn widen(self) -> f64 {
        self
    }
}

impl Real for f32 {
    const MODE: PrecisionMode = PrecisionMode::Bits32;

    #[inline]
    fn cast(x: f64) -> Self {
        x as f32
    }

    #[inline]
    fn widen(self) -> f64 {
        self as f64
    }
}

/// A complex number, used for eigenvalues and complex pole specifications.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexScalar {
    pub re: f64,
    pub im: f64,
}

impl ComplexScalar {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub const fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn dist(self, other: Self) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Total order on (re, im), used to sort spectra deterministically.
    pub fn cmp_re_im(&self, other: &Self) -> std::cmp::Ordering {
        self.re
            .total_cmp(&other.re)
            .then(self.im.total_cmp(&other.im))
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im > 0.0 {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}-{}i", self.re, -self.im)
        }
    }
}

/// Machine epsilon of `T` as `T`.
#[inline]
pub(crate) fn eps<T: Real>() -> T {
    T::epsilon()
}
