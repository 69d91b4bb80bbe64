//! Exact big-integer pole placement by ring operations and GCD reduction.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("gcd of two zeros is undefined")]
    DegenerateGcd,
    #[error("subtractive gcd needs positive inputs")]
    NonPositive,
    #[error("cannot annihilate the zero vector")]
    ZeroVector,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("uncontrollable system: final input Ab*B is exactly zero")]
    UncontrollableSystem,
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Euclid's algorithm with remainders; result is non-negative.
pub fn gcd_mod(a: &BigInt, b: &BigInt) -> Result<BigInt, ExactError> {
    if a.is_zero() && b.is_zero() {
        return Err(ExactError::DegenerateGcd);
    }
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = a.mod_floor(&b);
        a = b;
        b = r;
    }
    Ok(a)
}

/// Subtraction-only gcd; both inputs must be positive.
pub fn gcd_sub(a: &BigInt, b: &BigInt) -> Result<BigInt, ExactError> {
    if !a.is_positive() || !b.is_positive() {
        return Err(ExactError::NonPositive);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    while a != b {
        if a > b {
            // repeated subtraction of b, batched
            let k = (&a - &b - 1u8) / &b + 1u8;
            a -= &b * k;
        } else {
            let k = (&b - &a - 1u8) / &a + 1u8;
            b -= &a * k;
        }
    }
    Ok(b)
}

/// Row-major dense matrix over a commutative ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix<E = BigInt> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

pub type ExactVector<E = BigInt> = Vec<E>;

impl<E> ExactMatrix<E>
where
    E: Clone + Zero + One + Add<Output = E> + Sub<Output = E> + Mul<Output = E> + Neg<Output = E>,
{
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { E::one() } else { E::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(E::zero(), |acc, k| acc + self[(i, k)].clone() * other[(k, j)].clone())
        }))
    }

    pub fn matvec(&self, v: &[E]) -> Result<ExactVector<E>, ExactError> {
        if self.cols != v.len() {
            return Err(ExactError::DimensionMismatch("matrix-vector".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(E::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn scale(&self, s: &E) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn map<F>(&self, f: impl FnMut(&E) -> F) -> ExactMatrix<F> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(E, E) -> E) -> Result<Self, ExactError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(ExactError::DimensionMismatch("elementwise".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a.clone(), b.clone())).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self, ExactError> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }
}

impl<E> Index<(usize, usize)> for ExactMatrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for ExactMatrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

impl ExactMatrix<BigInt> {
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, ExactError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn to_rational(&self) -> ExactMatrix<BigRational> {
        self.map(|x| BigRational::from_integer(x.clone()))
    }
}

impl<E: fmt::Display> fmt::Display for ExactMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Integer annihilator of a single row: for each `j < n`, a row pairing
/// entry `j` with the next nonzero entry `k`, reduced by their gcd.
/// A zero entry `j` yields the unit row `e_j`.
pub fn nullspace_row(v: &[BigInt]) -> Result<ExactMatrix<BigInt>, ExactError> {
    let n = v.len();
    if v.iter().all(Zero::is_zero) {
        return Err(ExactError::ZeroVector);
    }
    let mut rows = Vec::with_capacity(n - 1);
    for j in 0..n - 1 {
        let mut lit = vec![BigInt::zero(); n];
        if v[j].is_zero() {
            lit[j] = BigInt::one();
        } else {
            let mut k = j + 1;
            while v[k].is_zero() && k < n - 1 {
                k += 1;
            }
            if v[k].is_zero() {
                lit[k] = BigInt::one();
            } else {
                let g = gcd_mod(&v[k], &v[j])?;
                lit[k] = -(&v[j] / &g);
                lit[j] = &v[k] / &g;
            }
        }
        rows.push(lit);
    }
    ExactMatrix::from_rows(rows)
}

/// Unreduced exact gain: `K = numerator / denominator`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactGain {
    pub denominator: BigInt,
    pub numerator: ExactVector<BigInt>,
}

fn check_square(a: &ExactMatrix<BigInt>, b: &[BigInt]) -> Result<usize, ExactError> {
    let n = a.rows();
    if a.cols() != n || b.len() != n || n == 0 {
        return Err(ExactError::DimensionMismatch(format!(
            "A is {}x{}, B has {} entries",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    Ok(n)
}

/// Ring-operations placement. `charpoly` is ascending: constant term first,
/// leading `1` last, length `n + 1`.
pub fn place_exact(a: &ExactMatrix<BigInt>, b: &[BigInt], charpoly: &[BigInt]) -> Result<ExactGain, ExactError> {
    let n = check_square(a, b)?;
    if charpoly.len() != n + 1 {
        return Err(ExactError::DimensionMismatch(format!(
            "characteristic polynomial of length {} for n = {n}",
            charpoly.len()
        )));
    }
    let bm = ExactMatrix::from_fn(n, 1, |i, _| b[i].clone());
    let mut ab = ExactMatrix::identity(n);
    let mut bb: Vec<BigInt> = b.to_vec();
    let mut kk = ExactMatrix::identity(n).scale(&charpoly[0]);
    for p in &charpoly[1..n] {
        let anb = nullspace_row(&bb).map_err(|_| ExactError::UncontrollableSystem)?;
        ab = anb.matmul(&ab)?.matmul(a)?;
        bb = ab.matmul(&bm)?.to_rows().into_iter().flatten().collect();
        kk = ab.scale(p).add(&anb.matmul(&kk)?)?;
    }
    kk = kk.add(&ab.matmul(a)?)?;
    let denominator = ab.matmul(&bm)?[(0, 0)].clone();
    if denominator.is_zero() {
        return Err(ExactError::UncontrollableSystem);
    }
    Ok(ExactGain {
        denominator,
        numerator: kk.row(0).to_vec(),
    })
}

/// Monic characteristic polynomial of integer roots, ascending.
pub fn charpoly_ascending(roots: &[i64]) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for &r in roots {
        // multiply by (x - r), coefficients ascending
        let mut next = vec![BigInt::zero(); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] += ci;
            next[i] -= ci * BigInt::from(r);
        }
        c = next;
    }
    c
}

/// [`place_exact`] from integer roots.
pub fn place_exact_roots(a: &ExactMatrix<BigInt>, b: &[BigInt], roots: &[i64]) -> Result<ExactGain, ExactError> {
    place_exact(a, b, &charpoly_ascending(roots))
}

impl ExactGain {
    /// Divides numerator and denominator by their collective gcd.
    pub fn simplify(&self) -> ExactGain {
        let g = self
            .numerator
            .iter()
            .fold(self.denominator.abs(), |g, x| g.gcd(x));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        ExactGain {
            denominator: &self.denominator / &g,
            numerator: self.numerator.iter().map(|x| x / &g).collect(),
        }
    }

    /// Reduced rationals `numerator_i / denominator`.
    pub fn ratio(&self) -> Result<Vec<BigRational>, ExactError> {
        if self.denominator.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(self
            .numerator
            .iter()
            .map(|x| BigRational::new(x.clone(), self.denominator.clone()))
            .collect())
    }

    pub fn to_f64(&self) -> Result<Vec<f64>, ExactError> {
        Ok(self.ratio()?.iter().map(rational_to_f64).collect())
    }
}

/// Nearest-ish `f64`, robust to numerators and denominators beyond `f64` range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && n.abs() < 9.0e15 && d < 9.0e15 {
            return n / d;
        }
    }
    let shift = r.numer().bits() as i64 - r.denom().bits() as i64 - 60;
    let scaled = if shift > 0 {
        r.numer() / (r.denom() << shift as usize)
    } else {
        (r.numer() << (-shift) as usize) / r.denom()
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Fixed-point decimal rendering with `digits` fractional digits (truncated).
pub fn rational_to_decimal(r: &BigRational, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let int = a.numer() / a.denom();
    let mut rem = a.numer() - &int * a.denom();
    let mut s = format!("{}{}", if neg { "-" } else { "" }, int);
    if digits > 0 {
        s.push('.');
        for _ in 0..digits {
            rem *= 10u8;
            let d = &rem / a.denom();
            rem -= &d * a.denom();
            s.push_str(&d.to_string());
        }
    }
    s
}
