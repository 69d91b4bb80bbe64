//! Anchored commutators of matrices: orthogonal and oblique anchors, their
//! brackets, and executable checks of the algebroid identities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exact::{ExactError, ExactMatrix};
use crate::linalg::{eps, householder_qr, qr_decompose, DenseMatrix, DenseVector, Real};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebroidError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degenerate anchor: |omega^T g| = {value:e} is below {threshold:e}")]
    DegenerateAnchor { value: f64, threshold: f64 },
    #[error("anchor rows are not orthonormal (deviation {0:e})")]
    NotOrthonormal(f64),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Orthonormal split `P = [q^T; Q]` of `R^n`: a unit direction and the
/// `(n-1) x n` complement whose rows span its orthogonal complement.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalAnchor<T = f64> {
    pub q: DenseVector<T>,
    pub complement: DenseMatrix<T>,
}

impl<T: Real> OrthogonalAnchor<T> {
    /// First row of an orthogonal `p` as `q`, the remaining rows as the complement.
    pub fn from_orthogonal_rows(p: &DenseMatrix<T>) -> Result<Self, AlgebroidError> {
        let n = p.rows();
        if n < 2 || !p.is_square() {
            return Err(AlgebroidError::DimensionMismatch(format!(
                "need a square matrix of size >= 2, got {}x{}",
                p.rows(),
                p.cols()
            )));
        }
        let dev = (&(p * &p.transpose()) - &DenseMatrix::identity(n)).max_abs();
        if !(dev <= T::cast(1e3) * eps::<T>() * T::cast(n as f64)) {
            return Err(AlgebroidError::NotOrthonormal(dev.widen()));
        }
        Ok(Self {
            q: p.row_vector(0),
            complement: p.submatrix(1, n, 0, n),
        })
    }

    /// Anchor along `v` (normalised), with the complement from a QR
    /// factorisation of `v`.
    pub fn from_direction(v: &DenseVector<T>) -> Result<Self, AlgebroidError> {
        let n = v.len();
        if n < 2 || v.norm() == T::zero() {
            return Err(AlgebroidError::DimensionMismatch("direction must be nonzero with length >= 2".into()));
        }
        let q = qr_decompose(&DenseMatrix::column_matrix(v)).q;
        Self::from_orthogonal_rows(&q.transpose())
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    /// `q q^T`.
    pub fn projector(&self) -> DenseMatrix<T> {
        DenseMatrix::outer(&self.q, &self.q)
    }

    /// `Q A Q^T`, the restriction to the complement.
    pub fn reduce(&self, a: &DenseMatrix<T>) -> Result<DenseMatrix<T>, AlgebroidError> {
        self.check(a)?;
        Ok(&(&self.complement * a) * &self.complement.transpose())
    }

    fn check(&self, a: &DenseMatrix<T>) -> Result<(), AlgebroidError> {
        if a.rows() != self.n() || a.cols() != self.n() {
            return Err(AlgebroidError::DimensionMismatch(format!(
                "{}x{} matrix against an anchor of size {}",
                a.rows(),
                a.cols(),
                self.n()
            )));
        }
        Ok(())
    }
}

/// `[A1, A2] = A1 A2 - A2 A1`.
pub fn commutator<T: Real>(a1: &DenseMatrix<T>, a2: &DenseMatrix<T>) -> DenseMatrix<T> {
    &(a1 * a2) - &(a2 * a1)
}

/// `<A1,A2> = A1 A2 - A2 A1 + A2 q q^T A1 - A1 q q^T A2`.
pub fn orthogonal_bracket<T: Real>(
    a1: &DenseMatrix<T>,
    a2: &DenseMatrix<T>,
    anchor: &OrthogonalAnchor<T>,
) -> Result<DenseMatrix<T>, AlgebroidError> {
    anchor.check(a1)?;
    anchor.check(a2)?;
    let p = anchor.projector();
    let extra = &(&(a2 * &p) * a1) - &(&(a1 * &p) * a2);
    Ok(&commutator(a1, a2) + &extra)
}

/// `<<A1,A2>>_{alpha,beta} = [A1 (I - q q^T) + alpha q q^T, A2 (I - q q^T) + beta q q^T]`.
pub fn double_bracket_family<T: Real>(
    a1: &DenseMatrix<T>,
    a2: &DenseMatrix<T>,
    anchor: &OrthogonalAnchor<T>,
    alpha: T,
    beta: T,
) -> Result<DenseMatrix<T>, AlgebroidError> {
    anchor.check(a1)?;
    anchor.check(a2)?;
    let p = anchor.projector();
    let comp = &DenseMatrix::identity(anchor.n()) - &p;
    let m1 = &(a1 * &comp) + &p.scale(alpha);
    let m2 = &(a2 * &comp) + &p.scale(beta);
    Ok(commutator(&m1, &m2))
}

/// `<<A1,A2>> = [A1 (I - q q^T), A2 (I - q q^T)]`.
pub fn double_bracket<T: Real>(
    a1: &DenseMatrix<T>,
    a2: &DenseMatrix<T>,
    anchor: &OrthogonalAnchor<T>,
) -> Result<DenseMatrix<T>, AlgebroidError> {
    double_bracket_family(a1, a2, anchor, T::zero(), T::zero())
}

/// Rank-one oblique projector `G = g omega^T / (omega^T g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObliqueAnchor<T = f64> {
    pub omega: DenseVector<T>,
    pub g: DenseVector<T>,
    pub big_g: DenseMatrix<T>,
}

impl<T: Real> ObliqueAnchor<T> {
    /// Fails when `|omega^T g| <= eps |omega| |g|`.
    pub fn new(omega: DenseVector<T>, g: DenseVector<T>) -> Result<Self, AlgebroidError> {
        if omega.len() != g.len() || omega.is_empty() {
            return Err(AlgebroidError::DimensionMismatch("omega and g lengths differ".into()));
        }
        let wg = omega.dot(&g);
        let threshold = eps::<T>() * omega.norm() * g.norm();
        if !(wg.abs() > threshold) {
            return Err(AlgebroidError::DegenerateAnchor {
                value: wg.abs().widen(),
                threshold: threshold.widen(),
            });
        }
        let big_g = DenseMatrix::outer(&g, &omega).scale(T::one() / wg);
        Ok(Self { omega, g, big_g })
    }

    pub fn n(&self) -> usize {
        self.g.len()
    }

    fn check(&self, a: &DenseMatrix<T>) -> Result<(), AlgebroidError> {
        if a.rows() != self.n() || a.cols() != self.n() {
            return Err(AlgebroidError::DimensionMismatch(format!(
                "{}x{} matrix against an anchor of size {}",
                a.rows(),
                a.cols(),
                self.n()
            )));
        }
        Ok(())
    }
}

/// `an(A) = A - G A`.
pub fn oblique_anchor_apply<T: Real>(a: &DenseMatrix<T>, anchor: &ObliqueAnchor<T>) -> Result<DenseMatrix<T>, AlgebroidError> {
    anchor.check(a)?;
    Ok(a - &(&anchor.big_g * a))
}

/// `{{A1,A2}} = A1 A2 - A2 A1 + A2 G A1 - A1 G A2`.
pub fn oblique_bracket<T: Real>(
    a1: &DenseMatrix<T>,
    a2: &DenseMatrix<T>,
    anchor: &ObliqueAnchor<T>,
) -> Result<DenseMatrix<T>, AlgebroidError> {
    anchor.check(a1)?;
    anchor.check(a2)?;
    let g = &anchor.big_g;
    let extra = &(&(a2 * g) * a1) - &(&(a1 * g) * a2);
    Ok(&commutator(a1, a2) + &extra)
}

/// Exact rational `G`; fails when `omega^T g = 0`.
pub fn exact_oblique_projector(omega: &[BigInt], g: &[BigInt]) -> Result<ExactMatrix<BigRational>, AlgebroidError> {
    let n = g.len();
    if omega.len() != n || n == 0 {
        return Err(AlgebroidError::DimensionMismatch("omega and g lengths differ".into()));
    }
    let wg: BigInt = omega.iter().zip(g).map(|(a, b)| a * b).sum();
    if wg.is_zero() {
        return Err(AlgebroidError::DegenerateAnchor {
            value: 0.0,
            threshold: 0.0,
        });
    }
    Ok(ExactMatrix::from_fn(n, n, |i, j| {
        BigRational::new(&g[i] * &omega[j], wg.clone())
    }))
}

/// `an(A) = A - G A` in rational arithmetic.
pub fn exact_oblique_apply(
    a: &ExactMatrix<BigRational>,
    big_g: &ExactMatrix<BigRational>,
) -> Result<ExactMatrix<BigRational>, AlgebroidError> {
    Ok(a.sub(&big_g.matmul(a)?)?)
}

/// `{{A1,A2}}` in rational arithmetic.
pub fn exact_oblique_bracket(
    a1: &ExactMatrix<BigRational>,
    a2: &ExactMatrix<BigRational>,
    big_g: &ExactMatrix<BigRational>,
) -> Result<ExactMatrix<BigRational>, AlgebroidError> {
    let extra = a2.matmul(big_g)?.matmul(a1)?.sub(&a1.matmul(big_g)?.matmul(a2)?)?;
    Ok(a1.commutator(a2)?.add(&extra)?)
}

/// The two 3x3 matrices of the worked examples.
pub fn example_pair() -> (DenseMatrix<f64>, DenseMatrix<f64>) {
    (
        DenseMatrix::from_f64_rows(&[[1.0, 3.0, 5.0], [7.0, 13.0, 17.0], [1.0, 1.0, 1.0]]),
        DenseMatrix::from_f64_rows(&[[2.0, 4.0, 6.0], [13.0, 3.0, 1.0], [7.0, 5.0, 3.0]]),
    )
}

/// Matrix whose QR factor supplies the orthogonal anchor of the example.
pub fn example_anchor_source() -> DenseMatrix<f64> {
    DenseMatrix::from_f64_rows(&[[-21.0, -5.0, 5.0], [1.0, 38.0, 49.0], [-4.0, 12.0, 3.0]])
}

/// Which QR convention builds the example anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QrConvention {
    /// Plain Householder reflectors (LAPACK-style signs).
    Householder,
    /// Non-negative diagonal of `R`.
    NonNegativeDiagonal,
}

/// Both sides of `Q <A1,A2> Q^T = [Q A1 Q^T, Q A2 Q^T]` on the example data,
/// with the anchor taken from the rows of the QR factor.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalExample {
    pub bracket_side: DenseMatrix<f64>,
    pub commutator_side: DenseMatrix<f64>,
}

pub fn orthogonal_example(convention: QrConvention) -> Result<OrthogonalExample, AlgebroidError> {
    let src = example_anchor_source();
    let qq = match convention {
        QrConvention::Householder => householder_qr(&src).q,
        QrConvention::NonNegativeDiagonal => qr_decompose(&src).q,
    };
    let anchor = OrthogonalAnchor::from_orthogonal_rows(&qq)?;
    let (a1, a2) = example_pair();
    let bracket_side = anchor.reduce(&orthogonal_bracket(&a1, &a2, &anchor)?)?;
    let commutator_side = commutator(&anchor.reduce(&a1)?, &anchor.reduce(&a2)?);
    Ok(OrthogonalExample {
        bracket_side,
        commutator_side,
    })
}

/// Both sides of `an({{A1,A2}}) = [an(A1), an(A2)]` on the example data,
/// evaluated exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ObliqueExample {
    pub anchored_a1: ExactMatrix<BigRational>,
    pub anchored_a2: ExactMatrix<BigRational>,
    pub bracket_side: ExactMatrix<BigRational>,
    pub commutator_side: ExactMatrix<BigRational>,
}

pub fn example_oblique_vectors() -> (Vec<BigInt>, Vec<BigInt>) {
    (
        [1, 2, 3].into_iter().map(BigInt::from).collect(),
        [14, -2, -3].into_iter().map(BigInt::from).collect(),
    )
}

pub fn oblique_example() -> Result<ObliqueExample, AlgebroidError> {
    let (a1, a2) = example_pair();
    let to_exact = |m: &DenseMatrix<f64>| {
        ExactMatrix::from_fn(m.rows(), m.cols(), |i, j| BigRational::from_integer(BigInt::from(m[(i, j)] as i64)))
    };
    let (a1, a2) = (to_exact(&a1), to_exact(&a2));
    let (omega, g) = example_oblique_vectors();
    let big_g = exact_oblique_projector(&omega, &g)?;
    let anchored_a1 = exact_oblique_apply(&a1, &big_g)?;
    let anchored_a2 = exact_oblique_apply(&a2, &big_g)?;
    let bracket_side = exact_oblique_apply(&exact_oblique_bracket(&a1, &a2, &big_g)?, &big_g)?;
    let commutator_side = anchored_a1.commutator(&anchored_a2)?;
    Ok(ObliqueExample {
        anchored_a1,
        anchored_a2,
        bracket_side,
        commutator_side,
    })
}

/// One line of the commutator check table.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorCheck {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub detail: String,
}

const WORKED_ORTHOGONAL: [[f64; 2]; 2] = [[16.7141, 89.8467], [83.5973, -16.7141]];
const WORKED_OBLIQUE: [[i64; 3]; 3] = [
    [-111539, -238613, -323187],
    [18346, 39202, 53088],
    [24949, 53403, 72337],
];

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix<f64> {
    DenseMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0))
}

/// Runs the worked examples and a seeded random-property sweep.
pub fn check_commutators(seed: u64, trials: usize) -> Result<Vec<CommutatorCheck>, AlgebroidError> {
    let mut out = Vec::new();
    let ex = orthogonal_example(QrConvention::Householder)?;
    let identity = (&ex.bracket_side - &ex.commutator_side).max_abs();
    let want = DenseMatrix::from_f64_rows(&WORKED_ORTHOGONAL);
    let value = (&ex.bracket_side - &want).max_abs();
    out.push(CommutatorCheck {
        name: "orthogonal example identity".into(),
        passed: identity <= 1e-9,
        residual: identity,
        detail: format!("{:?}", ex.bracket_side.to_rows()),
    });
    out.push(CommutatorCheck {
        name: "orthogonal example values".into(),
        passed: value <= 5e-5,
        residual: value,
        detail: "Householder QR, anchor from rows".into(),
    });
    let ex2 = orthogonal_example(QrConvention::NonNegativeDiagonal)?;
    let identity2 = (&ex2.bracket_side - &ex2.commutator_side).max_abs();
    let flipped = (&ex2.bracket_side - &want).max_abs() > 5e-5;
    out.push(CommutatorCheck {
        name: "orthogonal example identity (non-negative R)".into(),
        passed: identity2 <= 1e-9,
        residual: identity2,
        detail: if flipped {
            "values differ from the Householder convention".into()
        } else {
            "values agree with the Householder convention".into()
        },
    });

    let ob = oblique_example()?;
    let want: ExactMatrix<BigRational> = ExactMatrix::from_fn(3, 3, |i, j| BigRational::from_integer(BigInt::from(WORKED_OBLIQUE[i][j])));
    out.push(CommutatorCheck {
        name: "oblique example identity (exact)".into(),
        passed: ob.bracket_side == ob.commutator_side,
        residual: if ob.bracket_side == ob.commutator_side { 0.0 } else { f64::INFINITY },
        detail: String::new(),
    });
    out.push(CommutatorCheck {
        name: "oblique example values (exact)".into(),
        passed: ob.bracket_side == want,
        residual: if ob.bracket_side == want { 0.0 } else { f64::INFINITY },
        detail: ob.bracket_side.to_string().trim_end().replace('\n', "; "),
    });
    let (a1, a2) = example_pair();
    let anchor = ObliqueAnchor::new(DenseVector::from_f64(&[1.0, 2.0, 3.0]), DenseVector::from_f64(&[14.0, -2.0, -3.0]))?;
    let lhs = oblique_anchor_apply(&oblique_bracket(&a1, &a2, &anchor)?, &anchor)?;
    let rhs = commutator(&oblique_anchor_apply(&a1, &anchor)?, &oblique_anchor_apply(&a2, &anchor)?);
    let r = (&lhs - &rhs).max_abs();
    out.push(CommutatorCheck {
        name: "oblique example identity (float)".into(),
        passed: r <= 1e-9 * lhs.max_abs().max(1.0),
        residual: r,
        detail: String::new(),
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut worst_o, mut worst_b, mut worst_q) = (0.0f64, 0.0f64, 0.0f64);
    let mut exact_ok = true;
    for t in 0..trials {
        let n = 2 + t % 7;
        let a1 = random_matrix(&mut rng, n);
        let a2 = random_matrix(&mut rng, n);
        let v = DenseVector::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).expect("finite");
        let anchor = OrthogonalAnchor::from_direction(&v)?;
        let scale = a1.max_abs().max(a2.max_abs()).powi(2).max(1e-300);
        let rhs = commutator(&anchor.reduce(&a1)?, &anchor.reduce(&a2)?);
        let lhs = anchor.reduce(&orthogonal_bracket(&a1, &a2, &anchor)?)?;
        worst_o = worst_o.max((&lhs - &rhs).max_abs() / scale);
        let lhs = anchor.reduce(&double_bracket(&a1, &a2, &anchor)?)?;
        worst_b = worst_b.max((&lhs - &rhs).max_abs() / scale);

        let omega = DenseVector::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).expect("finite");
        let g = DenseVector::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).expect("finite");
        if let Ok(ob) = ObliqueAnchor::new(omega, g) {
            let lhs = oblique_anchor_apply(&oblique_bracket(&a1, &a2, &ob)?, &ob)?;
            let rhs = commutator(&oblique_anchor_apply(&a1, &ob)?, &oblique_anchor_apply(&a2, &ob)?);
            let s = scale * ob.big_g.max_abs().max(1.0).powi(2);
            worst_q = worst_q.max((&lhs - &rhs).max_abs() / s);
        }

        let int = |rng: &mut ChaCha8Rng| BigInt::from(rng.gen_range(-9i64..=9));
        let ea1 = ExactMatrix::from_fn(3, 3, |_, _| BigRational::from_integer(int(&mut rng)));
        let ea2 = ExactMatrix::from_fn(3, 3, |_, _| BigRational::from_integer(int(&mut rng)));
        let omega: Vec<BigInt> = (0..3).map(|_| int(&mut rng)).collect();
        let g: Vec<BigInt> = (0..3).map(|_| int(&mut rng)).collect();
        if let Ok(big_g) = exact_oblique_projector(&omega, &g) {
            let lhs = exact_oblique_apply(&exact_oblique_bracket(&ea1, &ea2, &big_g)?, &big_g)?;
            let rhs = exact_oblique_apply(&ea1, &big_g)?.commutator(&exact_oblique_apply(&ea2, &big_g)?)?;
            exact_ok &= lhs == rhs;
        }
    }
    out.push(CommutatorCheck {
        name: format!("random orthogonal identity ({trials} trials)"),
        passed: worst_o <= 1e-9,
        residual: worst_o,
        detail: String::new(),
    });
    out.push(CommutatorCheck {
        name: format!("random double-bracket identity ({trials} trials)"),
        passed: worst_b <= 1e-9,
        residual: worst_b,
        detail: String::new(),
    });
    out.push(CommutatorCheck {
        name: format!("random oblique identity ({trials} trials)"),
        passed: worst_q <= 1e-9,
        residual: worst_q,
        detail: String::new(),
    });
    out.push(CommutatorCheck {
        name: format!("random oblique identity, exact ({trials} trials)"),
        passed: exact_ok,
        residual: if exact_ok { 0.0 } else { f64::INFINITY },
        detail: String::new(),
    });
    Ok(out)
}

/// `G^2 - G` and `(I - G)^2 - (I - G)` residuals.
pub fn projector_residuals<T: Real>(anchor: &ObliqueAnchor<T>) -> (T, T) {
    let g = &anchor.big_g;
    let c = &DenseMatrix::identity(anchor.n()) - g;
    ((&(g * g) - g).max_abs(), (&(&c * &c) - &c).max_abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_example_values() {
        let ex = orthogonal_example(QrConvention::Householder).unwrap();
        let want = DenseMatrix::from_f64_rows(&WORKED_ORTHOGONAL);
        assert!((&ex.bracket_side - &want).max_abs() < 5e-5, "{:?}", ex.bracket_side);
        assert!((&ex.commutator_side - &want).max_abs() < 5e-5);
        let ex = orthogonal_example(QrConvention::NonNegativeDiagonal).unwrap();
        assert!((&ex.bracket_side - &ex.commutator_side).max_abs() < 1e-9);
    }

    #[test]
    fn oblique_example_values() {
        let ex = oblique_example().unwrap();
        let an1 = [[-251, -445, -583], [43, 77, 101], [55, 97, 127]];
        let an2 = [[-684, -346, -232], [111, 53, 35], [154, 80, 54]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(ex.anchored_a1[(i, j)], BigRational::from_integer(an1[i][j].into()));
                assert_eq!(ex.anchored_a2[(i, j)], BigRational::from_integer(an2[i][j].into()));
                assert_eq!(ex.bracket_side[(i, j)], BigRational::from_integer(WORKED_OBLIQUE[i][j].into()));
            }
        }
        assert_eq!(ex.bracket_side, ex.commutator_side);
    }

    #[test]
    fn trivial_cases() {
        let (a1, _) = example_pair();
        let anchor = OrthogonalAnchor::from_direction(&DenseVector::from_f64(&[1.0, 2.0, 2.0])).unwrap();
        assert!(orthogonal_bracket(&a1, &a1, &anchor).unwrap().max_abs() < 1e-12);
        assert!(double_bracket(&a1, &a1, &anchor).unwrap().max_abs() < 1e-12);
        assert!(anchor.complement.matvec(&anchor.q).max_abs() < 1e-12);
        assert!((anchor.q.norm() - 1.0).abs() < 1e-12);

        let ob = ObliqueAnchor::new(DenseVector::from_f64(&[1.0, 2.0, 3.0]), DenseVector::from_f64(&[14.0, -2.0, -3.0])).unwrap();
        assert!(oblique_anchor_apply(&ob.big_g, &ob).unwrap().max_abs() < 1e-12);
        assert!(oblique_bracket(&a1, &a1, &ob).unwrap().max_abs() == 0.0);
        let an = oblique_anchor_apply(&a1, &ob).unwrap();
        assert!(an.vecmat(&ob.omega).max_abs() < 1e-9);
        let (p, c) = projector_residuals(&ob);
        assert!(p < 1e-10 && c < 1e-10);
        assert!((&ob.big_g.matvec(&ob.g) - &ob.g).max_abs() < 1e-12);
    }

    #[test]
    fn degenerate_anchor() {
        let r = ObliqueAnchor::<f64>::new(DenseVector::from_f64(&[1.0, 0.0]), DenseVector::from_f64(&[0.0, 1.0]));
        assert!(matches!(r, Err(AlgebroidError::DegenerateAnchor { .. })));
        let (omega, _) = example_oblique_vectors();
        let g: Vec<BigInt> = [3, 0, -1].into_iter().map(BigInt::from).collect();
        assert!(exact_oblique_projector(&omega, &g).is_err());
    }

    #[test]
    fn family_reduces_to_double_bracket() {
        let (a1, a2) = example_pair();
        let anchor = OrthogonalAnchor::from_direction(&DenseVector::from_f64(&[0.3, -1.0, 2.0])).unwrap();
        let d = double_bracket(&a1, &a2, &anchor).unwrap();
        let f = double_bracket_family(&a1, &a2, &anchor, 0.0, 0.0).unwrap();
        assert_eq!(d, f);
        let f = double_bracket_family(&a1, &a2, &anchor, 2.0, -1.5).unwrap();
        let lhs = anchor.reduce(&f).unwrap();
        let rhs = commutator(&anchor.reduce(&a1).unwrap(), &anchor.reduce(&a2).unwrap());
        assert!((&lhs - &rhs).max_abs() < 1e-9);
    }

    #[test]
    fn full_check_passes() {
        for c in check_commutators(341, 50).unwrap() {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn dimension_errors() {
        let (a1, _) = example_pair();
        let anchor = OrthogonalAnchor::from_direction(&DenseVector::from_f64(&[1.0, 1.0])).unwrap();
        assert!(matches!(orthogonal_bracket(&a1, &a1, &anchor), Err(AlgebroidError::DimensionMismatch(_))));
        assert!(OrthogonalAnchor::from_orthogonal_rows(&DenseMatrix::<f64>::from_f64_rows(&[[1.0, 1.0], [0.0, 1.0]])).is_err());
    }
}
