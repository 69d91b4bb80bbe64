use super::{Gain, PlacementError, PoleSpec, StateSpace};
use crate::linalg::{solve_linear, ComplexScalar, DenseMatrix, DenseVector, LinalgError, Real, RootGroup};

/// Columns `B, AB, ..., A^(n-1) B`.
pub fn controllability_matrix<T: Real>(sys: &StateSpace<T>) -> DenseMatrix<T> {
    let n = sys.n();
    let mut cols = Vec::with_capacity(n);
    let mut v = sys.b().clone();
    for _ in 0..n {
        let next = sys.a().matvec(&v);
        cols.push(v);
        v = next;
    }
    DenseMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Last row of the inverse controllability matrix, `e_n^T C^-1`.
fn last_row_inverse<T: Real>(sys: &StateSpace<T>) -> Result<DenseVector<T>, PlacementError> {
    let n = sys.n();
    let c = controllability_matrix(sys);
    solve_linear(&c.transpose(), &DenseVector::unit(n, n - 1)).map_err(|e| match e {
        LinalgError::SingularSystem { .. } => {
            PlacementError::UncontrollableSystem("controllability matrix is singular".into())
        }
        other => other.into(),
    })
}

/// `Phi(A)` for the given roots by the nested product `(A - l_n I) ... (A - l_1 I)`,
/// with each conjugate pair merged into the real quadratic `A^2 - 2 Re(l) A + |l|^2 I`.
pub fn horner_char_matrix<T: Real>(a: &DenseMatrix<T>, roots: &[ComplexScalar]) -> Result<DenseMatrix<T>, PlacementError> {
    if !a.is_square() {
        return Err(PlacementError::DimensionMismatch("A must be square".into()));
    }
    let groups = crate::linalg::group_conjugates(roots)?;
    let mut phi = DenseMatrix::identity(a.rows());
    for g in groups {
        phi = match g {
            RootGroup::Real(l) => &a.shift(T::cast(l)) * &phi,
            RootGroup::Pair { re, im } => {
                let q = quadratic(a, re, im);
                &q * &phi
            }
        };
    }
    Ok(phi)
}

fn quadratic<T: Real>(a: &DenseMatrix<T>, re: f64, im: f64) -> DenseMatrix<T> {
    let a2 = a * a;
    let lin = a.scale(T::cast(2.0 * re));
    let mut q = &a2 - &lin;
    let c = T::cast(re * re + im * im);
    for i in 0..a.rows() {
        q[(i, i)] += c;
    }
    q
}

/// `K = e_n^T C^-1 Phi(A)`.
pub fn ackermann_direct<T: Real>(sys: &StateSpace<T>, spec: &PoleSpec) -> Result<Gain<T>, PlacementError> {
    spec.check_degree(sys.n())?;
    let c = last_row_inverse(sys)?;
    let phi = match spec {
        PoleSpec::Roots(r) => horner_char_matrix(sys.a(), r)?,
        PoleSpec::CharPoly(_) => {
            let p = spec.coefficients::<T>()?;
            let mut m = DenseMatrix::identity(sys.n());
            for &pi in p.iter().skip(1) {
                m = &m * sys.a();
                for i in 0..sys.n() {
                    m[(i, i)] += pi;
                }
            }
            m
        }
    };
    Ok(Gain::new(phi.vecmat(&c)))
}

/// Factored Ackermann: `K_0 = e_n^T C^-1`, then `K_k = K_(k-1) A - l_k K_(k-1)`
/// for each pole in the given order, conjugate pairs merged in one real step.
pub fn ackermann_factored<T: Real>(sys: &StateSpace<T>, spec: &PoleSpec) -> Result<Gain<T>, PlacementError> {
    spec.check_degree(sys.n())?;
    let a = sys.a();
    let c = last_row_inverse(sys)?;
    let k = match spec {
        PoleSpec::Roots(_) => {
            let mut k = c;
            for g in spec.groups()? {
                k = match g {
                    RootGroup::Real(l) => a.vecmat(&k).axpy(T::cast(-l), &k),
                    RootGroup::Pair { re, im } => {
                        let ka = a.vecmat(&k);
                        let kaa = a.vecmat(&ka);
                        kaa.axpy(T::cast(-2.0 * re), &ka).axpy(T::cast(re * re + im * im), &k)
                    }
                };
            }
            k
        }
        PoleSpec::CharPoly(_) => {
            let p = spec.coefficients::<T>()?;
            let mut k = c.clone();
            for &pi in p.iter().skip(1) {
                k = a.vecmat(&k).axpy(pi, &c);
            }
            k
        }
    };
    Ok(Gain::new(k))
}
