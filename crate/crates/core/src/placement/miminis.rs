use super::{degeneracy_tol, Gain, PlacementError, PoleSpec, StateSpace};
use crate::linalg::{hessenberg, qr_decompose, DenseMatrix, DenseVector, Real};

const FIXED_POINT_ITERATIONS: usize = 301;

/// Orthogonal `qc` with `qc^T B = beta e_1` and `qc^T A qc` upper Hessenberg.
fn controller_hessenberg<T: Real>(sys: &StateSpace<T>) -> Result<DenseMatrix<T>, PlacementError> {
    let q1 = qr_decompose(&DenseMatrix::column_matrix(sys.b())).q;
    let a1 = &(&q1.transpose() * sys.a()) * &q1;
    let (_, z) = hessenberg(&a1)?;
    Ok(&q1 * &z)
}

/// The same form reached by repeatedly factoring `[B, A]` and applying the
/// orthogonal factor as a similarity.
fn controller_hessenberg_iterated<T: Real>(sys: &StateSpace<T>) -> DenseMatrix<T> {
    let n = sys.n();
    let mut temp = DenseMatrix::from_fn(n, n + 1, |i, j| if j == 0 { sys.b()[i] } else { sys.a()[(i, j - 1)] });
    let mut qc = DenseMatrix::identity(n);
    for _ in 0..FIXED_POINT_ITERATIONS {
        let q = qr_decompose(&temp).q;
        qc = &qc * &q;
        let qt = q.transpose();
        let left = &qt * &temp;
        temp = DenseMatrix::from_fn(n, n + 1, |i, j| {
            if j == 0 {
                left[(i, 0)]
            } else {
                (0..n).map(|k| left[(i, k + 1)] * q[(k, j - 1)]).sum()
            }
        });
    }
    qc
}

fn reverse<T: Real>(m: &DenseMatrix<T>) -> DenseMatrix<T> {
    let (r, c) = (m.rows(), m.cols());
    DenseMatrix::from_fn(r, c, |i, j| m[(r - 1 - i, c - 1 - j)])
}

fn deflate<T: Real>(sys: &StateSpace<T>, spec: &PoleSpec, qc: DenseMatrix<T>) -> Result<Gain<T>, PlacementError> {
    let n = sys.n();
    spec.check_degree(n)?;
    let mut poles = spec.real_roots()?;
    poles.reverse();
    let h = &(&qc.transpose() * sys.a()) * &qc;
    let bq = qc.transpose().matvec(sys.b());
    let tol = degeneracy_tol::<T>();
    if !(bq[0].abs() > tol * sys.b().norm()) {
        return Err(PlacementError::UncontrollableSystem("input vector is zero".into()));
    }
    let a_scale = sys.a().frobenius();
    for i in 0..n - 1 {
        if !(h[(i + 1, i)].abs() > tol * a_scale) {
            return Err(PlacementError::UncontrollableSystem(format!(
                "staircase breaks down at step {}",
                i + 1
            )));
        }
    }
    let mut ai = reverse(&h);
    let mut bi = bq.reversed();
    let mut pph = Vec::with_capacity(n);
    let mut qs = Vec::with_capacity(n - 1);
    for (i, &lambda) in poles.iter().enumerate().take(n - 1) {
        let m = n - i;
        let f = qr_decompose(&ai.transpose().shift(T::cast(lambda)));
        pph.push(f.r[(m - 1, m - 1)] / bi[m - 1]);
        let qi = f.q;
        let rotated = &(&qi.transpose() * &ai) * &qi;
        ai = rotated.submatrix(0, m - 1, 0, m - 1);
        bi = qi.transpose().matvec(&bi).slice(0, m - 1);
        qs.push(qi);
    }
    let last = poles[n - 1];
    let mut k = DenseVector::from_vec(vec![(ai[(0, 0)] - T::cast(last)) / bi[0]]);
    for (qi, &p) in qs.iter().zip(&pph).rev() {
        let mut ext = k.into_vec();
        ext.push(p);
        k = qi.matvec(&DenseVector::from_vec(ext));
    }
    Ok(Gain::new(qc.matvec(&k.reversed())))
}

/// Hessenberg-RQ deflation: reduce to controller Hessenberg form, then for
/// each pole factor `A^T - lambda I`, read the gain entry off the last
/// diagonal of `R`, and deflate.
pub fn place_miminis<T: Real>(sys: &StateSpace<T>, spec: &PoleSpec) -> Result<Gain<T>, PlacementError> {
    let qc = controller_hessenberg(sys)?;
    deflate(sys, spec, qc)
}

/// As [`place_miminis`], with the reduction obtained by a fixed number of
/// repeated QR similarity sweeps instead of a direct Hessenberg reduction.
pub fn place_miminis_iterated<T: Real>(sys: &StateSpace<T>, spec: &PoleSpec) -> Result<Gain<T>, PlacementError> {
    let qc = controller_hessenberg_iterated(sys);
    deflate(sys, spec, qc)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn fil_rouge() {
        let sys = super::super::fixtures::fil_rouge::<f64>();
        assert_gain(&place_miminis(&sys, &poles123()).unwrap(), &[4.0, 7.5, 9.5], 1e-8);
        assert_gain(&place_miminis_iterated(&sys, &poles123()).unwrap(), &[4.0, 7.5, 9.5], 1e-8);
    }

    #[test]
    fn reduction_shape() {
        let sys = super::super::fixtures::fil_rouge::<f64>();
        let qc = controller_hessenberg(&sys).unwrap();
        let b = qc.transpose().matvec(sys.b());
        assert!(b[1].abs() < 1e-14 && b[2].abs() < 1e-14);
        let h = &(&qc.transpose() * sys.a()) * &qc;
        assert!(h[(2, 0)].abs() < 1e-13);
    }

    #[test]
    fn scalar_and_uncontrollable() {
        let sys = StateSpace::new(DenseMatrix::<f64>::from_f64_rows(&[[2.0]]), DenseVector::from_f64(&[-1.0])).unwrap();
        assert_eq!(place_miminis(&sys, &PoleSpec::real(&[-3.0])).unwrap().as_slice(), &[-5.0]);
        assert!(matches!(
            place_miminis(&uncontrollable::<f64>(), &poles123()),
            Err(PlacementError::UncontrollableSystem(_))
        ));
    }
}
