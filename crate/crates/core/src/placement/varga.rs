use super::{degeneracy_tol, Gain, PlacementError, PoleSpec, StateSpace};
use crate::linalg::{schur_decompose, DenseMatrix, DenseVector, Real};

/// Swaps diagonal entries `ii-1` and `ii` of an upper triangular `h` by a
/// permutation followed by a Givens rotation restoring triangularity.
/// Applies the same orthogonal map to the rows of `acc`.
fn exchange<T: Real>(h: &mut DenseMatrix<T>, acc: &mut DenseMatrix<T>, ii: usize) {
    let n = h.rows();
    let (p, q) = (ii - 1, ii);
    h.swap_rows(p, q);
    for r in 0..n {
        let t = h[(r, p)];
        h[(r, p)] = h[(r, q)];
        h[(r, q)] = t;
    }
    acc.swap_rows(p, q);
    let c0 = h[(p, p)] - h[(q, q)];
    let s0 = h[(q, p)];
    let den = c0.hypot(s0);
    if den == T::zero() {
        return;
    }
    let (c, s) = (c0 / den, s0 / den);
    for m in [&mut *h, &mut *acc] {
        for j in 0..m.cols() {
            let x = m[(p, j)];
            let y = m[(q, j)];
            m[(p, j)] = c * x + s * y;
            m[(q, j)] = -s * x + c * y;
        }
    }
    for r in 0..n {
        let x = h[(r, p)];
        let y = h[(r, q)];
        h[(r, p)] = c * x + s * y;
        h[(r, q)] = -s * x + c * y;
    }
}

/// Schur pole shifting: place each pole on the trailing diagonal entry of the
/// real Schur form, then rotate it to the front with diagonal exchanges.
pub fn place_varga<T: Real>(sys: &StateSpace<T>, spec: &PoleSpec) -> Result<Gain<T>, PlacementError> {
    let n = sys.n();
    spec.check_degree(n)?;
    let poles = spec.real_roots()?;
    let schur = schur_decompose(sys.a())?;
    for i in 0..n.saturating_sub(1) {
        if schur.t[(i + 1, i)] != T::zero() {
            return Err(PlacementError::ComplexBlockUnsupported);
        }
    }
    let u = schur.z;
    let mut a_s = schur.t;
    let bsd = u.transpose().matvec(sys.b());
    let mut bs = bsd.clone();
    let mut hh = DenseVector::<T>::zeros(n);
    let mut qs = DenseMatrix::identity(n);
    let tol = degeneracy_tol::<T>() * sys.b().norm();
    for ii in (1..=n).rev() {
        let bl = bs[n - 1];
        if !(bl.abs() > tol) {
            return Err(PlacementError::UncontrollableSystem(format!(
                "input has no component on the trailing Schur vector at stage {}",
                n - ii + 1
            )));
        }
        let k1 = (T::cast(poles[ii - 1]) - a_s[(n - 1, n - 1)]) / bl;
        hh = hh.axpy(k1, &qs.row_vector(n - 1));
        for r in 0..n {
            a_s[(r, n - 1)] += bs[r] * k1;
        }
        for jj in 1..n {
            exchange(&mut a_s, &mut qs, jj);
        }
        bs = qs.matvec(&bsd);
    }
    Ok(Gain::new(u.matvec(&hh).scale(-T::one())))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::linalg::eigenvalues;

    #[test]
    fn fil_rouge() {
        let k = place_varga(&super::super::fixtures::fil_rouge::<f64>(), &poles123()).unwrap();
        assert_gain(&k, &[4.0, 7.5, 9.5], 1e-8);
    }

    #[test]
    fn symmetric_system() {
        let a = DenseMatrix::<f64>::from_f64_rows(&[
            [2.0, 1.0, 0.0, 0.5, 0.0],
            [1.0, -1.0, 0.3, 0.0, 0.2],
            [0.0, 0.3, 0.5, 1.0, 0.0],
            [0.5, 0.0, 1.0, 3.0, -0.4],
            [0.0, 0.2, 0.0, -0.4, -2.0],
        ]);
        let sys = StateSpace::new(a, DenseVector::from_f64(&[1.0, 0.5, -0.3, 0.8, 1.2])).unwrap();
        let k = place_varga(&sys, &PoleSpec::real(&[-1.0, -2.0, -3.0, -4.0, -5.0])).unwrap();
        let ev = eigenvalues(&sys.closed_loop(&k)).unwrap();
        for (e, w) in ev.iter().zip([-5.0, -4.0, -3.0, -2.0, -1.0]) {
            assert!((e.re - w).abs() < 1e-8 && e.im.abs() < 1e-8, "{ev:?}");
        }
    }

    #[test]
    fn own_spectrum_gives_zero_gain() {
        let sys = StateSpace::new(
            DenseMatrix::<f64>::from_f64_rows(&[[1.0, 2.0], [0.0, -3.0]]),
            DenseVector::from_f64(&[1.0, 1.0]),
        )
        .unwrap();
        let k = place_varga(&sys, &PoleSpec::real(&[1.0, -3.0])).unwrap();
        assert!(k.k.max_abs() < 1e-12, "{k:?}");
    }

    #[test]
    fn complex_block_rejected() {
        let sys = StateSpace::new(
            DenseMatrix::<f64>::from_f64_rows(&[[0.0, 1.0], [-1.0, 0.0]]),
            DenseVector::from_f64(&[0.0, 1.0]),
        )
        .unwrap();
        assert_eq!(
            place_varga(&sys, &PoleSpec::real(&[-1.0, -2.0])),
            Err(PlacementError::ComplexBlockUnsupported)
        );
    }
}
