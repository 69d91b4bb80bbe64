use super::{degeneracy_tol, Gain, PlacementError, PoleSpec, StateSpace};
use crate::linalg::{qr_decompose, solve_linear, DenseMatrix, DenseVector, LinalgError, Real};

/// How each level finds the eigenvector direction of the pole it assigns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algebroid1Variant {
    /// Null vector of `Q^T (A - lambda I)` from a QR factorisation.
    QrBased,
    /// `(A - lambda I)^-1 B`.
    SolveBased,
}

/// One descending step: the quotient map and the partial gain.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientLevel<T = f64> {
    /// `(m-1) x m` map onto the quotient, rows orthonormal.
    pub anb: DenseMatrix<T>,
    /// Partial gain assigning this level's pole (row, length `m`).
    pub ko: DenseVector<T>,
    /// Unit eigenvector of `A - B ko` for this level's pole; `anb` annihilates it.
    pub direction: DenseVector<T>,
    /// Quotient system after this level.
    pub a_bar: DenseMatrix<T>,
    pub b_bar: DenseVector<T>,
}

/// The full descent of the first algebroid method.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientStack<T = f64> {
    pub levels: Vec<QuotientLevel<T>>,
    /// Terminal scalar system.
    pub a_bar: T,
    pub b_bar: T,
}

/// Rows `2..m` of the transposed `Q` of the QR factorisation of `v`:
/// an orthonormal basis of the complement of `v`.
pub(crate) fn annihilator<T: Real>(v: &DenseVector<T>) -> DenseMatrix<T> {
    let q = qr_decompose(&DenseMatrix::column_matrix(v)).q;
    let m = v.len();
    DenseMatrix::from_fn(m - 1, m, |i, j| q[(j, i + 1)])
}

/// Builds the quotient stack for the given real poles.
pub fn quotient_stack<T: Real>(
    sys: &StateSpace<T>,
    spec: &PoleSpec,
    variant: Algebroid1Variant,
) -> Result<QuotientStack<T>, PlacementError> {
    let n = sys.n();
    spec.check_degree(n)?;
    let poles = spec.real_roots()?;
    let mut ab = sys.a().clone();
    let mut bb = sys.b().clone();
    let b0 = bb.norm();
    let mut levels = Vec::with_capacity(n.saturating_sub(1));
    for (i, &lambda) in poles.iter().enumerate().take(n - 1) {
        let m = n - i;
        if !(bb.norm() > degeneracy_tol::<T>() * b0) {
            return Err(PlacementError::UncontrollableSystem(format!(
                "quotient input vanishes at level {i}"
            )));
        }
        let shifted = ab.shift(T::cast(lambda));
        let (ko, direction, anb) = match variant {
            Algebroid1Variant::QrBased => {
                let qt = annihilator(&bb);
                let qs = qr_decompose(&(&qt * &shifted).transpose()).q;
                let koh = qs.column(m - 1);
                let s = shifted.vecmat(&bb).dot(&koh) / bb.dot(&bb);
                let anb = DenseMatrix::from_fn(m - 1, m, |r, c| qs[(c, r)]);
                (koh.scale(s), koh, anb)
            }
            Algebroid1Variant::SolveBased => {
                let nv = solve_linear(&shifted, &bb).map_err(|e| match e {
                    LinalgError::SingularSystem { .. } => PlacementError::SingularShift { lambda },
                    other => other.into(),
                })?;
                let nn = nv.dot(&nv);
                let ko = nv.scale(T::one() / nn);
                let dir = nv.scale(T::one() / nn.sqrt());
                (ko, dir, annihilator(&nv))
            }
        };
        ab = &(&anb * &ab) * &anb.transpose();
        bb = anb.matvec(&bb);
        levels.push(QuotientLevel {
            anb,
            ko,
            direction,
            a_bar: ab.clone(),
            b_bar: bb.clone(),
        });
    }
    let (a_bar, b_bar) = (ab[(0, 0)], bb[0]);
    if !(b_bar.abs() > degeneracy_tol::<T>() * b0) {
        return Err(PlacementError::UncontrollableSystem("terminal quotient input vanishes".into()));
    }
    Ok(QuotientStack { levels, a_bar, b_bar })
}

impl<T: Real> QuotientStack<T> {
    /// Pulls the gain back up the stack: `K_i = ko_i + K_(i+1) anb_i`.
    pub fn gain(&self, last_pole: f64) -> Gain<T> {
        let mut k = DenseVector::from_vec(vec![(self.a_bar - T::cast(last_pole)) / self.b_bar]);
        for level in self.levels.iter().rev() {
            k = &level.ko + &level.anb.vecmat(&k);
        }
        Gain::new(k)
    }
}

/// First algebroid method: assign one pole, pass to the quotient by the
/// eigenvector, repeat, then pull the partial gains back.
pub fn place_algebroid1<T: Real>(
    sys: &StateSpace<T>,
    spec: &PoleSpec,
    variant: Algebroid1Variant,
) -> Result<Gain<T>, PlacementError> {
    let stack = quotient_stack(sys, spec, variant)?;
    let poles = spec.real_roots()?;
    Ok(stack.gain(*poles.last().expect("non-empty spec")))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::linalg::eigenvalues;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn fil_rouge_trace() {
        let sys = fil_rouge::<f64>();
        let st = quotient_stack(&sys, &poles123(), Algebroid1Variant::QrBased).unwrap();
        let l0 = &st.levels[0];
        for (a, b) in l0.ko.iter().zip([0.3956, -0.1319, -0.0440]) {
            assert!(close(*a, b, 1e-4), "{:?}", l0.ko);
        }
        let want = [[17.2209, -1.2808], [15.4917, -1.4406]];
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(l0.a_bar[(i, j)], want[i][j], 1e-4), "{:?}", l0.a_bar);
            }
        }
        for (a, b) in l0.b_bar.iter().zip([-1.6429, -0.1614]) {
            assert!(close(a.abs(), f64::abs(b), 1e-4));
        }
        let ev = eigenvalues(&sys.closed_loop(&Gain::new(l0.ko.clone()))).unwrap();
        for (e, w) in ev.iter().zip([-1.0, -0.3087, 16.0889]) {
            assert!(close(e.re, w, 1e-4), "{ev:?}");
        }
        assert_gain(&st.gain(-3.0), &[4.0, 7.5, 9.5], 1e-9);
    }

    #[test]
    fn solve_variant() {
        let sys = fil_rouge::<f64>();
        let k = place_algebroid1(&sys, &poles123(), Algebroid1Variant::SolveBased).unwrap();
        assert_gain(&k, &[4.0, 7.5, 9.5], 1e-9);
    }

    #[test]
    fn annihilation_and_orthonormality() {
        let sys = fil_rouge::<f64>();
        for variant in [Algebroid1Variant::QrBased, Algebroid1Variant::SolveBased] {
            let st = quotient_stack(&sys, &poles123(), variant).unwrap();
            for l in &st.levels {
                let g = &l.anb * &l.anb.transpose();
                assert!((&g - &DenseMatrix::identity(l.anb.rows())).max_abs() < 1e-13);
                assert!(l.anb.matvec(&l.direction).max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn scalar_and_complex() {
        let sys = StateSpace::new(DenseMatrix::<f64>::from_f64_rows(&[[3.0]]), DenseVector::from_f64(&[2.0])).unwrap();
        let k = place_algebroid1(&sys, &PoleSpec::real(&[-1.0]), Algebroid1Variant::QrBased).unwrap();
        assert_eq!(k.as_slice(), &[2.0]);
        let spec = PoleSpec::roots(vec![
            crate::linalg::ComplexScalar::new(-1.0, 1.0),
            crate::linalg::ComplexScalar::new(-1.0, -1.0),
            crate::linalg::ComplexScalar::real(-2.0),
        ])
        .unwrap();
        assert!(matches!(
            place_algebroid1(&fil_rouge::<f64>(), &spec, Algebroid1Variant::QrBased),
            Err(PlacementError::UnsupportedPoles(_))
        ));
    }

    #[test]
    fn uncontrollable_quotient() {
        let r = place_algebroid1(&uncontrollable::<f64>(), &poles123(), Algebroid1Variant::QrBased);
        assert!(matches!(r, Err(PlacementError::UncontrollableSystem(_))), "{r:?}");
    }
}
