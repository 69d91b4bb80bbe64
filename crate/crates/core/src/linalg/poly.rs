use super::{ComplexScalar, DenseVector, LinalgError, Real};

/// A real root or a conjugate pair, the unit of real-arithmetic polynomial work.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootGroup {
    Real(f64),
    /// The pair `re ± i·|im|`.
    Pair { re: f64, im: f64 },
}

impl RootGroup {
    pub fn degree(&self) -> usize {
        match self {
            RootGroup::Real(_) => 1,
            RootGroup::Pair { .. } => 2,
        }
    }
}

fn is_real(z: ComplexScalar) -> bool {
    z.im.abs() <= 1e-12 * z.re.abs().max(1.0)
}

/// Groups roots into reals and conjugate pairs, keeping the order of first
/// appearance. Fails when the list is not closed under conjugation.
pub fn group_conjugates(roots: &[ComplexScalar]) -> Result<Vec<RootGroup>, LinalgError> {
    if let Some(z) = roots.iter().find(|z| !z.is_finite()) {
        return Err(LinalgError::InvalidPoleSet(format!("non-finite root {z}")));
    }
    let mut used = vec![false; roots.len()];
    let mut out = Vec::with_capacity(roots.len());
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let z = roots[i];
        if is_real(z) {
            out.push(RootGroup::Real(z.re));
            continue;
        }
        let tol = 1e-12 * z.abs().max(1.0);
        let partner = (i + 1..roots.len()).find(|&j| !used[j] && roots[j].dist(z.conj()) <= tol);
        match partner {
            Some(j) => {
                used[j] = true;
                out.push(RootGroup::Pair {
                    re: z.re,
                    im: z.im.abs(),
                });
            }
            None => {
                return Err(LinalgError::InvalidPoleSet(format!(
                    "{z} has no conjugate partner"
                )))
            }
        }
    }
    Ok(out)
}

/// Monic real coefficients `[1, p1, ..., pn]` of `prod (s - root)`.
///
/// Roots are sorted by (re, im) before multiplying, so the result does not
/// depend on the order they are given in.
pub fn poly_from_roots<T: Real>(roots: &[ComplexScalar]) -> Result<DenseVector<T>, LinalgError> {
    let mut sorted = roots.to_vec();
    sorted.sort_by(ComplexScalar::cmp_re_im);
    let groups = group_conjugates(&sorted)?;
    let mut coeffs = vec![T::one()];
    for g in groups {
        match g {
            RootGroup::Real(r) => coeffs = mul_poly(&coeffs, &[T::one(), -T::cast(r)]),
            RootGroup::Pair { re, im } => {
                let quad = [T::one(), T::cast(-2.0 * re), T::cast(re * re + im * im)];
                coeffs = mul_poly(&coeffs, &quad);
            }
        }
    }
    Ok(DenseVector::from_vec(coeffs))
}

fn mul_poly<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
