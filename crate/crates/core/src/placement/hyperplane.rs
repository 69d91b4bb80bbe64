use super::{degeneracy_tol, Gain, PlacementError, PoleSpec, StateSpace};
use crate::linalg::{solve_linear, DenseMatrix, DenseVector, LinalgError, Real};

/// The affine set `{x : normal . x = offset}` of gains assigning one pole.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane<T = f64> {
    pub normal: DenseVector<T>,
    pub offset: T,
}

impl<T: Real> Hyperplane<T> {
    /// `normal . x - offset`.
    pub fn residual(&self, x: &DenseVector<T>) -> T {
        self.normal.dot(x) - self.offset
    }
}

/// The gain `(a_j^T - lambda e_j^T) / b_j`, which zeroes row `j` of
/// `A - B K - lambda I` and therefore assigns `lambda`.
pub fn hyperplane_point<T: Real>(sys: &StateSpace<T>, lambda: f64, j: usize) -> Result<DenseVector<T>, PlacementError> {
    let n = sys.n();
    if j >= n {
        return Err(PlacementError::DimensionMismatch(format!("row {j} of an order-{n} system")));
    }
    let b = sys.b();
    let bj = b[j];
    if bj.abs() <= degeneracy_tol::<T>() * b.max_abs() || bj == T::zero() {
        return Err(PlacementError::ZeroInputComponent { index: j });
    }
    let mut k = sys.a().row_vector(j);
    k[j] -= T::cast(lambda);
    Ok(k.scale(T::one() / bj))
}

/// Hyperplane of gains assigning `lambda`: normal `n` with `(A - lambda I) n = B`,
/// offset 1.
pub fn hyperplane_normal<T: Real>(sys: &StateSpace<T>, lambda: f64) -> Result<Hyperplane<T>, PlacementError> {
    let shifted = sys.a().shift(T::cast(lambda));
    let normal = solve_linear(&shifted, sys.b()).map_err(|e| match e {
        LinalgError::SingularSystem { .. } => PlacementError::SingularShift { lambda },
        other => other.into(),
    })?;
    Ok(Hyperplane {
        normal,
        offset: T::one(),
    })
}

fn planes<T: Real>(sys: &StateSpace<T>, poles: &[f64]) -> Result<Vec<Hyperplane<T>>, PlacementError> {
    poles.iter().map(|&l| hyperplane_normal(sys, l)).collect()
}

/// Intersects the `n` pole hyperplanes by solving `N K^T = 1`.
pub fn place_determinantal<T: Real>(sys: &StateSpace<T>, spec: &PoleSpec) -> Result<Gain<T>, PlacementError> {
    let n = sys.n();
    spec.check_degree(n)?;
    let poles = spec.real_roots()?;
    let hs = planes(sys, &poles)?;
    let normals = DenseMatrix::from_fn(n, n, |i, j| hs[i].normal[j]);
    let offsets = DenseVector::from_vec(hs.iter().map(|h| h.offset).collect());
    let k = solve_linear(&normals, &offsets).map_err(|e| match e {
        LinalgError::SingularSystem { .. } => PlacementError::ParallelHyperplanes,
        other => other.into(),
    })?;
    Ok(Gain::new(k))
}

/// Successive projections: start on the first hyperplane and slide along
/// directions that keep the already reached planes, one plane at a time.
/// Returns the final gain; [`sliding_steps`] exposes the intermediate points.
pub fn place_sliding<T: Real>(sys: &StateSpace<T>, spec: &PoleSpec) -> Result<Gain<T>, PlacementError> {
    let steps = sliding_steps(sys, spec)?;
    Ok(Gain::new(steps.into_iter().last().expect("at least one step")))
}

/// The points `gamma_1, ..., gamma_n`; `gamma_k` lies on the first `k` hyperplanes.
pub fn sliding_steps<T: Real>(sys: &StateSpace<T>, spec: &PoleSpec) -> Result<Vec<DenseVector<T>>, PlacementError> {
    let n = sys.n();
    spec.check_degree(n)?;
    let poles = spec.real_roots()?;
    let b = sys.b();
    let mut seed_row = 0;
    for j in 1..n {
        if b[j].abs() > b[seed_row].abs() {
            seed_row = j;
        }
    }
    let hs = planes(sys, &poles)?;
    let normals: Vec<DenseVector<T>> = hs.iter().map(|h| h.normal.clone()).collect();
    let mut dirs = normals.clone();
    let mut gamma = hyperplane_point(sys, poles[0], seed_row)?;
    let mut out = vec![gamma.clone()];
    for s in 1..n {
        let prev = &normals[s - 1];
        let pd = dirs[s - 1].clone();
        let den_prev = prev.dot(&pd);
        for dir in dirs.iter_mut().skip(s) {
            let f = prev.dot(dir) / den_prev;
            *dir = dir.axpy(-f, &pd);
        }
        let ns = &normals[s];
        let den = ns.dot(&dirs[s]);
        if !(den.abs() > degeneracy_tol::<T>() * ns.dot(ns)) {
            return Err(PlacementError::DegenerateProjection { step: s });
        }
        let target = hyperplane_point(sys, poles[s], seed_row)?;
        let f = (&gamma - &target).dot(ns) / den;
        gamma = gamma.axpy(-f, &dirs[s]);
        out.push(gamma.clone());
    }
    Ok(out)
}
