use super::matrix::dot;
use super::{eps, DenseMatrix, DenseVector, LinalgError, Real};

const MAX_SWEEPS: usize = 80;

/// `m = u * diag(s) * v^T`, `u` and `v` square orthogonal, `s` descending.
///
/// Sign convention: the largest-magnitude entry of each left singular vector
/// is positive (first one on ties), with the paired right vector flipped along.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdFactors<T> {
    pub u: DenseMatrix<T>,
    pub s: DenseVector<T>,
    pub v: DenseMatrix<T>,
}

impl<T: Real> SvdFactors<T> {
    /// `u * diag(s) * v^T` padded to the original shape.
    pub fn reconstruct(&self) -> DenseMatrix<T> {
        let (m, n) = (self.u.rows(), self.v.rows());
        DenseMatrix::from_fn(m, n, |i, j| {
            (0..self.s.len())
                .map(|k| self.u[(i, k)] * self.s[k] * self.v[(j, k)])
                .sum()
        })
    }
}

/// One-sided Jacobi SVD.
pub fn svd_decompose<T: Real>(m: &DenseMatrix<T>) -> Result<SvdFactors<T>, LinalgError> {
    if m.rows() < m.cols() {
        let t = svd_tall(&m.transpose())?;
        let mut out = SvdFactors {
            u: t.v,
            s: t.s,
            v: t.u,
        };
        fix_signs(&mut out);
        return Ok(out);
    }
    let mut out = svd_tall(m)?;
    fix_signs(&mut out);
    Ok(out)
}

fn svd_tall<T: Real>(m: &DenseMatrix<T>) -> Result<SvdFactors<T>, LinalgError> {
    let (rows, cols) = (m.rows(), m.cols());
    // columns stored contiguously
    let scale = m.max_abs();
    let scale = if scale > T::zero() { scale } else { T::one() };
    let mut g: Vec<Vec<T>> = (0..cols)
        .map(|j| m.column(j).into_vec().into_iter().map(|x| x / scale).collect())
        .collect();
    let mut v: Vec<Vec<T>> = (0..cols)
        .map(|j| DenseVector::<T>::unit(cols, j).into_vec())
        .collect();
    let tol = eps::<T>() * T::cast(rows as f64);
    let mut converged = cols < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = dot(&g[p], &g[p]);
                let beta = dot(&g[q], &g[q]);
                let gamma = dot(&g[p], &g[q]);
                if alpha == T::zero() || beta == T::zero() {
                    continue;
                }
                if gamma.abs() <= tol * alpha.sqrt() * beta.sqrt() {
                    continue;
                }
                rotated = true;
                let two = T::one() + T::one();
                let zeta = (beta - alpha) / (two * gamma);
                let t = T::one().copysign(zeta) / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate(&mut g, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence {
            algorithm: "jacobi svd",
            iterations: MAX_SWEEPS,
        });
    }
    let norms: Vec<T> = g.iter().map(|c| dot(c, c).sqrt()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap_or(std::cmp::Ordering::Equal));
    let smax = order.first().map_or(T::zero(), |&k| norms[k]);
    let floor = smax * tol * T::cast(rows as f64);

    let mut ucols: Vec<Vec<T>> = Vec::with_capacity(rows);
    let mut s = Vec::with_capacity(cols);
    let mut vcols = Vec::with_capacity(cols);
    for &k in &order {
        let sk = norms[k];
        s.push(sk * scale);
        vcols.push(v[k].clone());
        if sk > floor && sk > T::zero() {
            ucols.push(g[k].iter().map(|&x| x / sk).collect());
        } else {
            ucols.push(Vec::new());
        }
    }
    complete_basis(&mut ucols, rows);
    let u = DenseMatrix::from_fn(rows, rows, |i, j| ucols[j][i]);
    let v = DenseMatrix::from_fn(cols, cols, |i, j| vcols[j][i]);
    Ok(SvdFactors {
        u,
        s: DenseVector::from_vec(s),
        v,
    })
}

fn rotate<T: Real>(cols: &mut [Vec<T>], p: usize, q: usize, c: T, s: T) {
    for i in 0..cols[p].len() {
        let a = cols[p][i];
        let b = cols[q][i];
        cols[p][i] = c * a - s * b;
        cols[q][i] = s * a + c * b;
    }
}

/// Fills empty slots and appends columns so that `cols` is an orthonormal
/// basis of R^n. Each new column is the canonical vector with the largest
/// component outside the current span, orthogonalised twice.
fn complete_basis<T: Real>(cols: &mut Vec<Vec<T>>, n: usize) {
    let mut slots: Vec<usize> = (0..cols.len()).filter(|&j| cols[j].is_empty()).collect();
    while cols.len() < n {
        slots.push(cols.len());
        cols.push(Vec::new());
    }
    for slot in slots {
        let mut best: Option<(T, Vec<T>)> = None;
        for candidate in 0..n {
            let mut w = DenseVector::<T>::unit(n, candidate).into_vec();
            for _ in 0..2 {
                for c in cols.iter().filter(|c| !c.is_empty()) {
                    let d = dot(c, &w);
                    for (wi, &ci) in w.iter_mut().zip(c) {
                        *wi -= d * ci;
                    }
                }
            }
            let nrm = dot(&w, &w).sqrt();
            if best.as_ref().is_none_or(|(b, _)| nrm > *b) {
                best = Some((nrm, w));
            }
        }
        let (nrm, w) = best.expect("n >= 1");
        cols[slot] = w.into_iter().map(|x| x / nrm).collect();
    }
}

fn fix_signs<T: Real>(f: &mut SvdFactors<T>) {
    let m = f.u.rows();
    for j in 0..f.u.cols() {
        let mut best = 0;
        for i in 1..m {
            if f.u[(i, j)].abs() > f.u[(best, j)].abs() {
                best = i;
            }
        }
        if f.u[(best, j)] < T::zero() {
            for i in 0..m {
                f.u[(i, j)] = -f.u[(i, j)];
            }
            if j < f.v.cols() && j < f.s.len() {
                for i in 0..f.v.rows() {
                    f.v[(i, j)] = -f.v[(i, j)];
                }
            }
        }
    }
}
