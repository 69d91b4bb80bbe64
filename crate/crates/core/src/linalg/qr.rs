use super::{DenseMatrix, Real};

/// `m = q * r` with `q` square orthogonal and `r` upper trapezoidal.
#[derive(Debug, Clone, PartialEq)]
pub struct QrFactors<T> {
    pub q: DenseMatrix<T>,
    pub r: DenseMatrix<T>,
}

/// Elementary reflector `H = I - tau v v^T` with `v[0] = 1` mapping
/// `(alpha, x)` to `(beta, 0)`. Returns `(beta, tau, v_tail)`.
pub(crate) fn reflector<T: Real>(alpha: T, x: &[T]) -> (T, T, Vec<T>) {
    let xnorm = x.iter().fold(T::zero(), |acc, &v| acc.hypot(v));
    if xnorm == T::zero() {
        return (alpha, T::zero(), vec![T::zero(); x.len()]);
    }
    let beta = -alpha.hypot(xnorm).copysign(alpha);
    let tau = (beta - alpha) / beta;
    let scale = T::one() / (alpha - beta);
    (beta, tau, x.iter().map(|&v| v * scale).collect())
}

/// Householder QR with the plain reflector sign convention: the diagonal of
/// `r` may be negative.
pub fn householder_qr<T: Real>(m: &DenseMatrix<T>) -> QrFactors<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = m.clone();
    let k = rows.min(cols);
    let mut reflectors: Vec<(T, Vec<T>)> = Vec::with_capacity(k);
    for j in 0..k {
        let tail: Vec<T> = (j + 1..rows).map(|i| r[(i, j)]).collect();
        let (beta, tau, vt) = reflector(r[(j, j)], &tail);
        let mut v = Vec::with_capacity(rows - j);
        v.push(T::one());
        v.extend_from_slice(&vt);
        if tau != T::zero() {
            for c in j + 1..cols {
                let s = tau * (j..rows).map(|i| v[i - j] * r[(i, c)]).sum::<T>();
                for i in j..rows {
                    r[(i, c)] -= s * v[i - j];
                }
            }
        }
        r[(j, j)] = beta;
        for i in j + 1..rows {
            r[(i, j)] = T::zero();
        }
        reflectors.push((tau, v));
    }
    let mut q = DenseMatrix::identity(rows);
    for (j, (tau, v)) in reflectors.iter().enumerate().rev() {
        if *tau == T::zero() {
            continue;
        }
        for c in 0..rows {
            let s = *tau * (j..rows).map(|i| v[i - j] * q[(i, c)]).sum::<T>();
            for i in j..rows {
                q[(i, c)] -= s * v[i - j];
            }
        }
    }
    QrFactors { q, r }
}

/// Householder QR normalised so that `r[i][i] >= 0` for `i < min(m, n)`.
pub fn qr_decompose<T: Real>(m: &DenseMatrix<T>) -> QrFactors<T> {
    let QrFactors { mut q, mut r } = householder_qr(m);
    for i in 0..m.rows().min(m.cols()) {
        if r[(i, i)] < T::zero() {
            for j in i..r.cols() {
                r[(i, j)] = -r[(i, j)];
            }
            for k in 0..q.rows() {
                q[(k, i)] = -q[(k, i)];
            }
        }
    }
    QrFactors { q, r }
}
