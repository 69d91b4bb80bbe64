use super::{eps, DenseMatrix, DenseVector, LinalgError, Real};

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
///
/// A pivot at or below `eps * n * max|a|` is reported as singular.
pub fn solve_linear<T: Real>(a: &DenseMatrix<T>, b: &DenseVector<T>) -> Result<DenseVector<T>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if b.len() != n {
        return Err(LinalgError::Shape {
            op: "solve_linear",
            detail: format!("{n}x{n} system with right-hand side of length {}", b.len()),
        });
    }
    let mut m = a.clone();
    let mut x = b.clone().into_vec();
    let threshold = eps::<T>() * T::cast(n as f64) * a.max_abs();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[(i, k)].abs().partial_cmp(&m[(j, k)].abs()).unwrap())
            .unwrap();
        let pivot = m[(p, k)];
        if pivot.abs() <= threshold || pivot == T::zero() {
            return Err(LinalgError::SingularSystem {
                pivot: pivot.abs().widen(),
                threshold: threshold.widen(),
            });
        }
        m.swap_rows(k, p);
        x.swap(k, p);
        for i in k + 1..n {
            let f = m[(i, k)] / pivot;
            if f == T::zero() {
                continue;
            }
            m[(i, k)] = T::zero();
            for j in k + 1..n {
                let v = m[(k, j)];
                m[(i, j)] -= f * v;
            }
            let xk = x[k];
            x[i] -= f * xk;
        }
    }
    for k in (0..n).rev() {
        let mut s = x[k];
        for j in k + 1..n {
            s -= m[(k, j)] * x[j];
        }
        x[k] = s / m[(k, k)];
    }
    DenseVector::new(x).map_err(|_| LinalgError::SingularSystem {
        pivot: 0.0,
        threshold: threshold.widen(),
    })
}

/// Determinant by LU with partial pivoting.
pub fn determinant<T: Real>(a: &DenseMatrix<T>) -> Result<T, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut det = T::one();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[(i, k)].abs().partial_cmp(&m[(j, k)].abs()).unwrap())
            .unwrap();
        let pivot = m[(p, k)];
        if pivot == T::zero() {
            return Ok(T::zero());
        }
        if p != k {
            m.swap_rows(k, p);
            det = -det;
        }
        det *= pivot;
        for i in k + 1..n {
            let f = m[(i, k)] / pivot;
            for j in k + 1..n {
                let v = m[(k, j)];
                m[(i, j)] -= f * v;
            }
        }
    }
    Ok(det)
}
