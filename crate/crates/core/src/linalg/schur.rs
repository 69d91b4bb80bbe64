use super::qr::reflector;
use super::{eps, ComplexScalar, DenseMatrix, LinalgError, Real};

/// Real Schur form `a = z * t * z^T`: `t` quasi upper triangular with
/// standardised 2x2 blocks for complex pairs, `z` orthogonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurFactors<T> {
    pub t: DenseMatrix<T>,
    pub z: DenseMatrix<T>,
}

impl<T: Real> SchurFactors<T> {
    /// Eigenvalues read off the diagonal blocks, sorted by (re, im).
    pub fn eigenvalues(&self) -> Vec<ComplexScalar> {
        let t = &self.t;
        let n = t.rows();
        let mut out = Vec::with_capacity(n);
        let mut i = 0;
        while i < n {
            if i + 1 < n && t[(i + 1, i)] != T::zero() {
                let (a, b, c, d) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
                let (re1, im1, re2, im2) = block_eigenvalues(a, b, c, d);
                out.push(ComplexScalar::new(re1.widen(), im1.widen()));
                out.push(ComplexScalar::new(re2.widen(), im2.widen()));
                i += 2;
            } else {
                out.push(ComplexScalar::real(t[(i, i)].widen()));
                i += 1;
            }
        }
        out.sort_by(ComplexScalar::cmp_re_im);
        out
    }
}

fn block_eigenvalues<T: Real>(a: T, b: T, c: T, d: T) -> (T, T, T, T) {
    if c == T::zero() {
        return (a, T::zero(), d, T::zero());
    }
    let im = b.abs().sqrt() * c.abs().sqrt();
    (a, im, d, -im)
}

fn fsign<T: Real>(a: T, b: T) -> T {
    if b >= T::zero() {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Householder reduction to upper Hessenberg form: returns `(h, q)` with
/// `a = q * h * q^T`.
pub fn hessenberg<T: Real>(a: &DenseMatrix<T>) -> Result<(DenseMatrix<T>, DenseMatrix<T>), LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut h = a.clone();
    let mut q = DenseMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let tail: Vec<T> = (k + 2..n).map(|i| h[(i, k)]).collect();
        let (beta, tau, vt) = reflector(h[(k + 1, k)], &tail);
        if tau == T::zero() {
            continue;
        }
        let mut v = vec![T::one()];
        v.extend(vt);
        let off = k + 1;
        for c in k..n {
            let s = tau * (off..n).map(|i| v[i - off] * h[(i, c)]).sum::<T>();
            for i in off..n {
                h[(i, c)] -= s * v[i - off];
            }
        }
        for r in 0..n {
            let s = tau * (off..n).map(|j| h[(r, j)] * v[j - off]).sum::<T>();
            for j in off..n {
                h[(r, j)] -= s * v[j - off];
            }
        }
        for r in 0..n {
            let s = tau * (off..n).map(|j| q[(r, j)] * v[j - off]).sum::<T>();
            for j in off..n {
                q[(r, j)] -= s * v[j - off];
            }
        }
        h[(k + 1, k)] = beta;
        for i in k + 2..n {
            h[(i, k)] = T::zero();
        }
    }
    Ok((h, q))
}

/// Standardises a real 2x2 block. Returns `(a, b, c, d, cs, sn)` such that
/// `[a b; c d] = [cs -sn; sn cs]^T [a0 b0; c0 d0] [cs -sn; sn cs]`, with
/// either `c == 0` or `a == d` and `b * c < 0`.
#[allow(clippy::many_single_char_names)]
fn lanv2<T: Real>(mut a: T, mut b: T, mut c: T, mut d: T) -> (T, T, T, T, T, T) {
    let zero = T::zero();
    let one = T::one();
    let half = T::cast(0.5);
    let multpl = T::cast(4.0);
    let (mut cs, mut sn);
    if c == zero {
        cs = one;
        sn = zero;
    } else if b == zero {
        cs = zero;
        sn = one;
        std::mem::swap(&mut a, &mut d);
        b = -c;
        c = zero;
    } else if a - d == zero && fsign(one, b) != fsign(one, c) {
        cs = one;
        sn = zero;
    } else {
        let temp = a - d;
        let mut p = half * temp;
        let bcmax = b.abs().max(c.abs());
        let bcmis = b.abs().min(c.abs()) * fsign(one, b) * fsign(one, c);
        let scale = p.abs().max(bcmax);
        let mut z = (p / scale) * p + (bcmax / scale) * bcmis;
        if z >= multpl * eps::<T>() {
            z = p + fsign(scale.sqrt() * z.sqrt(), p);
            a = d + z;
            d = d - (bcmax / z) * bcmis;
            let tau = c.hypot(z);
            cs = z / tau;
            sn = c / tau;
            b = b - c;
            c = zero;
        } else {
            let sigma = b + c;
            let tau = sigma.hypot(temp);
            cs = (half * (one + sigma.abs() / tau)).sqrt();
            sn = -(p / (tau * cs)) * fsign(one, sigma);
            let aa = a * cs + b * sn;
            let bb = -a * sn + b * cs;
            let cc = c * cs + d * sn;
            let dd = -c * sn + d * cs;
            a = aa * cs + cc * sn;
            b = bb * cs + dd * sn;
            c = -aa * sn + cc * cs;
            d = -bb * sn + dd * cs;
            let temp = half * (a + d);
            a = temp;
            d = temp;
            if c != zero {
                if b != zero {
                    if fsign(one, b) == fsign(one, c) {
                        let sab = b.abs().sqrt();
                        let sac = c.abs().sqrt();
                        p = fsign(sab * sac, c);
                        let tau = one / (b + c).abs().sqrt();
                        a = temp + p;
                        d = temp - p;
                        b = b - c;
                        c = zero;
                        let cs1 = sab * tau;
                        let sn1 = sac * tau;
                        let t = cs * cs1 - sn * sn1;
                        sn = cs * sn1 + sn * cs1;
                        cs = t;
                    }
                } else {
                    b = -c;
                    c = zero;
                    let t = cs;
                    cs = -sn;
                    sn = t;
                }
            }
        }
    }
    (a, b, c, d, cs, sn)
}

/// Francis double-shift QR on a Hessenberg matrix, accumulating into `z`.
fn hqr<T: Real>(h: &mut DenseMatrix<T>, z: &mut DenseMatrix<T>) -> Result<(), LinalgError> {
    let n = h.rows();
    if n == 0 {
        return Ok(());
    }
    let ulp = eps::<T>();
    let smlnum = T::min_positive_value() * (T::cast(n as f64) / ulp);
    let itmax = 30 * n.max(10);
    let kexsh = 10;
    let dat1 = T::cast(0.75);
    let dat2 = T::cast(-0.4375);
    let two = T::cast(2.0);
    let mut kdefl = 0usize;

    for j in 0..n.saturating_sub(3) {
        h[(j + 2, j)] = T::zero();
        h[(j + 3, j)] = T::zero();
    }
    if n >= 3 {
        h[(n - 1, n - 3)] = T::zero();
    }

    let mut i = n as isize - 1;
    while i >= 0 {
        let iu = i as usize;
        let mut l = 0usize;
        let mut converged = false;
        for _its in 0..=itmax {
            let mut k = iu;
            while k > l {
                if h[(k, k - 1)].abs() <= smlnum {
                    break;
                }
                let mut tst = h[(k - 1, k - 1)].abs() + h[(k, k)].abs();
                if tst == T::zero() {
                    if k >= 2 {
                        tst += h[(k - 1, k - 2)].abs();
                    }
                    if k + 1 < n {
                        tst += h[(k + 1, k)].abs();
                    }
                }
                if h[(k, k - 1)].abs() <= ulp * tst {
                    let ab = h[(k, k - 1)].abs().max(h[(k - 1, k)].abs());
                    let ba = h[(k, k - 1)].abs().min(h[(k - 1, k)].abs());
                    let aa = h[(k, k)].abs().max((h[(k - 1, k - 1)] - h[(k, k)]).abs());
                    let bb = h[(k, k)].abs().min((h[(k - 1, k - 1)] - h[(k, k)]).abs());
                    let s = aa + ab;
                    if ba * (ab / s) <= smlnum.max(ulp * (bb * (aa / s))) {
                        break;
                    }
                }
                k -= 1;
            }
            l = k;
            if l > 0 {
                h[(l, l - 1)] = T::zero();
            }
            if l + 1 >= iu {
                converged = true;
                break;
            }
            kdefl += 1;

            let (mut h11, mut h12, mut h21, mut h22);
            if kdefl.is_multiple_of(2 * kexsh) {
                let s = h[(iu, iu - 1)].abs() + h[(iu - 1, iu - 2)].abs();
                h11 = dat1 * s + h[(iu, iu)];
                h12 = dat2 * s;
                h21 = s;
                h22 = h11;
            } else if kdefl.is_multiple_of(kexsh) {
                let s = h[(l + 1, l)].abs() + h[(l + 2, l + 1)].abs();
                h11 = dat1 * s + h[(l, l)];
                h12 = dat2 * s;
                h21 = s;
                h22 = h11;
            } else {
                h11 = h[(iu - 1, iu - 1)];
                h21 = h[(iu, iu - 1)];
                h12 = h[(iu - 1, iu)];
                h22 = h[(iu, iu)];
            }
            let s = h11.abs() + h12.abs() + h21.abs() + h22.abs();
            let (rt1r, rt1i, rt2r, rt2i);
            if s == T::zero() {
                rt1r = T::zero();
                rt1i = T::zero();
                rt2r = T::zero();
                rt2i = T::zero();
            } else {
                h11 /= s;
                h21 /= s;
                h12 /= s;
                h22 /= s;
                let tr = (h11 + h22) / two;
                let det = (h11 - tr) * (h22 - tr) - h12 * h21;
                let rtdisc = det.abs().sqrt();
                if det >= T::zero() {
                    rt1r = tr * s;
                    rt2r = rt1r;
                    rt1i = rtdisc * s;
                    rt2i = -rt1i;
                } else {
                    let a = tr + rtdisc;
                    let b = tr - rtdisc;
                    let r = if (a - h22).abs() <= (b - h22).abs() { a } else { b } * s;
                    rt1r = r;
                    rt2r = r;
                    rt1i = T::zero();
                    rt2i = T::zero();
                }
            }

            let mut m = iu - 2;
            let mut v = [T::zero(); 3];
            loop {
                let mut h21s = h[(m + 1, m)];
                let mut s = (h[(m, m)] - rt2r).abs() + rt2i.abs() + h21s.abs();
                h21s = h[(m + 1, m)] / s;
                v[0] = h21s * h[(m, m + 1)] + (h[(m, m)] - rt1r) * ((h[(m, m)] - rt2r) / s)
                    - rt1i * (rt2i / s);
                v[1] = h21s * (h[(m, m)] + h[(m + 1, m + 1)] - rt1r - rt2r);
                v[2] = h21s * h[(m + 2, m + 1)];
                s = v[0].abs() + v[1].abs() + v[2].abs();
                v[0] /= s;
                v[1] /= s;
                v[2] /= s;
                if m == l {
                    break;
                }
                let h00 = h[(m, m - 1)].abs() * (v[1].abs() + v[2].abs());
                let h01 = v[0].abs() * (h[(m - 1, m - 1)].abs() + h[(m, m)].abs() + h[(m + 1, m + 1)].abs());
                if h00 <= ulp * h01 {
                    break;
                }
                m -= 1;
            }

            for k in m..iu {
                let nr = 3.min(iu - k + 1);
                if k > m {
                    for (r, vr) in v.iter_mut().enumerate().take(nr) {
                        *vr = h[(k + r, k - 1)];
                    }
                }
                let (beta, t1, tail) = reflector(v[0], &v[1..nr]);
                v[0] = beta;
                for (r, &x) in tail.iter().enumerate() {
                    v[r + 1] = x;
                }
                if k > m {
                    h[(k, k - 1)] = v[0];
                    h[(k + 1, k - 1)] = T::zero();
                    if k + 1 < iu {
                        h[(k + 2, k - 1)] = T::zero();
                    }
                } else if m > l {
                    h[(k, k - 1)] = h[(k, k - 1)] * (T::one() - t1);
                }
                let v2 = v[1];
                let t2 = t1 * v2;
                if nr == 3 {
                    let v3 = v[2];
                    let t3 = t1 * v3;
                    for j in k..n {
                        let sum = h[(k, j)] + v2 * h[(k + 1, j)] + v3 * h[(k + 2, j)];
                        h[(k, j)] -= sum * t1;
                        h[(k + 1, j)] -= sum * t2;
                        h[(k + 2, j)] -= sum * t3;
                    }
                    for j in 0..=(k + 3).min(iu) {
                        let sum = h[(j, k)] + v2 * h[(j, k + 1)] + v3 * h[(j, k + 2)];
                        h[(j, k)] -= sum * t1;
                        h[(j, k + 1)] -= sum * t2;
                        h[(j, k + 2)] -= sum * t3;
                    }
                    for j in 0..n {
                        let sum = z[(j, k)] + v2 * z[(j, k + 1)] + v3 * z[(j, k + 2)];
                        z[(j, k)] -= sum * t1;
                        z[(j, k + 1)] -= sum * t2;
                        z[(j, k + 2)] -= sum * t3;
                    }
                } else if nr == 2 {
                    for j in k..n {
                        let sum = h[(k, j)] + v2 * h[(k + 1, j)];
                        h[(k, j)] -= sum * t1;
                        h[(k + 1, j)] -= sum * t2;
                    }
                    for j in 0..=iu {
                        let sum = h[(j, k)] + v2 * h[(j, k + 1)];
                        h[(j, k)] -= sum * t1;
                        h[(j, k + 1)] -= sum * t2;
                    }
                    for j in 0..n {
                        let sum = z[(j, k)] + v2 * z[(j, k + 1)];
                        z[(j, k)] -= sum * t1;
                        z[(j, k + 1)] -= sum * t2;
                    }
                }
            }
        }
        if !converged {
            return Err(LinalgError::NoConvergence {
                algorithm: "francis qr",
                iterations: itmax,
            });
        }
        if l + 1 == iu {
            let (a, b, c, d, cs, sn) = lanv2(h[(iu - 1, iu - 1)], h[(iu - 1, iu)], h[(iu, iu - 1)], h[(iu, iu)]);
            h[(iu - 1, iu - 1)] = a;
            h[(iu - 1, iu)] = b;
            h[(iu, iu - 1)] = c;
            h[(iu, iu)] = d;
            for j in iu + 1..n {
                let x = h[(iu - 1, j)];
                let y = h[(iu, j)];
                h[(iu - 1, j)] = cs * x + sn * y;
                h[(iu, j)] = cs * y - sn * x;
            }
            for j in 0..iu - 1 {
                let x = h[(j, iu - 1)];
                let y = h[(j, iu)];
                h[(j, iu - 1)] = cs * x + sn * y;
                h[(j, iu)] = cs * y - sn * x;
            }
            for j in 0..n {
                let x = z[(j, iu - 1)];
                let y = z[(j, iu)];
                z[(j, iu - 1)] = cs * x + sn * y;
                z[(j, iu)] = cs * y - sn * x;
            }
        }
        kdefl = 0;
        i = l as isize - 1;
    }
    Ok(())
}

/// Real Schur decomposition via Hessenberg reduction and Francis double-shift QR.
pub fn schur_decompose<T: Real>(a: &DenseMatrix<T>) -> Result<SchurFactors<T>, LinalgError> {
    if let Some(pos) = a.as_slice().iter().position(|x| !x.is_finite()) {
        return Err(LinalgError::NonFinite(pos));
    }
    let (mut t, mut z) = hessenberg(a)?;
    hqr(&mut t, &mut z)?;
    for i in 0..t.rows() {
        for j in 0..i.saturating_sub(1) {
            t[(i, j)] = T::zero();
        }
    }
    Ok(SchurFactors { t, z })
}

/// Diagonal similarity by powers of two that equalises row and column norms.
/// Returns the balanced matrix and the scaling factors `d` (`b = D^-1 a D`).
pub fn balance<T: Real>(a: &DenseMatrix<T>) -> (DenseMatrix<T>, Vec<T>) {
    let n = a.rows();
    let mut b = a.clone();
    let mut d = vec![T::one(); n];
    let radix = T::cast(2.0);
    let sqrdx = radix * radix;
    let thresh = T::cast(0.95);
    loop {
        let mut noconv = false;
        for i in 0..n {
            let mut c = T::zero();
            let mut r = T::zero();
            for j in 0..n {
                if j != i {
                    c += b[(j, i)].abs();
                    r += b[(i, j)].abs();
                }
            }
            if c == T::zero() || r == T::zero() {
                continue;
            }
            let s = c + r;
            let mut g = r / radix;
            let mut f = T::one();
            while c < g {
                f = f * radix;
                c = c * sqrdx;
            }
            g = r * radix;
            while c >= g {
                f = f / radix;
                c = c / sqrdx;
            }
            if (c + r) / f < thresh * s {
                noconv = true;
                d[i] = d[i] * f;
                let g = T::one() / f;
                for j in 0..n {
                    b[(i, j)] = b[(i, j)] * g;
                    b[(j, i)] = b[(j, i)] * f;
                }
            }
        }
        if !noconv {
            break;
        }
    }
    (b, d)
}

/// Eigenvalues of a square matrix, sorted by (re, im).
pub fn eigenvalues<T: Real>(a: &DenseMatrix<T>) -> Result<Vec<ComplexScalar>, LinalgError> {
    Ok(schur_decompose(a)?.eigenvalues())
}

/// Eigenvalues after diagonal balancing, sorted by (re, im).
pub fn eigenvalues_balanced<T: Real>(a: &DenseMatrix<T>) -> Result<Vec<ComplexScalar>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let (b, _) = balance(a);
    eigenvalues(&b)
}
