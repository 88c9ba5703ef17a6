//! Symmetric eigenvalue kernels: Householder tridiagonalization followed by
//! the implicit-shift QL iteration (EISPACK `tred2`/`tql2` lineage), plus
//! inverse iteration on tridiagonal matrices.

use crate::error::{Error, Result};
use crate::num::{lit, Real};

const MAX_QL_SWEEPS: usize = 60;

/// Implicit QL on a symmetric tridiagonal matrix with diagonal `d` and
/// sub-diagonal `e` (length `n`, `e[0]` ignored). On return `d` holds the
/// eigenvalues in ascending order. When `vectors` is given (row-major
/// `n x n`, initialized to the basis the tridiagonal form lives in) its
/// columns are rotated into eigenvectors.
pub(crate) fn tql2<T: Real>(d: &mut [T], e: &mut [T], mut vectors: Option<&mut [Vec<T>]>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();

    let eps = T::epsilon();
    let two = lit::<T>(2.0);
    let mut f = T::zero();
    let mut tst1 = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_QL_SWEEPS {
                    return Err(Error::NoConvergence { index: l, iterations: MAX_QL_SWEEPS });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(v) = vectors.as_deref_mut() {
                        for row in v.iter_mut() {
                            let h = row[i + 1];
                            row[i + 1] = s * row[i] + c * h;
                            row[i] = c * row[i] - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }

    // selection sort keeps vector columns aligned and is deterministic
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for (j, &dj) in d.iter().enumerate().skip(i + 1) {
            if dj < p {
                k = j;
                p = dj;
            }
        }
        if k != i {
            d.swap(i, k);
            if let Some(v) = vectors.as_deref_mut() {
                for row in v.iter_mut() {
                    row.swap(i, k);
                }
            }
        }
    }
    Ok(())
}

/// Householder reduction of the symmetric matrix `v` (overwritten by the
/// accumulated orthogonal transform) to tridiagonal form `(d, e)`.
pub(crate) fn tred2<T: Real>(v: &mut [Vec<T>], d: &mut [T], e: &mut [T]) {
    let n = d.len();
    d.copy_from_slice(&v[n - 1][..n]);
    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for dk in d.iter().take(i) {
            scale += dk.abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = T::zero();
                v[j][i] = T::zero();
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = T::zero();
            }
            for j in 0..i {
                f = d[j];
                v[j][i] = f;
                g = e[j] + v[j][j] * f;
                for k in (j + 1)..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            f = T::zero();
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k][j] -= f * e[k] + g * d[k];
                }
                d[j] = v[i - 1][j];
                v[i][j] = T::zero();
            }
        }
        d[i] = h;
    }

    for i in 0..n - 1 {
        v[n - 1][i] = v[i][i];
        v[i][i] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                for k in 0..=i {
                    g += v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    v[k][j] -= g * d[k];
                }
            }
        }
        for row in v.iter_mut().take(i + 1) {
            row[i + 1] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = T::zero();
    }
    v[n - 1][n - 1] = T::one();
    e[0] = T::zero();
}

/// Eigen-decomposition of a dense symmetric matrix: ascending eigenvalues
/// and the matrix whose columns are the eigenvectors.
pub(crate) fn symmetric_eigen<T: Real>(mut a: Vec<Vec<T>>) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    let n = a.len();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    if n == 0 {
        return Ok((d, a));
    }
    tred2(&mut a, &mut d, &mut e);
    tql2(&mut d, &mut e, Some(&mut a))?;
    Ok((d, a))
}

/// Ascending eigenvalues of the tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (length `n - 1`).
pub(crate) fn tridiagonal_eigenvalues<T: Real>(diag: &[T], off: &[T]) -> Result<Vec<T>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![T::zero(); n];
    e[1..n].copy_from_slice(&off[..n - 1]);
    tql2(&mut d, &mut e, None)?;
    Ok(d)
}

/// LU factorization with partial pivoting of a shifted tridiagonal matrix
/// (LAPACK `gttrf` layout).
struct TridiagonalLu<T> {
    dl: Vec<T>,
    d: Vec<T>,
    du: Vec<T>,
    du2: Vec<T>,
    swapped: Vec<bool>,
}

impl<T: Real> TridiagonalLu<T> {
    fn factor(diag: &[T], off: &[T], shift: T, tiny: T) -> Self {
        let n = diag.len();
        let mut dl = off.to_vec();
        let mut du = off.to_vec();
        let mut d: Vec<T> = diag.iter().map(|&x| x - shift).collect();
        let mut du2 = vec![T::zero(); n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == T::zero() {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if n > 0 && d[n - 1] == T::zero() {
            d[n - 1] = tiny;
        }
        Self { dl, d, du, du2, swapped }
    }

    fn solve(&self, b: &mut [T]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

fn normalize<T: Real>(v: &mut [T]) {
    let norm = v.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
    if norm > T::zero() {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

/// Unit eigenvectors for the given (accurate) eigenvalues by inverse
/// iteration. Vectors of nearly equal eigenvalues are orthogonalized.
pub(crate) fn tridiagonal_eigenvectors<T: Real>(diag: &[T], off: &[T], eigenvalues: &[T]) -> Vec<Vec<T>> {
    let n = diag.len();
    let scale = diag
        .iter()
        .map(|x| x.abs())
        .chain(off.iter().map(|x| x.abs() * lit(2.0)))
        .fold(T::zero(), T::max)
        .max(T::min_positive_value());
    let tiny = T::epsilon() * scale;
    let cluster = lit::<T>(1e-7) * scale;
    let mut out: Vec<Vec<T>> = Vec::with_capacity(eigenvalues.len());
    for (j, &lambda) in eigenvalues.iter().enumerate() {
        let lu = TridiagonalLu::factor(diag, off, lambda, tiny);
        // deterministic, non-symmetric start vector
        let mut x: Vec<T> = (0..n)
            .map(|i| T::one() + lit::<T>(0.5) * (lit::<T>(i as f64 * 0.754_877_666) + lit(j as f64)).sin())
            .collect();
        normalize(&mut x);
        for _ in 0..3 {
            lu.solve(&mut x);
            for prev in out.iter().zip(eigenvalues) {
                if (*prev.1 - lambda).abs() < cluster {
                    let dot = prev.0.iter().zip(&x).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
                    for (xi, &pi) in x.iter_mut().zip(prev.0) {
                        *xi -= dot * pi;
                    }
                }
            }
            normalize(&mut x);
        }
        // first significant component positive
        let peak = x.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        if let Some(first) = x.iter().find(|v| v.abs() > lit::<T>(1e-3) * peak) {
            if *first < T::zero() {
                x.iter_mut().for_each(|v| *v = -*v);
            }
        }
        out.push(x);
    }
    out
}
