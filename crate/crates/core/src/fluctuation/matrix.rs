use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{DeterminantPair, FluctuationCoeffs};
use crate::error::{Error, Result};

fn alt(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Row of `xi_k` (1-based time index) in the ordering
/// `(xi_N, xi*_N, ..., xi_1, xi*_1)`; `xi*_k` sits one row below.
fn row_of(n: usize, k: usize) -> usize {
    2 * (n - k)
}

/// The symmetric `2N x 2N` matrix with `delta^2 phi = -1/2 X^T M X`.
pub fn build_matrix(coeffs: &FluctuationCoeffs) -> DMatrix<Complex64> {
    let n = coeffs.n();
    let s = Complex64::new(0.0, coeffs.tau / coeffs.hbar);
    let mut m = DMatrix::from_element(2 * n, 2 * n, Complex64::new(0.0, 0.0));
    for k in 1..=n {
        let r = row_of(n, k);
        m[(r, r)] = s * coeffs.a[k - 1];
        m[(r + 1, r + 1)] = s * coeffs.b[k - 1];
        m[(r, r + 1)] = s * coeffs.c[k - 1] + 2.0;
        m[(r + 1, r)] = m[(r, r + 1)];
    }
    for mm in 2..=n {
        for i in 1..mm {
            let v = Complex64::new(4.0 * alt(mm - i), 0.0);
            let (ys, x) = (row_of(n, mm) + 1, row_of(n, i));
            m[(ys, x)] = v;
            m[(x, ys)] = v;
        }
    }
    m
}

/// Second variation evaluated directly from its defining sum.
pub fn second_variation(coeffs: &FluctuationCoeffs, xi: &[Complex64], xi_bar: &[Complex64]) -> Complex64 {
    let n = coeffs.n();
    let s = Complex64::new(0.0, -coeffs.tau / coeffs.hbar);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        acc += s
            * (0.5 * coeffs.a[k] * xi[k] * xi[k]
                + 0.5 * coeffs.b[k] * xi_bar[k] * xi_bar[k]
                + coeffs.c[k] * xi[k] * xi_bar[k])
            - 2.0 * xi[k] * xi_bar[k];
    }
    for m in 1..n {
        for i in 0..m {
            acc += 4.0 * alt(m - i + 1) * xi_bar[m] * xi[i];
        }
    }
    acc
}

/// Divides by `2i` and adds each `xi*` row (and column) of the following
/// block; the result is banded with bandwidth two and has determinant
/// `det(M) / (2i)^{2N}`.
pub fn reduce_block_tridiagonal(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let dim = m.nrows();
    let mut r = m / Complex64::new(0.0, 2.0);
    let mut e = DMatrix::<Complex64>::identity(dim, dim);
    let mut y = 1;
    while y + 2 < dim {
        e[(y, y + 2)] = Complex64::new(1.0, 0.0);
        y += 2;
    }
    r = &e * r * e.transpose();
    r
}

/// Determinant by partially pivoted LU.
pub fn det_dense(m: &DMatrix<Complex64>) -> Result<Complex64> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
    }
    if m.nrows() == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let scale = m.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::SingularMatrix(0.0));
    }
    let lu = m.clone().lu();
    let pivot = lu.u().diagonal().iter().map(|x| x.norm()).fold(f64::INFINITY, f64::min);
    let ratio = pivot / scale;
    if ratio < 1e-14 {
        return Err(Error::SingularMatrix(ratio));
    }
    Ok(lu.determinant())
}

/// Two-term recursion for `Delta_N = det(M) / (2i)^{2N}`, obtained by Laplace
/// expansion of the reduced matrix along its last block.
///
/// With `a = tau A / 2hbar` (likewise `b`, `c`) and time index `n`:
/// `Gamma_n = (b_n + b_{n-1}) Delta_{n-1} - (c_{n-1} + i)^2 Gamma_{n-1}
///   + b_{n-1} [2 (c_{n-1}^2 + 1) - a_{n-1} b_{n-1}] Delta_{n-2}` and
/// `Delta_n = a_n Gamma_n - (c_n - i)^2 Delta_{n-1}`, from `Delta_0 = 1`,
/// `Gamma_0 = 0`.
pub fn det_recursive(coeffs: &FluctuationCoeffs) -> DeterminantPair {
    let f = coeffs.tau / (2.0 * coeffs.hbar);
    let i = Complex64::new(0.0, 1.0);
    let (mut d_prev2, mut d_prev) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let mut g_prev = Complex64::new(0.0, 0.0);
    for n in 1..=coeffs.n() {
        let (a, b, c) = (f * coeffs.a[n - 1], f * coeffs.b[n - 1], f * coeffs.c[n - 1]);
        let g = if n == 1 {
            b
        } else {
            let (ap, bp, cp) = (f * coeffs.a[n - 2], f * coeffs.b[n - 2], f * coeffs.c[n - 2]);
            (b + bp) * d_prev - (cp + i) * (cp + i) * g_prev
                + bp * (2.0 * (cp * cp + 1.0) - ap * bp) * d_prev2
        };
        let d = a * g - (c - i) * (c - i) * d_prev;
        d_prev2 = d_prev;
        d_prev = d;
        g_prev = g;
    }
    DeterminantPair {
        delta: d_prev,
        gamma: g_prev,
    }
}
