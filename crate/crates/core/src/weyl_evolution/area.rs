use num_complex::Complex64;

use crate::discrete::DiscreteWPath;
use crate::operator_algebra::ScaleContext;

/// Both sides of the chord/area identity at the phase-space point `(q, p)`:
/// `lhs = 2 C conj(z_x) - 2 conj(C) z_x` with `C` the alternating chord sum,
/// `rhs = sum_k (-1)^{k+1} (2i/hbar)(Q_k p - P_k q)` with
/// `w_k = (Q_k/b + i P_k/c)/sqrt2`.
pub fn area_identity(path: &DiscreteWPath, q: f64, p: f64, ctx: &ScaleContext) -> (Complex64, Complex64) {
    let n = path.n();
    let w = path.w();
    let mut chord = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        let s = if k % 2 == 1 { 1.0 } else { -1.0 };
        chord += w[n - k] * s;
    }
    let zx = ctx.z_of(q, p);
    let lhs = 2.0 * chord * zx.conj() - 2.0 * chord.conj() * zx;
    let mut area = 0.0;
    for (k, &wk) in w.iter().enumerate() {
        let (qk, pk) = ctx.qp_of(wk);
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        area += s * (qk * p - pk * q);
    }
    (lhs, Complex64::new(0.0, 2.0 * area / ctx.hbar))
}
