use num_complex::Complex64;

use super::path::DiscreteWPath;
use crate::operator_algebra::SymbolPoly;

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn hamiltonian_sum(path: &DiscreteWPath, h_w: &SymbolPoly) -> Complex64 {
    path.w()
        .iter()
        .zip(path.wbar())
        .map(|(&w, &wb)| h_w.eval(w, wb))
        .sum()
}

/// `4 sum_{m > i} wbar_m w_i (-1)^{m-i+1}`, written as the printed double sum.
fn coupling_sum(path: &DiscreteWPath) -> Complex64 {
    let (w, wb) = (path.w(), path.wbar());
    let n = w.len();
    let mut acc = Complex64::new(0.0, 0.0);
    // 1-based k in 1..N-1, j in 1..k: wbar_{k+1} w_{k+1-j} (-1)^{j+1}
    for k in 1..n {
        for j in 1..=k {
            acc += wb[k] * w[k - j] * sign(j + 1);
        }
    }
    4.0 * acc
}

/// Weyl-form discrete exponent, in the original ordering of its terms.
///
/// `H_k = H_W(u = w_k, v = wbar_k)`.
pub fn phi_n(path: &DiscreteWPath, h_w: &SymbolPoly, hbar: f64) -> Complex64 {
    let n = path.n();
    let (w, wb) = (path.w(), path.wbar());
    let zs = path.z_start();
    let zec = path.z_end().conj();
    let mi = Complex64::new(0.0, -path.tau() / hbar);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        let s = sign(k + 1);
        acc += mi * h_w.eval(w[k - 1], wb[k - 1]) - 2.0 * w[k - 1] * wb[k - 1]
            + 2.0 * zec * w[n - k] * s
            + 2.0 * zs * wb[k - 1] * s;
    }
    acc + coupling_sum(path) + zs * zec
}

/// The same exponent after regrouping into differences over consecutive pairs.
pub fn phi_n_alt(path: &DiscreteWPath, h_w: &SymbolPoly, hbar: f64) -> Complex64 {
    let n = path.n();
    let (w, wb) = (path.w(), path.wbar());
    let zs = path.z_start();
    let zec = path.z_end().conj();
    // 1-based accessors
    let w1 = |k: usize| w[k - 1];
    let wb1 = |k: usize| wb[k - 1];
    let mut pairs = Complex64::new(0.0, 0.0);
    let mut cross = Complex64::new(0.0, 0.0);
    let mut dw = Complex64::new(0.0, 0.0);
    let mut dwb = Complex64::new(0.0, 0.0);
    for k in (1..n).step_by(2) {
        pairs += w1(k) * (wb1(k + 1) - wb1(k)) - wb1(k + 1) * (w1(k + 1) - w1(k));
        let mut inner = Complex64::new(0.0, 0.0);
        let mut l = k + 1;
        while l + 2 <= n {
            inner += wb1(l + 2) - wb1(l + 1);
            l += 2;
        }
        cross += (w1(k + 1) - w1(k)) * inner;
        dw += w1(k + 1) - w1(k);
        dwb += wb1(k + 1) - wb1(k);
    }
    let mi = Complex64::new(0.0, -path.tau() / hbar);
    2.0 * pairs + mi * hamiltonian_sum(path, h_w) - 4.0 * cross - 2.0 * zs * dwb
        + 2.0 * zec * dw
        + zs * zec
}

/// Endpoint-free part of the exponent and the chord coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiC {
    pub psi: Complex64,
    /// Coefficient multiplying `2 conj(z'')`.
    pub c: Complex64,
    /// Coefficient multiplying `-2 z'`; equals `conj(c)` on real paths.
    pub c_bar: Complex64,
}

impl PsiC {
    /// `psi + 2 C conj(z'') - 2 Cbar z' + z' conj(z'')`.
    pub fn reconstruct(&self, z_start: Complex64, z_end: Complex64) -> Complex64 {
        self.psi + 2.0 * self.c * z_end.conj() - 2.0 * self.c_bar * z_start + z_start * z_end.conj()
    }
}

pub fn psi_c(path: &DiscreteWPath, h_w: &SymbolPoly, hbar: f64) -> PsiC {
    let n = path.n();
    let (w, wb) = (path.w(), path.wbar());
    let mi = Complex64::new(0.0, -path.tau() / hbar);
    let mut psi = coupling_sum(path);
    let mut c = Complex64::new(0.0, 0.0);
    let mut c_bar = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        psi += mi * h_w.eval(w[k - 1], wb[k - 1]) - 2.0 * w[k - 1] * wb[k - 1];
        c += w[n - k] * sign(k + 1);
        c_bar += wb[n - k] * sign(k + 1);
    }
    PsiC { psi, c, c_bar }
}

/// Partial derivatives of [`phi_n`] with respect to `w_l` and `wbar_l`.
pub fn phi_gradient(
    path: &DiscreteWPath,
    h_w: &SymbolPoly,
    hbar: f64,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = path.n();
    let (w, wb) = (path.w(), path.wbar());
    let zs = path.z_start();
    let zec = path.z_end().conj();
    let mi = Complex64::new(0.0, -path.tau() / hbar);
    let mut d_w = vec![Complex64::new(0.0, 0.0); n];
    let mut d_wb = vec![Complex64::new(0.0, 0.0); n];
    // running alternating sums, 1-based l:
    // before(l) = sum_{i<l} w_i (-1)^{l-i+1}, after(l) = sum_{m>l} wbar_m (-1)^{m-l+1}
    let mut before = Complex64::new(0.0, 0.0);
    for l in 1..=n {
        let e = h_w.eval2(w[l - 1], wb[l - 1], 1);
        d_wb[l - 1] = mi * e.dv - 2.0 * w[l - 1] + 2.0 * zs * sign(l + 1) + 4.0 * before;
        before = w[l - 1] - before;
    }
    let mut after = Complex64::new(0.0, 0.0);
    for l in (1..=n).rev() {
        let e = h_w.eval2(w[l - 1], wb[l - 1], 1);
        d_w[l - 1] = mi * e.du - 2.0 * wb[l - 1] + 2.0 * zec * sign(l) + 4.0 * after;
        after = wb[l - 1] - after;
    }
    (d_w, d_wb)
}

/// Largest violation of the pairwise-summed stationarity conditions, i.e. the
/// trapezoid form of the equations of motion on consecutive midpoints.
pub fn stationarity_residual(path: &DiscreteWPath, h_w: &SymbolPoly, hbar: f64) -> f64 {
    let n = path.n();
    let tau = path.tau();
    let (w, wb) = (path.w(), path.wbar());
    let ev: Vec<_> = (0..n).map(|k| h_w.eval2(w[k], wb[k], 1)).collect();
    let i_over = Complex64::new(0.0, 1.0 / hbar);
    let mut worst: f64 = 0.0;
    for l in 1..n {
        // zero-based index l-1 and l hold w_l and w_{l+1}
        let r = if l % 2 == 0 {
            -i_over * 0.5 * (ev[l - 1].dv + ev[l].dv) - (w[l] - w[l - 1]) / tau
        } else {
            -i_over * 0.5 * (ev[l - 1].du + ev[l].du) + (wb[l] - wb[l - 1]) / tau
        };
        worst = worst.max(r.norm());
    }
    worst
}
