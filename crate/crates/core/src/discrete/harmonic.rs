use num_complex::Complex64;

use super::path::DiscreteWPath;
use crate::error::{Error, Result};
use crate::Form;

/// Coefficients multiplying `z' conj(z'')` in the harmonic discrete exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuCoefficients {
    pub q: Complex64,
    pub p: Complex64,
    pub w: Complex64,
}

impl MuCoefficients {
    pub fn get(&self, form: Form) -> Complex64 {
        match form {
            Form::Q => self.q,
            Form::P => self.p,
            Form::W => self.w,
        }
    }
}

pub fn mu_coefficients(omega: f64, t: f64, n: usize) -> Result<MuCoefficients> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    let tau = t / n as f64;
    let x = tau * omega;
    let one = Complex64::new(1.0, 0.0);
    let half = Complex64::new(0.0, 0.5 * x);
    let ni = n as i32;
    Ok(MuCoefficients {
        q: Complex64::new(1.0, -x).powi(ni),
        p: Complex64::new(1.0, x).powi(-ni),
        w: ((one - half) / (one + half)).powi(ni),
    })
}

/// Closed-form discrete harmonic propagators.
pub fn harmonic_discrete_k(
    form: Form,
    z_start: Complex64,
    z_end: Complex64,
    omega: f64,
    t: f64,
    n: usize,
) -> Result<Complex64> {
    if form == Form::W && !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("the Weyl form needs even N, got {n}")));
    }
    let mu = mu_coefficients(omega, t, n)?;
    let tau = t / n as f64;
    let x = tau * omega;
    let cross = z_start * z_end.conj();
    let norms = -0.5 * z_start.norm_sqr() - 0.5 * z_end.norm_sqr();
    let ni = n as i32;
    let value = match form {
        Form::Q => (Complex64::new(0.0, -0.5 * omega * t) + mu.q * cross + norms).exp(),
        Form::P => {
            Complex64::new(1.0, x).powi(-ni)
                * (Complex64::new(0.0, 0.5 * omega * t) + mu.p * cross + norms).exp()
        }
        Form::W => Complex64::new(1.0, 0.5 * x).powi(-ni) * (mu.w * cross + norms).exp(),
    };
    Ok(value)
}

/// `<z''| exp(-i omega T (a†a + 1/2)) |z'>`.
pub fn harmonic_exact(z_start: Complex64, z_end: Complex64, omega: f64, t: f64) -> Complex64 {
    let rot = Complex64::from_polar(1.0, -omega * t);
    (Complex64::new(0.0, -0.5 * omega * t) + rot * z_start * z_end.conj()
        - 0.5 * z_start.norm_sqr()
        - 0.5 * z_end.norm_sqr())
    .exp()
}

/// Stationary midpoints of the harmonic Weyl exponent.
///
/// `w_k = conj(a)^{k-1} / a^k z'` and `wbar_k = conj(a)^{N-k} / a^{N-k+1} conj(z'')`
/// with `a = 1 + i tau omega / 2`.
pub fn stationary_path_harmonic(
    z_start: Complex64,
    z_end: Complex64,
    omega: f64,
    t: f64,
    n: usize,
) -> Result<DiscreteWPath> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("N must be even and positive, got {n}")));
    }
    let tau = t / n as f64;
    let a = Complex64::new(1.0, 0.5 * tau * omega);
    let ratio = a.conj() / a;
    let mut w = Vec::with_capacity(n);
    let mut wbar = vec![Complex64::new(0.0, 0.0); n];
    let mut fw = z_start / a;
    let mut fb = z_end.conj() / a;
    for k in 0..n {
        w.push(fw);
        fw *= ratio;
        wbar[n - 1 - k] = fb;
        fb *= ratio;
    }
    DiscreteWPath::new(w, wbar, tau, z_start, z_end)
}
