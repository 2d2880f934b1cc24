use num_complex::Complex64;

use super::DeterminantPair;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumOptions {
    pub steps: usize,
    /// Bound on the step-doubling error estimate, relative to `max(1, |Delta|)`.
    pub tol: f64,
}

impl Default for ContinuumOptions {
    fn default() -> Self {
        Self {
            steps: 2000,
            tol: 1e-10,
        }
    }
}

/// Integrates `Delta' = A Gamma / 2hbar + i C Delta / hbar`,
/// `Gamma' = 2 B Delta / hbar - i C Gamma / hbar` from `Delta(0) = 1`,
/// `Gamma(0) = 0` with classical RK4; `coeffs(t)` returns `(A, B, C)`.
pub fn det_continuum(
    coeffs: impl Fn(f64) -> (Complex64, Complex64, Complex64),
    t: f64,
    hbar: f64,
    opts: &ContinuumOptions,
) -> Result<DeterminantPair> {
    if opts.steps == 0 {
        return Err(Error::InvalidInput("steps must be positive".into()));
    }
    let coarse = integrate(&coeffs, t, hbar, opts.steps);
    let fine = integrate(&coeffs, t, hbar, 2 * opts.steps);
    let estimate = (fine.delta - coarse.delta).norm() / 15.0;
    let bound = opts.tol * fine.delta.norm().max(1.0);
    if !(estimate <= bound) {
        return Err(Error::StepTooLarge {
            estimate,
            bound,
            steps: opts.steps,
        });
    }
    Ok(fine)
}

fn integrate(
    coeffs: &impl Fn(f64) -> (Complex64, Complex64, Complex64),
    t: f64,
    hbar: f64,
    steps: usize,
) -> DeterminantPair {
    let i = Complex64::new(0.0, 1.0);
    let rhs = |s: f64, d: Complex64, g: Complex64| {
        let (a, b, c) = coeffs(s);
        (
            (a * g * 0.5 + i * c * d) / hbar,
            (2.0 * b * d - i * c * g) / hbar,
        )
    };
    let h = t / steps as f64;
    let (mut d, mut g) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    for k in 0..steps {
        let s = k as f64 * h;
        let (k1d, k1g) = rhs(s, d, g);
        let (k2d, k2g) = rhs(s + 0.5 * h, d + 0.5 * h * k1d, g + 0.5 * h * k1g);
        let (k3d, k3g) = rhs(s + 0.5 * h, d + 0.5 * h * k2d, g + 0.5 * h * k2g);
        let (k4d, k4g) = rhs(s + h, d + h * k3d, g + h * k3g);
        d += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    }
    DeterminantPair { delta: d, gamma: g }
}
