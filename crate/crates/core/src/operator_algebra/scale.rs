use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical constants and the widths `b`, `c` with `b c = hbar`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleContext {
    pub hbar: f64,
    pub mass: f64,
    pub omega: f64,
    pub b: f64,
    pub c: f64,
}

impl ScaleContext {
    /// Uses the oscillator length `b = sqrt(hbar / (m omega))`.
    pub fn new(hbar: f64, mass: f64, omega: f64) -> Result<Self> {
        check_positive("hbar", hbar)?;
        check_positive("mass", mass)?;
        check_positive("omega", omega)?;
        Self::with_width(hbar, mass, omega, (hbar / (mass * omega)).sqrt())
    }

    pub fn with_width(hbar: f64, mass: f64, omega: f64, b: f64) -> Result<Self> {
        check_positive("hbar", hbar)?;
        check_positive("mass", mass)?;
        check_positive("omega", omega)?;
        check_positive("b", b)?;
        Ok(Self {
            hbar,
            mass,
            omega,
            b,
            c: hbar / b,
        })
    }

    /// `hbar = m = omega = b = 1`.
    pub fn unit() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            omega: 1.0,
            b: 1.0,
            c: 1.0,
        }
    }

    pub fn z_of(&self, q: f64, p: f64) -> Complex64 {
        Complex64::new(q / self.b, p / self.c) / std::f64::consts::SQRT_2
    }

    pub fn qp_of(&self, z: Complex64) -> (f64, f64) {
        let s = std::f64::consts::SQRT_2;
        (s * self.b * z.re, s * self.c * z.im)
    }
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be positive and finite, got {x}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths_multiply_to_hbar() {
        let ctx = ScaleContext::with_width(0.3, 2.0, 1.5, 0.7).unwrap();
        assert!((ctx.b * ctx.c - 0.3).abs() < 1e-16);
    }

    #[test]
    fn round_trip() {
        let ctx = ScaleContext::with_width(0.5, 1.0, 1.0, 2.0).unwrap();
        let (q, p) = ctx.qp_of(ctx.z_of(1.25, -0.4));
        assert!((q - 1.25).abs() < 1e-15 && (p + 0.4).abs() < 1e-15);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(ScaleContext::new(0.0, 1.0, 1.0).is_err());
        assert!(ScaleContext::with_width(1.0, 1.0, 1.0, -1.0).is_err());
    }
}
