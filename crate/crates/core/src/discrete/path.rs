use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator_algebra::SymbolPoly;

/// Midpoint variables of the Weyl-form discrete path integral.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteWPath {
    w: Vec<Complex64>,
    wbar: Vec<Complex64>,
    tau: f64,
    z_start: Complex64,
    z_end: Complex64,
}

impl DiscreteWPath {
    /// General (complexified) path; `wbar` need not be `conj(w)`.
    pub fn new(
        w: Vec<Complex64>,
        wbar: Vec<Complex64>,
        tau: f64,
        z_start: Complex64,
        z_end: Complex64,
    ) -> Result<Self> {
        let n = w.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!("N must be even and positive, got {n}")));
        }
        if wbar.len() != n {
            return Err(Error::InvalidInput(format!(
                "w has {n} entries but wbar has {}",
                wbar.len()
            )));
        }
        if !(tau >= 0.0 && tau.is_finite()) {
            return Err(Error::InvalidInput(format!("tau must be finite and >= 0, got {tau}")));
        }
        Ok(Self {
            w,
            wbar,
            tau,
            z_start,
            z_end,
        })
    }

    /// Path on the real phase space, `wbar_k = conj(w_k)`.
    pub fn real(w: Vec<Complex64>, tau: f64, z_start: Complex64, z_end: Complex64) -> Result<Self> {
        let wbar = w.iter().map(|x| x.conj()).collect();
        Self::new(w, wbar, tau, z_start, z_end)
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn total_time(&self) -> f64 {
        self.tau * self.w.len() as f64
    }

    /// `z'`.
    pub fn z_start(&self) -> Complex64 {
        self.z_start
    }

    /// `z''` (not conjugated).
    pub fn z_end(&self) -> Complex64 {
        self.z_end
    }

    /// `w_1..w_N`, zero based.
    pub fn w(&self) -> &[Complex64] {
        &self.w
    }

    pub fn wbar(&self) -> &[Complex64] {
        &self.wbar
    }

    pub fn with_endpoints(&self, z_start: Complex64, z_end: Complex64) -> Self {
        Self {
            z_start,
            z_end,
            ..self.clone()
        }
    }
}

/// Coherent-state labels `z_0 = z', z_1, .., z_N = z''` of the Q form.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteZPath {
    z: Vec<Complex64>,
}

impl DiscreteZPath {
    pub fn new(z_start: Complex64, interior: &[Complex64], z_end: Complex64) -> Self {
        let mut z = Vec::with_capacity(interior.len() + 2);
        z.push(z_start);
        z.extend_from_slice(interior);
        z.push(z_end);
        Self { z }
    }

    /// Number of time steps.
    pub fn n(&self) -> usize {
        self.z.len() - 1
    }

    pub fn z(&self) -> &[Complex64] {
        &self.z
    }

    /// Exponent of the Q-form integrand (without the plane measure), with the
    /// Hamiltonian evaluated as `H_Q(u = z_j, v = conj(z_{j+1}))`.
    pub fn q_exponent(&self, h_q: &SymbolPoly, tau: f64, hbar: f64) -> Complex64 {
        let minus_i = Complex64::new(0.0, -1.0);
        self.z
            .windows(2)
            .map(|p| {
                let (a, b) = (p[0], p[1]);
                b.conj() * a - 0.5 * a.norm_sqr() - 0.5 * b.norm_sqr()
                    + minus_i * tau / hbar * h_q.eval(a, b.conj())
            })
            .sum()
    }
}
