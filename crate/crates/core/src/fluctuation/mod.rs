//! Second variation of the Weyl-form exponent around a stationary path.
//!
//! The discrete fluctuation matrix, its reduction to block-tridiagonal form,
//! the two-term determinant recursion and its continuum ODE.

mod continuum;
mod matrix;

pub use continuum::{det_continuum, ContinuumOptions};
pub use matrix::{build_matrix, det_dense, det_recursive, reduce_block_tridiagonal, second_variation};

use num_complex::Complex64;

use crate::discrete::DiscreteWPath;
use crate::error::{Error, Result};
use crate::operator_algebra::SymbolPoly;

/// Second derivatives of `H_W` at each midpoint: `A = H_uu`, `B = H_vv`,
/// `C = H_uv`, with `u <-> w_k` and `v <-> wbar_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationCoeffs {
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub c: Vec<Complex64>,
    pub tau: f64,
    pub hbar: f64,
}

impl FluctuationCoeffs {
    pub fn new(
        a: Vec<Complex64>,
        b: Vec<Complex64>,
        c: Vec<Complex64>,
        tau: f64,
        hbar: f64,
    ) -> Result<Self> {
        if a.is_empty() || a.len() != b.len() || a.len() != c.len() {
            return Err(Error::InvalidInput(
                "coefficient arrays must be non-empty and of equal length".into(),
            ));
        }
        if !(hbar > 0.0) {
            return Err(Error::InvalidInput("hbar must be positive".into()));
        }
        Ok(Self { a, b, c, tau, hbar })
    }

    pub fn from_path(path: &DiscreteWPath, h_w: &SymbolPoly, hbar: f64) -> Result<Self> {
        let mut a = Vec::with_capacity(path.n());
        let mut b = Vec::with_capacity(path.n());
        let mut c = Vec::with_capacity(path.n());
        for (&w, &wb) in path.w().iter().zip(path.wbar()) {
            let e = h_w.eval2(w, wb, 2);
            a.push(e.duu);
            b.push(e.dvv);
            c.push(e.duv);
        }
        Self::new(a, b, c, path.tau(), hbar)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }
}

/// `Delta_N` and the auxiliary `Gamma_N` of the determinant recursion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeterminantPair {
    pub delta: Complex64,
    pub gamma: Complex64,
}
