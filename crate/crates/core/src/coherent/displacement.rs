use num_complex::Complex64;

use super::gauss_hermite::GaussHermite;
use super::states::{overlap, PhasePoint};
use crate::error::{Error, Result};
use crate::operator_algebra::{ScaleContext, SymbolPoly};

/// `<z2| T_xi |z1>` for the phase-space translation by `xi`.
pub fn displacement_element(
    xi: PhasePoint,
    z1: Complex64,
    z2: Complex64,
    ctx: &ScaleContext,
) -> Complex64 {
    let z = ctx.z_of(xi.q, xi.p);
    (z * z2.conj() - z.conj() * z1 - 0.5 * z.norm_sqr()).exp() * overlap(z2, z1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylElementOptions {
    /// Gauss–Hermite nodes per axis.
    pub nodes: usize,
    /// Largest accepted change when the node count is doubled.
    pub tol: f64,
}

impl Default for WeylElementOptions {
    fn default() -> Self {
        Self {
            nodes: 64,
            tol: 1e-10,
        }
    }
}

/// `<z2| A |z1>` from the Weyl symbol `A(w, conj w)` by integration over the
/// midpoint variable `w`.
pub fn weyl_element(
    a_w: &SymbolPoly,
    z1: Complex64,
    z2: Complex64,
    opts: &WeylElementOptions,
) -> Result<Complex64> {
    let f = |w: Complex64| a_w.eval_z(w);
    let coarse = weyl_element_with(f, z1, z2, &GaussHermite::new(opts.nodes));
    let fine = weyl_element_with(f, z1, z2, &GaussHermite::new(2 * opts.nodes));
    let delta = (fine - coarse).norm();
    if delta > opts.tol {
        return Err(Error::QuadratureNotConverged {
            delta,
            tol: opts.tol,
        });
    }
    Ok(fine)
}

/// Single tensor Gauss–Hermite evaluation of the midpoint integral for an
/// arbitrary symbol `a(w)` on the real section.
///
/// The Gaussian `exp(-2|w|^2 + 2 conj(z2) w + 2 z1 conj(w))` is centred at
/// `(z1 + z2)/2`; what remains after completing the square is a pure phase.
pub fn weyl_element_with(
    a: impl Fn(Complex64) -> Complex64,
    z1: Complex64,
    z2: Complex64,
    gh: &GaussHermite,
) -> Complex64 {
    let w0 = 0.5 * (z1 + z2);
    let dz = z1 - z2;
    let constant = 2.0 * w0.norm_sqr() - 0.5 * z1.norm_sqr() - 0.5 * z2.norm_sqr() - z2.conj() * z1;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut acc = Complex64::new(0.0, 0.0);
    for (&x, &wx) in gh.nodes.iter().zip(&gh.weights) {
        let mut row = Complex64::new(0.0, 0.0);
        for (&y, &wy) in gh.nodes.iter().zip(&gh.weights) {
            let w = w0 + Complex64::new(s * x, s * y);
            let phase = w.conj() * dz - w * dz.conj();
            row += wy * a(w) * (phase + constant).exp();
        }
        acc += wx * row;
    }
    acc / std::f64::consts::PI
}
