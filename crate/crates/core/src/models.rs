//! Reference Hamiltonians.

use num_complex::Complex64;

use crate::operator_algebra::{weyl_quantize, OperatorPoly, QpPoly, ScaleContext};

/// `hbar omega (a† a + 1/2)`.
pub fn harmonic(ctx: &ScaleContext) -> OperatorPoly {
    let e = ctx.hbar * ctx.omega;
    OperatorPoly::monomial(1, 1, ctx.hbar)
        .scale(Complex64::new(e, 0.0))
        .add(&OperatorPoly::identity(ctx.hbar).scale(Complex64::new(0.5 * e, 0.0)))
}

/// Classical `p^2/2m + m omega^2 q^2/2 + lambda q^4` as a `(q, p)` polynomial.
pub fn quartic_classical(lambda: f64, ctx: &ScaleContext) -> QpPoly {
    QpPoly::from_real(&[
        ((0, 2), 0.5 / ctx.mass),
        ((2, 0), 0.5 * ctx.mass * ctx.omega * ctx.omega),
        ((4, 0), lambda),
    ])
}

/// Weyl quantization of [`quartic_classical`].
pub fn quartic(lambda: f64, ctx: &ScaleContext) -> OperatorPoly {
    weyl_quantize(&quartic_classical(lambda, ctx), ctx)
}
