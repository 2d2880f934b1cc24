//! Ladder-operator polynomials and their Q, P and Weyl symbols.
//!
//! Operators are stored normal ordered. Symbols are polynomials in two
//! independent complex arguments `(u, v)`, with `u` standing for `a` and `v`
//! for `a†`; on the real phase space `v = conj(u) = conj(z)`.

mod hamiltonian;
mod operator;
mod poly;
mod scale;
mod symbol;

pub use hamiltonian::{HamiltonianSpec, Ordering, TermSpec};
pub use operator::{normalize, parse_word, Ladder, OperatorPoly};
pub use poly::Terms;
pub use scale::ScaleContext;
pub use symbol::{eval2, QpPoly, SymbolPoly, SymbolValue};

/// Operator whose Weyl symbol is the given `(q, p)` polynomial.
pub fn weyl_quantize(qp: &QpPoly, ctx: &ScaleContext) -> OperatorPoly {
    OperatorPoly::from_weyl_symbol(&qp.to_symbol(ctx), ctx.hbar)
}

pub fn q_symbol(op: &OperatorPoly) -> SymbolPoly {
    op.q_symbol()
}

pub fn p_symbol(op: &OperatorPoly) -> SymbolPoly {
    op.p_symbol()
}

pub fn weyl_symbol(op: &OperatorPoly) -> SymbolPoly {
    op.weyl_symbol()
}
