use std::fmt;

use num_complex::Complex64;

use super::poly::{self, Terms};
use super::scale::ScaleContext;

/// Polynomial `sum c_{mn} v^m u^n` in two independent complex arguments.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SymbolPoly {
    terms: Terms,
}

/// Polynomial `sum c_{jk} q^j p^k` in phase-space coordinates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QpPoly {
    terms: Terms,
}

/// Value of a symbol and its partial derivatives at one point.
///
/// Fields that were not requested are zero.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SymbolValue {
    pub value: Complex64,
    pub du: Complex64,
    pub dv: Complex64,
    pub duu: Complex64,
    pub dvv: Complex64,
    pub duv: Complex64,
}

/// Evaluates `sym` at `(u, v)` with derivatives up to `order` (0, 1 or 2).
pub fn eval2(sym: &SymbolPoly, u: Complex64, v: Complex64, order: u8) -> SymbolValue {
    sym.eval2(u, v, order)
}

impl SymbolPoly {
    pub fn from_terms(terms: Terms) -> Self {
        let mut terms = terms;
        poly::prune(&mut terms);
        Self { terms }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    /// Coefficient of `v^m u^n`.
    pub fn coeff(&self, m: u32, n: u32) -> Complex64 {
        self.terms.get(&(m, n)).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(m, n)| m + n).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&k, &c) in &other.terms {
            poly::add_term(&mut terms, k, c);
        }
        Self::from_terms(terms)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, &c)| (k, c * s)).collect())
    }

    /// `exp(s d_u d_v)` applied term by term.
    pub fn heat(&self, s: f64) -> Self {
        Self::from_terms(poly::heat(&self.terms, s))
    }

    /// Terms of total degree at most `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        Self::from_terms(super::operator::truncate_degree(&self.terms, max_degree))
    }

    pub fn chop(&self, tol: f64) -> Self {
        Self::from_terms(poly::chop(&self.terms, tol))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        poly::max_abs_diff(&self.terms, &other.terms)
    }

    pub fn eval(&self, u: Complex64, v: Complex64) -> Complex64 {
        self.eval2(u, v, 0).value
    }

    /// Value on the real section `v = conj(z)`.
    pub fn eval_z(&self, z: Complex64) -> Complex64 {
        self.eval(z, z.conj())
    }

    pub fn eval2(&self, u: Complex64, v: Complex64, order: u8) -> SymbolValue {
        let max_m = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let max_n = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let vp = powers(v, max_m);
        let up = powers(u, max_n);
        let pw = |p: &[Complex64], k: i64| -> Complex64 {
            if k < 0 {
                Complex64::new(0.0, 0.0)
            } else {
                p[k as usize]
            }
        };
        let mut out = SymbolValue::default();
        for (&(m, n), &c) in &self.terms {
            let (mi, ni) = (m as i64, n as i64);
            let (mf, nf) = (m as f64, n as f64);
            out.value += c * vp[m as usize] * up[n as usize];
            if order >= 1 {
                out.du += c * nf * vp[m as usize] * pw(&up, ni - 1);
                out.dv += c * mf * pw(&vp, mi - 1) * up[n as usize];
            }
            if order >= 2 {
                out.duu += c * nf * (nf - 1.0) * vp[m as usize] * pw(&up, ni - 2);
                out.dvv += c * mf * (mf - 1.0) * pw(&vp, mi - 2) * up[n as usize];
                out.duv += c * mf * nf * pw(&vp, mi - 1) * pw(&up, ni - 1);
            }
        }
        out
    }

    /// Rewrites the symbol in `(q, p)` using `u = (q/b + i p/c)/sqrt2`.
    pub fn to_qp(&self, ctx: &ScaleContext) -> QpPoly {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut u = Terms::new();
        u.insert((1, 0), Complex64::new(s / ctx.b, 0.0));
        u.insert((0, 1), Complex64::new(0.0, s / ctx.c));
        let mut v = Terms::new();
        v.insert((1, 0), Complex64::new(s / ctx.b, 0.0));
        v.insert((0, 1), Complex64::new(0.0, -s / ctx.c));
        // keys are (power of v, power of u)
        QpPoly::from_terms(poly::substitute(&self.terms, &v, &u))
    }
}

impl QpPoly {
    pub fn from_terms(terms: Terms) -> Self {
        let mut terms = terms;
        poly::prune(&mut terms);
        Self { terms }
    }

    /// Builds from real coefficients of `q^j p^k`.
    pub fn from_real(coeffs: &[((u32, u32), f64)]) -> Self {
        let mut terms = Terms::new();
        for &(k, c) in coeffs {
            poly::add_term(&mut terms, k, Complex64::new(c, 0.0));
        }
        Self::from_terms(terms)
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    /// Coefficient of `q^j p^k`.
    pub fn coeff(&self, j: u32, k: u32) -> Complex64 {
        self.terms.get(&(j, k)).copied().unwrap_or_default()
    }

    pub fn eval(&self, q: f64, p: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(j, k), &c)| c * q.powi(j as i32) * p.powi(k as i32))
            .sum()
    }

    pub fn chop(&self, tol: f64) -> Self {
        Self::from_terms(poly::chop(&self.terms, tol))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        poly::max_abs_diff(&self.terms, &other.terms)
    }

    /// Rewrites in `(u, v)` using `q = b(u+v)/sqrt2`, `p = c(u-v)/(i sqrt2)`.
    pub fn to_symbol(&self, ctx: &ScaleContext) -> SymbolPoly {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut q = Terms::new();
        q.insert((1, 0), Complex64::new(s * ctx.b, 0.0));
        q.insert((0, 1), Complex64::new(s * ctx.b, 0.0));
        let mut p = Terms::new();
        p.insert((1, 0), Complex64::new(0.0, s * ctx.c));
        p.insert((0, 1), Complex64::new(0.0, -s * ctx.c));
        SymbolPoly::from_terms(poly::substitute(&self.terms, &q, &p))
    }
}

fn powers(x: Complex64, max: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=max {
        out.push(acc);
        acc *= x;
    }
    out
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &Terms,
    names: (&str, &str),
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (&(m, n), c) in terms {
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        write!(f, "({:+e}{:+e}i)", c.re, c.im)?;
        if m > 0 {
            write!(f, " {}^{m}", names.0)?;
        }
        if n > 0 {
            write!(f, " {}^{n}", names.1)?;
        }
    }
    Ok(())
}

impl fmt::Display for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, ("v", "u"))
    }
}

impl fmt::Display for QpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, ("q", "p"))
    }
}
