use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::poly::{self, Terms};
use super::symbol::SymbolPoly;
use crate::error::{Error, Result};

/// A single ladder operator in an operator word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    /// Annihilation operator `a`.
    A,
    /// Creation operator `a†`.
    Adag,
}

/// Parses a whitespace separated word such as `"a a adag"`.
pub fn parse_word(word: &str) -> Result<Vec<Ladder>> {
    word.split_whitespace()
        .map(|tok| match tok {
            "a" => Ok(Ladder::A),
            "adag" | "a+" | "a†" => Ok(Ladder::Adag),
            other => Err(Error::Parse(format!("unknown ladder symbol `{other}`"))),
        })
        .collect()
}

/// Polynomial in `a`, `a†` stored as `sum c_{mn} a†^m a^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPoly {
    terms: Terms,
    hbar: f64,
}

/// Normal orders a linear combination of ladder words.
pub fn normalize(words: &[(Complex64, Vec<Ladder>)], hbar: f64) -> OperatorPoly {
    let mut out = OperatorPoly::zero(hbar);
    for (c, word) in words {
        let mut acc = OperatorPoly::identity(hbar);
        for l in word {
            let factor = match l {
                Ladder::A => OperatorPoly::monomial(0, 1, hbar),
                Ladder::Adag => OperatorPoly::monomial(1, 0, hbar),
            };
            acc = acc.mul(&factor);
        }
        out = out.add(&acc.scale(*c));
    }
    out
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

impl OperatorPoly {
    pub fn zero(hbar: f64) -> Self {
        Self {
            terms: Terms::new(),
            hbar,
        }
    }

    pub fn identity(hbar: f64) -> Self {
        Self::monomial(0, 0, hbar)
    }

    /// `a†^m a^n`.
    pub fn monomial(m: u32, n: u32, hbar: f64) -> Self {
        let mut terms = Terms::new();
        terms.insert((m, n), Complex64::new(1.0, 0.0));
        Self { terms, hbar }
    }

    pub fn from_terms(terms: Terms, hbar: f64) -> Self {
        let mut terms = terms;
        poly::prune(&mut terms);
        Self { terms, hbar }
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn coeff(&self, m: u32, n: u32) -> Complex64 {
        self.terms.get(&(m, n)).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `m + n` among the stored terms.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(m, n)| m + n).max().unwrap_or(0)
    }

    /// Largest single exponent of `a` or `a†`.
    pub fn max_power(&self) -> u32 {
        self.terms.keys().map(|&(m, n)| m.max(n)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&k, &c) in &other.terms {
            poly::add_term(&mut terms, k, c);
        }
        Self::from_terms(terms, self.hbar)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let terms = self.terms.iter().map(|(&k, &c)| (k, c * s)).collect();
        Self::from_terms(terms, self.hbar)
    }

    /// Operator product, returned in normal order.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Terms::new();
        for (&(m, n), &x) in &self.terms {
            for (&(p, q), &y) in &other.terms {
                for k in 0..=n.min(p) {
                    let w = binomial(n, k) * binomial(p, k) * factorial(k);
                    poly::add_term(&mut terms, (m + p - k, n + q - k), x * y * w);
                }
            }
        }
        Self::from_terms(terms, self.hbar)
    }

    pub fn adjoint(&self) -> Self {
        let terms = self.terms.iter().map(|(&(m, n), &c)| ((n, m), c.conj())).collect();
        Self::from_terms(terms, self.hbar)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        poly::max_abs_diff(&self.terms, &self.adjoint().terms) <= tol
    }

    /// Drops coefficients with modulus at most `tol`.
    pub fn chop(&self, tol: f64) -> Self {
        Self::from_terms(poly::chop(&self.terms, tol), self.hbar)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        poly::max_abs_diff(&self.terms, &other.terms)
    }

    /// Q symbol: `a†^m a^n -> v^m u^n`.
    pub fn q_symbol(&self) -> SymbolPoly {
        SymbolPoly::from_terms(self.terms.clone())
    }

    /// P symbol, the antinormal-order coefficients.
    pub fn p_symbol(&self) -> SymbolPoly {
        SymbolPoly::from_terms(poly::heat(&self.terms, -1.0))
    }

    /// Weyl symbol, from the Q symbol by Gaussian de-smoothing.
    pub fn weyl_symbol(&self) -> SymbolPoly {
        SymbolPoly::from_terms(poly::heat(&self.terms, -0.5))
    }

    /// Operator whose Q symbol is `sym`.
    pub fn from_q_symbol(sym: &SymbolPoly, hbar: f64) -> Self {
        Self::from_terms(sym.terms().clone(), hbar)
    }

    /// Operator whose Weyl symbol is `sym`.
    pub fn from_weyl_symbol(sym: &SymbolPoly, hbar: f64) -> Self {
        Self::from_terms(poly::heat(sym.terms(), 0.5), hbar)
    }

    /// Matrix element `<i| op |j>` in the number basis, computed exactly.
    pub fn fock_element(&self, i: usize, j: usize) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(m, n), &c) in &self.terms {
            let (m, n) = (m as usize, n as usize);
            if j < n || j - n + m != i {
                continue;
            }
            let base = j - n;
            let mut f = 1.0;
            for k in base + 1..=j {
                f *= k as f64;
            }
            for k in base + 1..=i {
                f *= k as f64;
            }
            acc += c * f.sqrt();
        }
        acc
    }
}

impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(m, n), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:+e}{:+e}i)", c.re, c.im)?;
            if m > 0 {
                write!(f, " adag^{m}")?;
            }
            if n > 0 {
                write!(f, " a^{n}")?;
            }
        }
        Ok(())
    }
}

/// Groups terms by total degree; used by callers that need the quadratic part.
pub(crate) fn truncate_degree(terms: &Terms, max_degree: u32) -> Terms {
    terms
        .iter()
        .filter(|(&(m, n), _)| m + n <= max_degree)
        .map(|(k, c)| (*k, *c))
        .collect::<BTreeMap<_, _>>()
}
