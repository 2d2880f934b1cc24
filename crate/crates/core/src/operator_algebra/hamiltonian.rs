use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::operator::OperatorPoly;
use super::poly::Terms;
use super::scale::ScaleContext;
use super::symbol::QpPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ordering {
    /// `(m, n)` indexes `a†^m a^n`.
    Normal,
    /// `(m, n)` indexes the Weyl-ordered monomial `q^m p^n`.
    WeylQp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub m: u32,
    pub n: u32,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// Hamiltonian file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSpec {
    pub hbar: f64,
    pub mass: f64,
    pub omega: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width_b: Option<f64>,
    pub ordering: Ordering,
    pub terms: Vec<TermSpec>,
}

impl HamiltonianSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn context(&self) -> Result<ScaleContext> {
        match self.width_b {
            Some(b) => ScaleContext::with_width(self.hbar, self.mass, self.omega, b),
            None => ScaleContext::new(self.hbar, self.mass, self.omega),
        }
    }

    /// Builds the operator and its scale context.
    pub fn build(&self) -> Result<(OperatorPoly, ScaleContext)> {
        let ctx = self.context()?;
        let mut terms = Terms::new();
        for (i, t) in self.terms.iter().enumerate() {
            if !(t.re.is_finite() && t.im.is_finite()) {
                return Err(Error::Parse(format!("terms[{i}]: coefficient is not finite")));
            }
            *terms.entry((t.m, t.n)).or_default() += Complex64::new(t.re, t.im);
        }
        let op = match self.ordering {
            Ordering::Normal => OperatorPoly::from_terms(terms, ctx.hbar),
            Ordering::WeylQp => super::weyl_quantize(&QpPoly::from_terms(terms), &ctx),
        };
        Ok((op, ctx))
    }
}
