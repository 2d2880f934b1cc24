//! Coherent-state path integrals for one degree of freedom.
//!
//! The crate covers ordering symbols of ladder-operator polynomials, a
//! truncated Fock-space reference propagator, the discrete Q, P and Weyl
//! path integrals, complex-trajectory semiclassical propagators with their
//! fluctuation determinants, and the Weyl symbol of the evolution operator.

pub mod coherent;
pub mod discrete;
pub mod error;
pub mod fluctuation;
pub mod models;
pub mod operator_algebra;
pub mod semiclassical;
pub mod weyl_evolution;

pub use error::{Error, ErrorKind, Result};
pub use num_complex::Complex64;

/// Which ordering symbol drives a propagator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Form {
    Q,
    P,
    W,
}

impl Form {
    pub const ALL: [Form; 3] = [Form::Q, Form::P, Form::W];

    pub fn label(self) -> &'static str {
        match self {
            Form::Q => "Q",
            Form::P => "P",
            Form::W => "W",
        }
    }
}

impl std::fmt::Display for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}
