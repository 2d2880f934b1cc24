//! Discrete Q, P and Weyl path integrals.
//!
//! The Weyl form is written in midpoint variables `w_1..w_N` (N even) whose
//! conjugate partners `wbar_k` are stored separately so that the exponent can
//! be continued off the real section. Closed forms for the harmonic
//! oscillator and a brute-force evaluation at N <= 3 are provided.

mod exponent;
mod harmonic;
mod path;
mod quadrature;
mod table;

pub use exponent::{phi_gradient, phi_n, phi_n_alt, psi_c, stationarity_residual, PsiC};
pub use harmonic::{
    harmonic_discrete_k, harmonic_exact, mu_coefficients, stationary_path_harmonic, MuCoefficients,
};
pub use path::{DiscreteWPath, DiscreteZPath};
pub use quadrature::{quadrature_k, QuadratureGrid, QuadratureResult};
pub use table::{convergence_table, write_convergence_csv, ConvergenceRow};
