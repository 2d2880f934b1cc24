//! Coherent states, the truncated Fock-space reference propagator, and the
//! displacement and Weyl-basis matrix elements.

mod displacement;
mod fock;
mod gauss_hermite;
mod states;

pub use displacement::{displacement_element, weyl_element, weyl_element_with, WeylElementOptions};
pub use fock::{exact_propagator, operator_matrix, FockPropagator, PropagatorOptions};
pub use gauss_hermite::GaussHermite;
pub use states::{fock_coherent, overlap, CoherentPoint, FockVector, PhasePoint};
