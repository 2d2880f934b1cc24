//! Complexified classical trajectories and the semiclassical propagators
//! built from them.
//!
//! Trajectories solve `i hbar u' = dH/dv`, `i hbar v' = -dH/du` with
//! `u(0) = z'` and `v(T) = conj(z'')`, found by Newton shooting on `v(0)`.

mod propagator;
mod trajectory;

pub use propagator::{
    semiclassical_k, SemiclassicalOptions, SemiclassicalResult, TrajectoryContribution,
};
pub use trajectory::{solve_all, solve_bvp, ComplexTrajectory, Guess, SolverOptions};
