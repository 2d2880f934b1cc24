//! Weyl symbol of the evolution operator, the diagonal coherent-state
//! propagator, the Gaussian smoothing that links them, and the
//! chord/area identity of the midpoint path.

mod area;
mod grid;
mod husimi;
mod smoothing;
mod weyl_u;

pub use area::area_identity;
pub use grid::{write_grid_csv, GridSpec, PhaseSpaceGrid};
pub use husimi::husimi_u_grid;
pub use smoothing::{gaussian_smooth, smoothing_check, smoothing_check_region};
pub use weyl_u::{hermite_functions, weyl_u_grid, WeylUOptions};
