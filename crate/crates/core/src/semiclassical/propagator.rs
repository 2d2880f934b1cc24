use num_complex::Complex64;
use serde::Serialize;

use super::trajectory::{solve_all, ComplexTrajectory, Guess, SolverOptions};
use crate::error::{Error, Result};
use crate::operator_algebra::OperatorPoly;
use crate::Form;

#[derive(Debug, Clone, PartialEq)]
pub struct SemiclassicalOptions {
    pub solver: SolverOptions,
    /// Shooting starts; duplicates (by `v(0)`) are merged.
    pub guesses: Vec<Guess>,
    /// Adds `+I` (Q) or `-I` (P) to the action. Ignored for W.
    pub include_correction: bool,
}

impl Default for SemiclassicalOptions {
    fn default() -> Self {
        Self {
            solver: SolverOptions::default(),
            guesses: vec![Guess::Auto],
            include_correction: true,
        }
    }
}

/// One stationary trajectory and its term in the propagator sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryContribution {
    pub v0: Complex64,
    pub action: Complex64,
    pub correction: Complex64,
    pub d2s: Complex64,
    pub delta: Complex64,
    pub prefactor: Complex64,
    pub residual: f64,
    pub iterations: usize,
    pub steps: usize,
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemiclassicalResult {
    pub value: Complex64,
    pub contributions: Vec<TrajectoryContribution>,
    pub trajectories: Vec<ComplexTrajectory>,
}

/// Sum over found stationary trajectories of
/// `Delta^{-1/2} exp{(i/hbar)(S + sigma I) - (|z'|^2 + |z''|^2)/2}` with
/// `sigma = +1, -1, 0` for Q, P, W.
pub fn semiclassical_k(
    form: Form,
    h: &OperatorPoly,
    z_start: Complex64,
    z_end: Complex64,
    t: f64,
    opts: &SemiclassicalOptions,
) -> Result<SemiclassicalResult> {
    let hbar = h.hbar();
    let (sym, sigma) = match form {
        Form::Q => (h.q_symbol(), 1.0),
        Form::P => (h.p_symbol(), -1.0),
        Form::W => (h.weyl_symbol(), 0.0),
    };
    let sigma = if opts.include_correction { sigma } else { 0.0 };
    let mut trajectories = solve_all(&sym, hbar, z_start, z_end.conj(), t, &opts.guesses, &opts.solver);
    if trajectories.is_empty() {
        return Err(Error::NoConvergence {
            residual: f64::INFINITY,
            iterations: opts.solver.max_iter,
        });
    }
    let norms = -0.5 * (z_start.norm_sqr() + z_end.norm_sqr());
    let i_over = Complex64::new(0.0, 1.0 / hbar);
    let mut value = Complex64::new(0.0, 0.0);
    let mut contributions = Vec::with_capacity(trajectories.len());
    for tr in trajectories.iter_mut() {
        tr.form = Some(form);
        let d2s = tr.d2s()?;
        if 2.0 * tr.delta().norm() < 1e-6 {
            log::warn!("trajectory with v0 = {} is close to a caustic", tr.v0());
        }
        let action = tr.action();
        let correction = tr.correction();
        let prefactor = tr.prefactor();
        let term = prefactor * (i_over * (action + sigma * correction) + norms).exp();
        value += term;
        contributions.push(TrajectoryContribution {
            v0: tr.v0(),
            action,
            correction,
            d2s,
            delta: tr.delta(),
            prefactor,
            residual: tr.residual,
            iterations: tr.iterations,
            steps: tr.steps(),
            value: term,
        });
    }
    Ok(SemiclassicalResult {
        value,
        contributions,
        trajectories,
    })
}
