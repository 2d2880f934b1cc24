use nalgebra::DMatrix;

use super::grid::{GridSpec, PhaseSpaceGrid};
use crate::coherent::{fock_coherent, FockPropagator, PropagatorOptions};
use crate::error::{Error, Result};
use crate::operator_algebra::{OperatorPoly, ScaleContext};

/// `<z_x| exp(-i H T / hbar) |z_x>` on the grid, `z_x = (q/b + i p/c)/sqrt2`.
pub fn husimi_u_grid(
    h: &OperatorPoly,
    t: f64,
    spec: &GridSpec,
    ctx: &ScaleContext,
    opts: &PropagatorOptions,
) -> Result<PhaseSpaceGrid> {
    spec.validate()?;
    let corners = [
        (spec.q_min, spec.p_min),
        (spec.q_min, spec.p_max),
        (spec.q_max, spec.p_min),
        (spec.q_max, spec.p_max),
    ];
    for (q, p) in corners {
        fock_coherent(ctx.z_of(q, p), opts.cutoff, opts.tail_threshold)?;
    }
    let coarse = FockPropagator::new(h, opts.cutoff)?;
    let fine = FockPropagator::new(h, 2 * opts.cutoff)?;
    let (qs, ps) = (spec.q_values(), spec.p_values());
    let zs: Vec<_> = qs.iter().flat_map(|&q| ps.iter().map(move |&p| ctx.z_of(q, p))).collect();
    let grid = |prop: &FockPropagator| {
        let vals = prop.diagonal_elements(&zs, t);
        PhaseSpaceGrid {
            spec: *spec,
            values: DMatrix::from_fn(spec.nq, spec.np, |i, j| vals[i * spec.np + j]),
        }
    };
    let a = grid(&coarse);
    let b = grid(&fine);
    let delta = a.max_abs_diff(&b);
    if delta > opts.doubling_tol {
        return Err(Error::NonConverged {
            delta,
            tol: opts.doubling_tol,
        });
    }
    Ok(b)
}
