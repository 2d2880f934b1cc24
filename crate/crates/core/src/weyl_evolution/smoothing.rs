use nalgebra::DMatrix;
use num_complex::Complex64;

use super::grid::PhaseSpaceGrid;
use crate::error::{Error, Result};
use crate::operator_algebra::ScaleContext;

/// Separable discrete convolution with the normalized Gaussian of variances
/// `(b^2/2, c^2/2)`. Values beyond the grid are treated as zero.
pub fn gaussian_smooth(grid: &PhaseSpaceGrid, ctx: &ScaleContext) -> PhaseSpaceGrid {
    let spec = grid.spec;
    let sq = ctx.b * std::f64::consts::FRAC_1_SQRT_2;
    let sp = ctx.c * std::f64::consts::FRAC_1_SQRT_2;
    let kq = kernel(spec.nq, spec.dq(), sq);
    let kp = kernel(spec.np, spec.dp(), sp);
    let along_q = &kq * &grid.values;
    let values = along_q * kp.transpose();
    PhaseSpaceGrid { spec, values }
}

fn kernel(n: usize, h: f64, sigma: f64) -> DMatrix<Complex64> {
    let norm = h / ((2.0 * std::f64::consts::PI).sqrt() * sigma);
    DMatrix::from_fn(n, n, |i, j| {
        let d = (i as f64 - j as f64) * h;
        Complex64::new(norm * (-0.5 * d * d / (sigma * sigma)).exp(), 0.0)
    })
}

fn check_geometry(weyl: &PhaseSpaceGrid, husimi: &PhaseSpaceGrid) -> Result<()> {
    if weyl.spec != husimi.spec {
        return Err(Error::InvalidInput("grids do not share geometry".into()));
    }
    Ok(())
}

/// Largest `|smooth(U_W) - K|` over points at least four kernel widths from
/// every edge of the grid.
pub fn smoothing_check(weyl: &PhaseSpaceGrid, husimi: &PhaseSpaceGrid, ctx: &ScaleContext) -> Result<f64> {
    check_geometry(weyl, husimi)?;
    let s = &weyl.spec;
    let mq = 4.0 * ctx.b * std::f64::consts::FRAC_1_SQRT_2;
    let mp = 4.0 * ctx.c * std::f64::consts::FRAC_1_SQRT_2;
    let q_half = 0.5 * (s.q_max - s.q_min);
    let p_half = 0.5 * (s.p_max - s.p_min);
    if q_half <= mq || p_half <= mp {
        return Err(Error::MarginTooSmall {
            margin: (q_half / mq).min(p_half / mp) * 4.0,
            required: 4.0,
        });
    }
    deviation(weyl, husimi, ctx, |q, p| {
        q >= s.q_min + mq && q <= s.q_max - mq && p >= s.p_min + mp && p <= s.p_max - mp
    })
}

/// As [`smoothing_check`], restricted to `|q| <= q_max`, `|p| <= p_max`;
/// the region must itself satisfy the four-width margin.
pub fn smoothing_check_region(
    weyl: &PhaseSpaceGrid,
    husimi: &PhaseSpaceGrid,
    ctx: &ScaleContext,
    q_max: f64,
    p_max: f64,
) -> Result<f64> {
    check_geometry(weyl, husimi)?;
    let s = &weyl.spec;
    let mq = 4.0 * ctx.b * std::f64::consts::FRAC_1_SQRT_2;
    let mp = 4.0 * ctx.c * std::f64::consts::FRAC_1_SQRT_2;
    let margin_q = (s.q_max - q_max).min(-q_max - s.q_min);
    let margin_p = (s.p_max - p_max).min(-p_max - s.p_min);
    if margin_q < mq || margin_p < mp {
        return Err(Error::MarginTooSmall {
            margin: (margin_q / mq).min(margin_p / mp) * 4.0,
            required: 4.0,
        });
    }
    deviation(weyl, husimi, ctx, |q, p| q.abs() <= q_max && p.abs() <= p_max)
}

fn deviation(
    weyl: &PhaseSpaceGrid,
    husimi: &PhaseSpaceGrid,
    ctx: &ScaleContext,
    inside: impl Fn(f64, f64) -> bool,
) -> Result<f64> {
    let smooth = gaussian_smooth(weyl, ctx);
    let (q, p) = (weyl.q_values(), weyl.p_values());
    let mut worst: Option<f64> = None;
    for (i, &qi) in q.iter().enumerate() {
        for (j, &pj) in p.iter().enumerate() {
            if inside(qi, pj) {
                let d = (smooth.values[(i, j)] - husimi.values[(i, j)]).norm();
                worst = Some(worst.map_or(d, |w| w.max(d)));
            }
        }
    }
    worst.ok_or(Error::MarginTooSmall {
        margin: 0.0,
        required: 4.0,
    })
}
