use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator_algebra::ScaleContext;

/// Uniform rectangular grid in `(q, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub q_min: f64,
    pub q_max: f64,
    pub nq: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub np: usize,
}

impl GridSpec {
    /// `|q| <= half_width b`, `|p| <= half_width c`, `n x n` points.
    pub fn symmetric(ctx: &ScaleContext, half_width: f64, n: usize) -> Self {
        Self {
            q_min: -half_width * ctx.b,
            q_max: half_width * ctx.b,
            nq: n,
            p_min: -half_width * ctx.c,
            p_max: half_width * ctx.c,
            np: n,
        }
    }

    /// 64 x 64 points over `|q| <= 4b`, `|p| <= 4c`.
    pub fn default_for(ctx: &ScaleContext) -> Self {
        Self::symmetric(ctx, 4.0, 64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nq < 2 || self.np < 2 || !(self.q_max > self.q_min) || !(self.p_max > self.p_min) {
            return Err(Error::InvalidInput("grid needs at least 2 points and increasing ranges".into()));
        }
        Ok(())
    }

    pub fn dq(&self) -> f64 {
        (self.q_max - self.q_min) / (self.nq - 1) as f64
    }

    pub fn dp(&self) -> f64 {
        (self.p_max - self.p_min) / (self.np - 1) as f64
    }

    pub fn q_values(&self) -> Vec<f64> {
        (0..self.nq).map(|i| self.q_min + i as f64 * self.dq()).collect()
    }

    pub fn p_values(&self) -> Vec<f64> {
        (0..self.np).map(|j| self.p_min + j as f64 * self.dp()).collect()
    }
}

/// Complex values on a [`GridSpec`]; `values[(i, j)]` sits at `(q_i, p_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceGrid {
    pub spec: GridSpec,
    pub values: DMatrix<Complex64>,
}

impl PhaseSpaceGrid {
    pub fn from_fn(spec: GridSpec, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let (q, p) = (spec.q_values(), spec.p_values());
        Self {
            spec,
            values: DMatrix::from_fn(spec.nq, spec.np, |i, j| f(q[i], p[j])),
        }
    }

    pub fn q_values(&self) -> Vec<f64> {
        self.spec.q_values()
    }

    pub fn p_values(&self) -> Vec<f64> {
        self.spec.p_values()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.values - &other.values).iter().map(|x| x.norm()).fold(0.0, f64::max)
    }
}

/// Rows `q, p, re_U, im_U, re_husimi, im_husimi`.
pub fn write_grid_csv(weyl: &PhaseSpaceGrid, husimi: &PhaseSpaceGrid, mut out: impl Write) -> Result<()> {
    if weyl.spec != husimi.spec {
        return Err(Error::InvalidInput("grids do not share geometry".into()));
    }
    let io = |e: std::io::Error| Error::InvalidInput(format!("write failed: {e}"));
    writeln!(out, "q,p,re_U,im_U,re_husimi,im_husimi").map_err(io)?;
    let (q, p) = (weyl.q_values(), weyl.p_values());
    for (i, &qi) in q.iter().enumerate() {
        for (j, &pj) in p.iter().enumerate() {
            let (u, k) = (weyl.values[(i, j)], husimi.values[(i, j)]);
            writeln!(
                out,
                "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
                qi, pj, u.re, u.im, k.re, k.im
            )
            .map_err(io)?;
        }
    }
    Ok(())
}
