use num_complex::Complex64;
use rayon::prelude::*;

use crate::coherent::{overlap, weyl_element_with, GaussHermite};
use crate::error::{Error, Result};
use crate::operator_algebra::{OperatorPoly, SymbolPoly};
use crate::Form;

/// Truncation and resolution of the brute-force discrete integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureGrid {
    /// Lattice spacing in each `z` plane.
    pub spacing: f64,
    /// Disc radius around the segment from `z'` to `z''`, in units of `|z|`.
    pub radius: f64,
    /// Gauss–Hermite nodes per axis for each Weyl-form kernel.
    pub gh_nodes: usize,
    /// Spacing multiplier of the refinement pass.
    pub refine: f64,
    /// Largest accepted change under refinement.
    pub tol: f64,
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self {
            spacing: 0.35,
            radius: 6.0 * std::f64::consts::FRAC_1_SQRT_2,
            gh_nodes: 24,
            refine: 0.75,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    /// Value on the refined grid.
    pub value: Complex64,
    /// Value on the base grid.
    pub coarse: Complex64,
    pub delta: f64,
    /// Lattice points per plane on the refined grid.
    pub points: usize,
}

/// Brute-force evaluation of the time-sliced propagator of `form` with `N`
/// slices; the integration planes are chained as transfer-matrix products.
pub fn quadrature_k(
    form: Form,
    h: &OperatorPoly,
    z_start: Complex64,
    z_end: Complex64,
    t: f64,
    n: usize,
    grid: &QuadratureGrid,
) -> Result<QuadratureResult> {
    if n > 3 {
        return Err(Error::DimensionTooLarge(n));
    }
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    if !(grid.spacing > 0.0 && grid.radius > 0.0 && grid.refine > 0.0 && grid.refine < 1.0) {
        return Err(Error::InvalidInput("grid spacing, radius and refine must be positive, refine < 1".into()));
    }
    let coarse = chain(form, h, z_start, z_end, t, n, grid.spacing, grid.radius, grid.gh_nodes).0;
    let (value, points) = chain(
        form,
        h,
        z_start,
        z_end,
        t,
        n,
        grid.spacing * grid.refine,
        grid.radius,
        grid.gh_nodes + 8,
    );
    let delta = (value - coarse).norm();
    if delta > grid.tol {
        return Err(Error::QuadratureNotConverged { delta, tol: grid.tol });
    }
    Ok(QuadratureResult {
        value,
        coarse,
        delta,
        points,
    })
}

fn plane(z_start: Complex64, z_end: Complex64, spacing: f64, radius: f64) -> Vec<Complex64> {
    let lo_x = z_start.re.min(z_end.re) - radius;
    let hi_x = z_start.re.max(z_end.re) + radius;
    let lo_y = z_start.im.min(z_end.im) - radius;
    let hi_y = z_start.im.max(z_end.im) + radius;
    let (i0, i1) = ((lo_x / spacing).floor() as i64, (hi_x / spacing).ceil() as i64);
    let (j0, j1) = ((lo_y / spacing).floor() as i64, (hi_y / spacing).ceil() as i64);
    let mut pts = Vec::new();
    for i in i0..=i1 {
        for j in j0..=j1 {
            let z = Complex64::new(i as f64 * spacing, j as f64 * spacing);
            if segment_distance(z, z_start, z_end) <= radius {
                pts.push(z);
            }
        }
    }
    pts
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let s = ((z - a).re * d.re + (z - a).im * d.im) / len2;
    (z - (a + d * s.clamp(0.0, 1.0))).norm()
}

#[allow(clippy::too_many_arguments)]
fn chain(
    form: Form,
    h: &OperatorPoly,
    z_start: Complex64,
    z_end: Complex64,
    t: f64,
    n: usize,
    spacing: f64,
    radius: f64,
    gh_nodes: usize,
) -> (Complex64, usize) {
    let pts = plane(z_start, z_end, spacing, radius);
    let weight = spacing * spacing / std::f64::consts::PI;
    let tau = t / n as f64;
    let phase = Complex64::new(0.0, -tau / h.hbar());
    let value = match form {
        Form::Q => {
            let hq = h.q_symbol();
            let step = |a: Complex64, b: Complex64| {
                (a.conj() * b - 0.5 * a.norm_sqr() - 0.5 * b.norm_sqr() + phase * hq.eval(b, a.conj())).exp()
            };
            transfer(&pts, n - 1, weight, z_start, z_end, &step, None)
        }
        Form::P => {
            let hp = h.p_symbol();
            let factors: Vec<Complex64> = pts.iter().map(|&g| (phase * hp.eval_z(g)).exp()).collect();
            let step = |a: Complex64, b: Complex64| overlap(a, b);
            transfer(&pts, n, weight, z_start, z_end, &step, Some(&factors))
        }
        Form::W => {
            let hw: SymbolPoly = h.weyl_symbol();
            let gh = GaussHermite::new(gh_nodes);
            let step = |a: Complex64, b: Complex64| {
                weyl_element_with(|w| (phase * hw.eval_z(w)).exp(), b, a, &gh)
            };
            transfer(&pts, n - 1, weight, z_start, z_end, &step, None)
        }
    };
    (value, pts.len())
}

/// `<end| step .. step |start>` with `planes` intermediate integrations.
/// `step(a, b)` is the kernel from `b` to `a`; `factors` multiply each plane.
fn transfer(
    pts: &[Complex64],
    planes: usize,
    weight: f64,
    z_start: Complex64,
    z_end: Complex64,
    step: &(dyn Fn(Complex64, Complex64) -> Complex64 + Sync),
    factors: Option<&[Complex64]>,
) -> Complex64 {
    if planes == 0 {
        return step(z_end, z_start);
    }
    let fac = |g: usize| factors.map_or(Complex64::new(1.0, 0.0), |f| f[g]);
    let mut v: Vec<Complex64> = pts
        .par_iter()
        .enumerate()
        .map(|(g, &p)| fac(g) * step(p, z_start) * weight)
        .collect();
    if planes > 1 {
        // dense kernel between interior planes, reused for every middle step
        let kernel: Vec<Vec<Complex64>> = pts
            .par_iter()
            .map(|&a| pts.iter().map(|&b| step(a, b)).collect())
            .collect();
        for _ in 1..planes {
            v = kernel
                .par_iter()
                .enumerate()
                .map(|(a, row)| {
                    let s: Complex64 = row.iter().zip(&v).map(|(k, x)| k * x).sum();
                    fac(a) * s * weight
                })
                .collect();
        }
    }
    pts.iter().zip(&v).map(|(&p, x)| step(z_end, p) * x).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn too_many_slices() {
        let h = OperatorPoly::identity(1.0);
        let r = quadrature_k(Form::Q, &h, Default::default(), Default::default(), 1.0, 4, &Default::default());
        assert!(matches!(r, Err(Error::DimensionTooLarge(4))));
    }

    #[test]
    fn free_evolution_is_overlap() {
        let h = OperatorPoly::zero(1.0);
        let z1 = Complex64::new(0.3, 0.2);
        let z2 = Complex64::new(-0.1, 0.4);
        let o = overlap(z2, z1);
        for form in Form::ALL {
            let k = quadrature_k(form, &h, z1, z2, 0.5, 2, &Default::default()).unwrap();
            assert!((k.value - o).norm() < 1e-7, "{form}: {}", (k.value - o).norm());
        }
    }
}
