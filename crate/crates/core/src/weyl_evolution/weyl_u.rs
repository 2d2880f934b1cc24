use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::{GridSpec, PhaseSpaceGrid};
use crate::coherent::{fock_coherent, FockPropagator};
use crate::error::{Error, Result};
use crate::operator_algebra::{OperatorPoly, ScaleContext};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylUOptions {
    /// Number-basis cutoff of the spectral decomposition.
    pub cutoff: usize,
    /// Eigenstate `j` is weighted by `erfc((j - center R) / (width R)) / 2`,
    /// `R` the number of resolved eigenstates.
    pub filter_center: f64,
    pub filter_width: f64,
    /// Target position-lattice step in units of `b`.
    pub lattice_step: f64,
    /// Largest accepted change when the lattice step is halved.
    pub tol: f64,
    /// Bound on the discarded weight: eigenvectors are trusted while their
    /// weight on the top of the number basis stays below it, and grid-corner
    /// coherent states must fit below the filter centre to this accuracy.
    pub tail_threshold: f64,
}

impl Default for WeylUOptions {
    fn default() -> Self {
        Self {
            cutoff: 240,
            filter_center: 0.55,
            filter_width: 0.12,
            lattice_step: 0.07,
            tol: 1e-6,
            tail_threshold: 1e-10,
        }
    }
}

/// Normalized Hermite functions `h_0(y) .. h_n(y)` by the three-term recurrence.
pub fn hermite_functions(y: f64, n: usize) -> DVector<f64> {
    let mut out = DVector::zeros(n + 1);
    out[0] = std::f64::consts::PI.powf(-0.25) * (-0.5 * y * y).exp();
    if n >= 1 {
        out[1] = std::f64::consts::SQRT_2 * y * out[0];
    }
    for k in 1..n {
        let kf = k as f64;
        out[k + 1] = (2.0 / (kf + 1.0)).sqrt() * y * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
    }
    out
}

/// Weyl symbol `U(q, p, T) = int <q - s/2| U |q + s/2> exp(i p s / hbar) ds`.
///
/// The evolution operator is assembled from the truncated spectrum with a
/// smooth `erfc` roll-off in the eigenstate index, which turns the
/// conditionally convergent eigenstate sum into a rapidly convergent one.
/// The `s` integral runs over the full support of the retained states on a
/// lattice whose points hit `q +- s/2` exactly; halving the lattice step is
/// the convergence check. The roll-off is a regularization, not a
/// discretization: for anharmonic spectra the symbol is only defined in the
/// smoothed sense, and moving the cutoff changes it at high-energy chords.
pub fn weyl_u_grid(
    h: &OperatorPoly,
    t: f64,
    spec: &GridSpec,
    ctx: &ScaleContext,
    opts: &WeylUOptions,
) -> Result<PhaseSpaceGrid> {
    spec.validate()?;
    if opts.cutoff < 8 || !(opts.lattice_step > 0.0) || !(opts.filter_width > 0.0) {
        return Err(Error::InvalidInput("invalid Weyl-symbol options".into()));
    }
    let prop = FockPropagator::new(h, opts.cutoff)?;
    let resolved = resolved_states(&prop, opts.tail_threshold);
    let kept = (opts.filter_center * resolved as f64).floor() as usize;
    for (q, p) in [(spec.q_min, spec.p_min), (spec.q_min, spec.p_max), (spec.q_max, spec.p_min), (spec.q_max, spec.p_max)] {
        fock_coherent(ctx.z_of(q, p), kept, opts.tail_threshold)?;
    }
    let coarse = weyl_u_once(&prop, resolved, t, spec, ctx, opts, opts.lattice_step);
    let fine = weyl_u_once(&prop, resolved, t, spec, ctx, opts, 0.5 * opts.lattice_step);
    let delta = fine.max_abs_diff(&coarse);
    if delta > opts.tol {
        return Err(Error::QuadratureNotConverged { delta, tol: opts.tol });
    }
    Ok(fine)
}

/// Number of low-lying eigenvectors whose weight on the top fifth of the
/// number basis stays below `threshold`; beyond that the truncated matrix
/// no longer represents the operator.
fn resolved_states(prop: &FockPropagator, threshold: f64) -> usize {
    let v = prop.vectors();
    let dim = v.nrows();
    let top = dim - dim / 5;
    (0..v.ncols())
        .position(|j| (top..dim).map(|n| v[(n, j)].norm_sqr()).sum::<f64>() > threshold)
        .unwrap_or(v.ncols())
}

fn weyl_u_once(
    prop: &FockPropagator,
    resolved: usize,
    t: f64,
    spec: &GridSpec,
    ctx: &ScaleContext,
    opts: &WeylUOptions,
    lattice_step: f64,
) -> PhaseSpaceGrid {
    let cutoff = prop.cutoff();
    let m = cutoff as f64;
    let r = resolved as f64;
    let hbar = prop.hbar();
    let b = ctx.b;
    let weights: Vec<Complex64> = prop
        .energies()
        .iter()
        .enumerate()
        .map(|(j, &e)| {
            let chi = 0.5 * libm::erfc((j as f64 - opts.filter_center * r) / (opts.filter_width * r));
            Complex64::from_polar(chi, -e * t / hbar)
        })
        .collect();

    let dq = spec.dq();
    let ratio = (dq / (lattice_step * b)).ceil().max(1.0) as i64;
    let dx = dq / ratio as f64;
    let support = (2.0 * (2.0 * m + 1.0).sqrt() + 4.0) * b;
    let l_lo = ((-support - spec.q_min) / dx).floor() as i64;
    let l_hi = ((support - spec.q_min) / dx).ceil() as i64;
    let l_lo = l_lo.min(0);
    let l_hi = l_hi.max((spec.nq as i64 - 1) * ratio);
    let len = (l_hi - l_lo + 1) as usize;

    // Hermite functions on the lattice, one column per lattice point.
    let norm = 1.0 / b.sqrt();
    let mut phi_t = DMatrix::<f64>::zeros(cutoff + 1, len);
    for l in 0..len {
        let x = spec.q_min + (l as i64 + l_lo) as f64 * dx;
        let hf = hermite_functions(x / b, cutoff);
        for n in 0..=cutoff {
            phi_t[(n, l)] = norm * hf[n];
        }
    }
    // Eigenfunctions on the lattice, again column per point, via real products.
    let vr_t = prop.vectors().map(|x| x.re).transpose();
    let vi_t = prop.vectors().map(|x| x.im).transpose();
    let re = &vr_t * &phi_t;
    let im = &vi_t * &phi_t;
    drop(phi_t);
    let psi_t = DMatrix::from_fn(cutoff + 1, len, |j, l| Complex64::new(re[(j, l)], im[(j, l)]));
    drop((re, im));
    let mut left_t = psi_t.clone();
    for (j, w) in weights.iter().enumerate() {
        let mut row = left_t.row_mut(j);
        row *= *w;
    }
    let psi_conj_t = psi_t.map(|c| c.conj());
    drop(psi_t);

    let p_vals = spec.p_values();
    let kmax_all = (len - 1) / 2;
    let phase_table: Vec<Vec<Complex64>> = p_vals
        .iter()
        .map(|&p| {
            let w = 2.0 * dx * p / hbar;
            (0..=kmax_all).map(|k| Complex64::from_polar(1.0, w * k as f64)).collect()
        })
        .collect();
    let rows: Vec<Vec<Complex64>> = (0..spec.nq)
        .into_par_iter()
        .map(|i| {
            let c = (i as i64 * ratio - l_lo) as usize;
            let kmax = c.min(len - 1 - c);
            let kernel_at = |k: i64| -> Complex64 {
                let a = (c as i64 - k) as usize;
                let bb = (c as i64 + k) as usize;
                left_t.column(a).iter().zip(psi_conj_t.column(bb).iter()).map(|(x, y)| x * y).sum()
            };
            let pos: Vec<Complex64> = (0..=kmax as i64).map(kernel_at).collect();
            let neg: Vec<Complex64> = (0..=kmax as i64).map(|k| kernel_at(-k)).collect();
            phase_table
                .iter()
                .map(|tab| {
                    let mut s = pos[0];
                    for k in 1..=kmax {
                        s += pos[k] * tab[k] + neg[k] * tab[k].conj();
                    }
                    2.0 * dx * s
                })
                .collect()
        })
        .collect();
    let values = DMatrix::from_fn(spec.nq, spec.np, |i, j| rows[i][j]);
    PhaseSpaceGrid { spec: *spec, values }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_normalized() {
        let dx = 0.01;
        let mut norms = [0.0; 6];
        let mut cross = 0.0;
        for k in -1500..=1500 {
            let h = hermite_functions(k as f64 * dx, 5);
            for n in 0..6 {
                norms[n] += h[n] * h[n] * dx;
            }
            cross += h[2] * h[4] * dx;
        }
        for n in norms {
            assert!((n - 1.0).abs() < 1e-12);
        }
        assert!(cross.abs() < 1e-12);
    }
}
