use std::io::Write;

use num_complex::Complex64;

use super::harmonic::{harmonic_discrete_k, mu_coefficients};
use crate::error::Result;
use crate::Form;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub form: Form,
    pub k: Complex64,
    pub abs_err: f64,
    pub mu: Complex64,
}

/// Discrete harmonic propagators of every form against a reference value.
/// Odd `N` rows are emitted for Q and P only.
pub fn convergence_table(
    z_start: Complex64,
    z_end: Complex64,
    omega: f64,
    t: f64,
    ns: &[usize],
    oracle: Complex64,
) -> Result<Vec<ConvergenceRow>> {
    let mut rows = Vec::new();
    for &n in ns {
        let mu = mu_coefficients(omega, t, n)?;
        for form in Form::ALL {
            if form == Form::W && n % 2 != 0 {
                continue;
            }
            let k = harmonic_discrete_k(form, z_start, z_end, omega, t, n)?;
            rows.push(ConvergenceRow {
                n,
                form,
                k,
                abs_err: (k - oracle).norm(),
                mu: mu.get(form),
            });
        }
    }
    Ok(rows)
}

pub fn write_convergence_csv(rows: &[ConvergenceRow], mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "N,form,re_K,im_K,abs_err_vs_oracle,re_mu,im_mu")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
            r.n, r.form, r.k.re, r.k.im, r.abs_err, r.mu.re, r.mu.im
        )?;
    }
    Ok(())
}
