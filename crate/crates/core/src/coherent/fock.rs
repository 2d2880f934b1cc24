use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::states::{coherent_amplitudes, fock_coherent, overlap};
use crate::error::{Error, Result};
use crate::operator_algebra::OperatorPoly;

/// Matrix of `op` on `|0>..|cutoff>`.
pub fn operator_matrix(op: &OperatorPoly, cutoff: usize) -> DMatrix<Complex64> {
    let d = cutoff + 1;
    DMatrix::from_fn(d, d, |i, j| op.fock_element(i, j))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorOptions {
    pub cutoff: usize,
    pub tail_threshold: f64,
    /// Largest accepted change when the cutoff is doubled.
    pub doubling_tol: f64,
}

impl Default for PropagatorOptions {
    fn default() -> Self {
        Self {
            cutoff: 80,
            tail_threshold: 1e-12,
            doubling_tol: 1e-9,
        }
    }
}

/// Spectral decomposition of a truncated Hamiltonian matrix.
#[derive(Debug, Clone)]
pub struct FockPropagator {
    hbar: f64,
    energies: DVector<f64>,
    vectors: DMatrix<Complex64>,
}

impl FockPropagator {
    pub fn new(op: &OperatorPoly, cutoff: usize) -> Result<Self> {
        if !op.is_hermitian(1e-12) {
            return Err(Error::InvalidInput("Hamiltonian is not Hermitian".into()));
        }
        if cutoff < op.max_power() as usize {
            return Err(Error::InvalidInput(format!(
                "cutoff {cutoff} is below the operator degree {}",
                op.max_power()
            )));
        }
        let m = operator_matrix(op, cutoff);
        let herm = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(herm);
        let mut order: Vec<usize> = (0..=cutoff).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let energies = DVector::from_iterator(order.len(), order.iter().map(|&k| eig.eigenvalues[k]));
        let vectors = DMatrix::from_fn(cutoff + 1, cutoff + 1, |i, j| eig.eigenvectors[(i, order[j])]);
        Ok(Self {
            hbar: op.hbar(),
            energies,
            vectors,
        })
    }

    pub fn cutoff(&self) -> usize {
        self.energies.len() - 1
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Eigenvalues in ascending order.
    pub fn energies(&self) -> &DVector<f64> {
        &self.energies
    }

    /// Eigenvectors as columns, matching [`Self::energies`].
    pub fn vectors(&self) -> &DMatrix<Complex64> {
        &self.vectors
    }

    fn phases(&self, t: f64) -> DVector<Complex64> {
        self.energies
            .map(|e| Complex64::from_polar(1.0, -e * t / self.hbar))
    }

    /// `exp(-i H t / hbar)` on the truncated space.
    pub fn unitary(&self, t: f64) -> DMatrix<Complex64> {
        let ph = self.phases(t);
        let mut scaled = self.vectors.clone();
        for (j, mut col) in scaled.column_iter_mut().enumerate() {
            col *= ph[j];
        }
        scaled * self.vectors.adjoint()
    }

    pub fn evolve(&self, psi: &DVector<Complex64>, t: f64) -> DVector<Complex64> {
        let mut c = self.vectors.ad_mul(psi);
        let ph = self.phases(t);
        c.component_mul_assign(&ph);
        &self.vectors * c
    }

    /// `<z_to| exp(-i H t / hbar) |z_from>` without tail checks.
    pub fn element(&self, z_from: Complex64, z_to: Complex64, t: f64) -> Complex64 {
        if t == 0.0 {
            return overlap(z_to, z_from);
        }
        let n = self.cutoff();
        let a = self.vectors.ad_mul(&coherent_amplitudes(z_from, n));
        let b = self.vectors.ad_mul(&coherent_amplitudes(z_to, n));
        let ph = self.phases(t);
        (0..=n).map(|j| b[j].conj() * ph[j] * a[j]).sum()
    }

    /// `<z| exp(-i H t / hbar) |z>` for many `z` at once, without tail checks.
    ///
    /// The projections onto the eigenvectors are done as real matrix
    /// products, which are much faster than their complex counterparts.
    pub fn diagonal_elements(&self, zs: &[Complex64], t: f64) -> Vec<Complex64> {
        const CHUNK: usize = 512;
        let n = self.cutoff();
        let vr_t = self.vectors.map(|x| x.re).transpose();
        let vi_t = self.vectors.map(|x| x.im).transpose();
        let ph = self.phases(t);
        let mut out = Vec::with_capacity(zs.len());
        for chunk in zs.chunks(CHUNK) {
            let mut cr = DMatrix::<f64>::zeros(n + 1, chunk.len());
            let mut ci = DMatrix::<f64>::zeros(n + 1, chunk.len());
            for (k, &z) in chunk.iter().enumerate() {
                let amp = coherent_amplitudes(z, n);
                for j in 0..=n {
                    cr[(j, k)] = amp[j].re;
                    ci[(j, k)] = amp[j].im;
                }
            }
            let ar = &vr_t * &cr + &vi_t * &ci;
            let ai = &vr_t * &ci - &vi_t * &cr;
            for k in 0..chunk.len() {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..=n {
                    acc += ph[j] * (ar[(j, k)] * ar[(j, k)] + ai[(j, k)] * ai[(j, k)]);
                }
                out.push(acc);
            }
        }
        out
    }
}

/// `<z2| exp(-i H T / hbar) |z1>` with tail and cutoff-doubling checks.
pub fn exact_propagator(
    h: &OperatorPoly,
    z1: Complex64,
    z2: Complex64,
    t: f64,
    opts: &PropagatorOptions,
) -> Result<Complex64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidInput(format!("T must be finite and >= 0, got {t}")));
    }
    fock_coherent(z1, opts.cutoff, opts.tail_threshold)?;
    fock_coherent(z2, opts.cutoff, opts.tail_threshold)?;
    if t == 0.0 {
        return Ok(overlap(z2, z1));
    }
    let coarse = FockPropagator::new(h, opts.cutoff)?.element(z1, z2, t);
    let fine = FockPropagator::new(h, 2 * opts.cutoff)?.element(z1, z2, t);
    let delta = (fine - coarse).norm();
    if delta > opts.doubling_tol {
        return Err(Error::NonConverged {
            delta,
            tol: opts.doubling_tol,
        });
    }
    Ok(fine)
}
