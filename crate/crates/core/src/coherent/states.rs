use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator_algebra::ScaleContext;

/// `<z1|z2>` for normalized coherent states.
pub fn overlap(z1: Complex64, z2: Complex64) -> Complex64 {
    (-0.5 * z1.norm_sqr() + z1.conj() * z2 - 0.5 * z2.norm_sqr()).exp()
}

/// Phase-space point in physical units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub q: f64,
    pub p: f64,
}

impl PhasePoint {
    pub fn new(q: f64, p: f64) -> Self {
        Self { q, p }
    }
}

/// Coherent-state label together with the scales that define it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentPoint {
    pub z: Complex64,
    pub ctx: ScaleContext,
}

impl CoherentPoint {
    pub fn from_phase(x: PhasePoint, ctx: ScaleContext) -> Self {
        Self {
            z: ctx.z_of(x.q, x.p),
            ctx,
        }
    }

    pub fn phase_point(&self) -> PhasePoint {
        let (q, p) = self.ctx.qp_of(self.z);
        PhasePoint { q, p }
    }
}

/// Number-basis amplitudes `|0>..|cutoff>` with the discarded probability.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    pub amplitudes: DVector<Complex64>,
    pub tail: f64,
}

impl FockVector {
    pub fn cutoff(&self) -> usize {
        self.amplitudes.len() - 1
    }
}

/// Truncated number-basis expansion of `|z>`.
///
/// Fails with `TailTooLarge` when the Poisson mass above `cutoff` exceeds
/// `threshold`.
pub fn fock_coherent(z: Complex64, cutoff: usize, threshold: f64) -> Result<FockVector> {
    let v = coherent_amplitudes(z, cutoff);
    let tail = poisson_tail(z.norm_sqr(), cutoff);
    if tail > threshold {
        return Err(Error::TailTooLarge {
            tail,
            threshold,
            cutoff,
        });
    }
    Ok(FockVector {
        amplitudes: v,
        tail,
    })
}

pub(crate) fn coherent_amplitudes(z: Complex64, cutoff: usize) -> DVector<Complex64> {
    let mut v = DVector::from_element(cutoff + 1, Complex64::new(0.0, 0.0));
    let mut a = Complex64::new((-0.5 * z.norm_sqr()).exp(), 0.0);
    v[0] = a;
    for n in 1..=cutoff {
        a = a * z / (n as f64).sqrt();
        v[n] = a;
    }
    v
}

/// `exp(-x) sum_{n > cutoff} x^n / n!`, summed directly to avoid cancellation.
pub(crate) fn poisson_tail(x: f64, cutoff: usize) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let n0 = cutoff + 1;
    let log_first = -x + n0 as f64 * x.ln() - libm::lgamma(n0 as f64 + 1.0);
    let mut term = log_first.exp();
    let mut sum = 0.0;
    let mut n = n0;
    loop {
        sum += term;
        n += 1;
        term *= x / n as f64;
        if term <= sum * 1e-17 || n > n0 + 10_000 {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_overlap() {
        let z = Complex64::new(0.4, -1.2);
        assert!((overlap(z, z) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn overlap_origin() {
        let o = overlap(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        assert!((o.re - (-0.5f64).exp()).abs() < 1e-15 && o.im == 0.0);
    }

    #[test]
    fn vacuum_vector() {
        let f = fock_coherent(Complex64::new(0.0, 0.0), 5, 1e-12).unwrap();
        assert_eq!(f.amplitudes[0], Complex64::new(1.0, 0.0));
        assert!(f.amplitudes.iter().skip(1).all(|a| a.norm() == 0.0));
        assert_eq!(f.tail, 0.0);
    }

    #[test]
    fn small_cutoff_values() {
        let v = coherent_amplitudes(Complex64::new(1.0, 0.0), 2);
        let e = (-0.5f64).exp();
        assert!((v[0].re - e).abs() < 1e-15);
        assert!((v[1].re - e).abs() < 1e-15);
        assert!((v[2].re - e / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn tail_reported() {
        let z = Complex64::new(1.0, 0.0);
        assert!(matches!(fock_coherent(z, 2, 1e-12), Err(Error::TailTooLarge { .. })));
        let f = fock_coherent(Complex64::new(1.0, 1.0), 60, 1e-12).unwrap();
        let norm: f64 = f.amplitudes.iter().map(|a| a.norm_sqr()).sum();
        assert!(norm <= 1.0 + 1e-14 && norm > 1.0 - f.tail - 1e-14);
    }

    #[test]
    fn tail_matches_direct_sum() {
        let x: f64 = 2.0;
        let direct: f64 = 1.0 - (0..=3).map(|n| (-x).exp() * x.powi(n) / (1..=n).product::<i32>().max(1) as f64).sum::<f64>();
        assert!((poisson_tail(x, 3) - direct).abs() < 1e-14);
    }
}
