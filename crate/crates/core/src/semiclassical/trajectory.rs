use num_complex::Complex64;

use crate::discrete::DiscreteWPath;
use crate::error::{Error, Result};
use crate::operator_algebra::{ScaleContext, SymbolPoly};
use crate::Form;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Initial number of RK4 steps; doubled until the error estimate passes.
    pub steps: usize,
    pub max_steps: usize,
    /// Newton tolerance on `|v(T) - conj(z'')|`.
    pub tol: f64,
    pub max_iter: usize,
    /// Bound on the step-doubling estimate of the endpoint and action error.
    pub step_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            steps: 256,
            max_steps: 1 << 17,
            tol: 1e-10,
            max_iter: 60,
            step_tol: 1e-11,
        }
    }
}

/// Starting value of `v(0)` for the shooting iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Guess {
    /// Exact solution of the problem truncated to the quadratic part of `H`.
    Auto,
    Value(Complex64),
}

/// Converged complex trajectory sampled on the integrator grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexTrajectory {
    pub form: Option<Form>,
    pub hbar: f64,
    pub times: Vec<f64>,
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
    /// Linearized flow started from `(du, dv) = (0, 1)`.
    pub du: Vec<Complex64>,
    pub dv: Vec<Complex64>,
    /// Running `int (u H_u + v H_v)/2 - H dt`.
    pub action_integral: Vec<Complex64>,
    /// Running `int H_uv / 2 dt`.
    pub correction_integral: Vec<Complex64>,
    pub target: Complex64,
    pub residual: f64,
    pub iterations: usize,
    symbol: SymbolPoly,
}

const DIM: usize = 6;
type State = [Complex64; DIM];

fn rhs(h: &SymbolPoly, hbar: f64, y: &State) -> State {
    let e = h.eval2(y[0], y[1], 2);
    let mi = Complex64::new(0.0, -1.0 / hbar);
    let pi = Complex64::new(0.0, 1.0 / hbar);
    [
        mi * e.dv,
        pi * e.du,
        mi * (e.duv * y[2] + e.dvv * y[3]),
        pi * (e.duu * y[2] + e.duv * y[3]),
        0.5 * (y[0] * e.du + y[1] * e.dv) - e.value,
        0.5 * e.duv,
    ]
}

fn axpy(y: &State, h: f64, k: &State) -> State {
    let mut out = *y;
    for i in 0..DIM {
        out[i] += h * k[i];
    }
    out
}

/// RK4 from `u(0) = z_start`, `v(0) = v0`; `None` if the flow leaves the
/// finite numbers.
fn integrate(
    h: &SymbolPoly,
    hbar: f64,
    z_start: Complex64,
    v0: Complex64,
    t: f64,
    steps: usize,
    keep: bool,
) -> Option<Vec<State>> {
    let zero = Complex64::new(0.0, 0.0);
    let mut y: State = [z_start, v0, zero, Complex64::new(1.0, 0.0), zero, zero];
    let dt = t / steps as f64;
    let mut out = Vec::with_capacity(if keep { steps + 1 } else { 1 });
    if keep {
        out.push(y);
    }
    for _ in 0..steps {
        let k1 = rhs(h, hbar, &y);
        let k2 = rhs(h, hbar, &axpy(&y, 0.5 * dt, &k1));
        let k3 = rhs(h, hbar, &axpy(&y, 0.5 * dt, &k2));
        let k4 = rhs(h, hbar, &axpy(&y, dt, &k3));
        for i in 0..DIM {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if !y.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return None;
        }
        if keep {
            out.push(y);
        }
    }
    if !keep {
        out.push(y);
    }
    Some(out)
}

fn auto_guess(h: &SymbolPoly, hbar: f64, z_start: Complex64, target: Complex64, t: f64, steps: usize) -> Complex64 {
    let quad = h.truncate(2);
    match integrate(&quad, hbar, z_start, Complex64::new(0.0, 0.0), t, steps, false) {
        Some(y) => {
            let end = y[0];
            if end[3].norm() > 1e-12 {
                (target - end[1]) / end[3]
            } else {
                target
            }
        }
        None => target,
    }
}

struct Shot {
    v0: Complex64,
    iterations: usize,
    residual: f64,
}

fn newton(
    h: &SymbolPoly,
    hbar: f64,
    z_start: Complex64,
    target: Complex64,
    t: f64,
    steps: usize,
    v0: Complex64,
    opts: &SolverOptions,
) -> Result<Shot> {
    let eval = |v0: Complex64| {
        integrate(h, hbar, z_start, v0, t, steps, false).map(|y| {
            let end = y[0];
            (end[1] - target, end[3])
        })
    };
    let mut v0 = v0;
    let (mut r, mut jac) = eval(v0).ok_or(Error::NoConvergence {
        residual: f64::INFINITY,
        iterations: 0,
    })?;
    for it in 0..=opts.max_iter {
        if r.norm() < opts.tol {
            return Ok(Shot {
                v0,
                iterations: it,
                residual: r.norm(),
            });
        }
        if it == opts.max_iter || jac.norm() < 1e-300 {
            break;
        }
        let step = r / jac;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial = v0 - lambda * step;
            if let Some((rt, jt)) = eval(trial) {
                if rt.norm() < r.norm() {
                    v0 = trial;
                    r = rt;
                    jac = jt;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    Err(Error::NoConvergence {
        residual: r.norm(),
        iterations: opts.max_iter,
    })
}

/// Solves the mixed boundary-value problem `u(0) = z_start`,
/// `v(T) = z_end_star` for the Hamiltonian symbol `h`.
pub fn solve_bvp(
    h: &SymbolPoly,
    hbar: f64,
    z_start: Complex64,
    z_end_star: Complex64,
    t: f64,
    guess: Guess,
    opts: &SolverOptions,
) -> Result<ComplexTrajectory> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidInput(format!("T must be finite and >= 0, got {t}")));
    }
    if opts.steps < 16 {
        return Err(Error::InvalidInput("at least 16 integrator steps are required".into()));
    }
    let mut steps = opts.steps;
    let mut v0 = match guess {
        Guess::Auto => auto_guess(h, hbar, z_start, z_end_star, t, steps),
        Guess::Value(v) => v,
    };
    loop {
        let shot = newton(h, hbar, z_start, z_end_star, t, steps, v0, opts)?;
        v0 = shot.v0;
        let coarse = integrate(h, hbar, z_start, v0, t, steps, true);
        let fine = integrate(h, hbar, z_start, v0, t, 2 * steps, false);
        let (coarse, fine) = match (coarse, fine) {
            (Some(c), Some(f)) => (c, f[0]),
            _ => {
                return Err(Error::NoConvergence {
                    residual: f64::INFINITY,
                    iterations: shot.iterations,
                })
            }
        };
        let end = coarse[steps];
        let estimate = [
            (end[1] - fine[1]).norm() / end[1].norm().max(1.0),
            (end[3] - fine[3]).norm() / end[3].norm().max(1.0),
            (end[4] - fine[4]).norm() / (hbar * end[4].norm().max(1.0)),
            (end[5] - fine[5]).norm() / (hbar * end[5].norm().max(1.0)),
        ]
        .into_iter()
        .fold(0.0, f64::max)
            / 15.0;
        if estimate <= opts.step_tol {
            let dt = t / steps as f64;
            return Ok(ComplexTrajectory {
                form: None,
                hbar,
                times: (0..=steps).map(|k| k as f64 * dt).collect(),
                u: coarse.iter().map(|y| y[0]).collect(),
                v: coarse.iter().map(|y| y[1]).collect(),
                du: coarse.iter().map(|y| y[2]).collect(),
                dv: coarse.iter().map(|y| y[3]).collect(),
                action_integral: coarse.iter().map(|y| y[4]).collect(),
                correction_integral: coarse.iter().map(|y| y[5]).collect(),
                target: z_end_star,
                residual: shot.residual,
                iterations: shot.iterations,
                symbol: h.clone(),
            });
        }
        if 2 * steps > opts.max_steps {
            return Err(Error::StepTooLarge {
                estimate,
                bound: opts.step_tol,
                steps,
            });
        }
        steps *= 2;
    }
}

/// Runs [`solve_bvp`] from each guess and keeps solutions whose `v(0)`
/// differ by at least `1e-6`. Failed starts are skipped.
pub fn solve_all(
    h: &SymbolPoly,
    hbar: f64,
    z_start: Complex64,
    z_end_star: Complex64,
    t: f64,
    guesses: &[Guess],
    opts: &SolverOptions,
) -> Vec<ComplexTrajectory> {
    let mut found: Vec<ComplexTrajectory> = Vec::new();
    for &g in guesses {
        if let Ok(tr) = solve_bvp(h, hbar, z_start, z_end_star, t, g, opts) {
            if found.iter().all(|f| (f.v0() - tr.v0()).norm() >= 1e-6) {
                found.push(tr);
            }
        }
    }
    found
}

impl ComplexTrajectory {
    pub fn steps(&self) -> usize {
        self.times.len() - 1
    }

    pub fn duration(&self) -> f64 {
        *self.times.last().unwrap_or(&0.0)
    }

    pub fn v0(&self) -> Complex64 {
        self.v[0]
    }

    pub fn symbol(&self) -> &SymbolPoly {
        &self.symbol
    }

    /// `S = int [(u H_u + v H_v)/2 - H] dt - (i hbar / 2)(u'' v'' + u' v')`.
    pub fn action(&self) -> Complex64 {
        let n = self.steps();
        let boundary = self.u[n] * self.v[n] + self.u[0] * self.v[0];
        self.action_integral[n] - Complex64::new(0.0, 0.5 * self.hbar) * boundary
    }

    /// `I = (1/2) int H_uv dt`.
    pub fn correction(&self) -> Complex64 {
        self.correction_integral[self.steps()]
    }

    /// `Delta(T) = dv(T)/dv(0)`, equal to `Omega(T) / 2i`.
    pub fn delta(&self) -> Complex64 {
        self.dv[self.steps()]
    }

    /// `d^2 S / du' dv'' = 2 hbar / Omega(T) = -i hbar / Delta(T)`.
    pub fn d2s(&self) -> Result<Complex64> {
        let omega = 2.0 * self.delta().norm();
        if omega < 1e-12 {
            return Err(Error::SingularMonodromy(omega));
        }
        Ok(Complex64::new(0.0, -self.hbar) / self.delta())
    }

    /// `Delta(T)^{-1/2}` on the branch continued from `Delta(0) = 1` along
    /// the trajectory.
    pub fn prefactor(&self) -> Complex64 {
        let mut arg = 0.0;
        for w in self.dv.windows(2) {
            arg += (w[1] / w[0]).arg();
        }
        Complex64::from_polar(self.delta().norm().powf(-0.5), -0.5 * arg)
    }

    /// Largest `|H(t) - H(0)|` along the samples.
    pub fn energy_drift(&self) -> f64 {
        let e0 = self.symbol.eval(self.u[0], self.v[0]);
        self.u
            .iter()
            .zip(&self.v)
            .map(|(&u, &v)| (self.symbol.eval(u, v) - e0).norm())
            .fold(0.0, f64::max)
    }

    /// `(u, v)` at time `t` by cubic Hermite interpolation with the exact
    /// vector field as slopes.
    pub fn state_at(&self, t: f64) -> (Complex64, Complex64) {
        let n = self.steps();
        let total = self.duration();
        if n == 0 || total == 0.0 {
            return (self.u[0], self.v[0]);
        }
        let dt = total / n as f64;
        let k = ((t / dt).floor() as usize).min(n - 1);
        let s = (t - k as f64 * dt) / dt;
        let slope = |i: usize| {
            let e = self.symbol.eval2(self.u[i], self.v[i], 1);
            (
                Complex64::new(0.0, -1.0 / self.hbar) * e.dv,
                Complex64::new(0.0, 1.0 / self.hbar) * e.du,
            )
        };
        let (su0, sv0) = slope(k);
        let (su1, sv1) = slope(k + 1);
        let h00 = 2.0 * s * s * s - 3.0 * s * s + 1.0;
        let h10 = s * s * s - 2.0 * s * s + s;
        let h01 = -2.0 * s * s * s + 3.0 * s * s;
        let h11 = s * s * s - s * s;
        let interp = |y0: Complex64, y1: Complex64, m0: Complex64, m1: Complex64| {
            h00 * y0 + h10 * dt * m0 + h01 * y1 + h11 * dt * m1
        };
        (
            interp(self.u[k], self.u[k + 1], su0, su1),
            interp(self.v[k], self.v[k + 1], sv0, sv1),
        )
    }

    /// `(H_uu, H_vv, H_uv)` at time `t`, for the continuum determinant.
    pub fn second_derivatives_at(&self, t: f64) -> (Complex64, Complex64, Complex64) {
        let (u, v) = self.state_at(t);
        let e = self.symbol.eval2(u, v, 2);
        (e.duu, e.dvv, e.duv)
    }

    /// Samples `u`, `v` at the midpoint times `(k - 1/2) T / N` as a
    /// complexified discrete path.
    pub fn sample_midpoints(&self, n: usize, z_end: Complex64) -> Result<DiscreteWPath> {
        let tau = self.duration() / n as f64;
        let (mut w, mut wbar) = (Vec::with_capacity(n), Vec::with_capacity(n));
        for k in 1..=n {
            let (u, v) = self.state_at((k as f64 - 0.5) * tau);
            w.push(u);
            wbar.push(v);
        }
        DiscreteWPath::new(w, wbar, tau, self.u[0], z_end)
    }

    /// Complexified `(q(t), p(t))` under the given scales.
    pub fn qp_curve(&self, ctx: &ScaleContext) -> Vec<(Complex64, Complex64)> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        self.u
            .iter()
            .zip(&self.v)
            .map(|(&u, &v)| {
                (
                    s * ctx.b * (u + v),
                    Complex64::new(0.0, -s * ctx.c) * (u - v),
                )
            })
            .collect()
    }
}
