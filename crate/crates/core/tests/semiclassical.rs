use cspath::coherent::{exact_propagator, PropagatorOptions};
use cspath::discrete::harmonic_exact;
use cspath::models;
use cspath::operator_algebra::ScaleContext;
use cspath::semiclassical::{semiclassical_k, solve_bvp, Guess, SemiclassicalOptions, SolverOptions};
use cspath::{Complex64, Form};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn harmonic_forms_are_exact() {
    let ctx = ScaleContext::unit();
    let h = models::harmonic(&ctx);
    let (z1, z2) = (c(0.3, 0.0), c(0.0, 0.5));
    for &t in &[0.5, 1.0, 2.0 * std::f64::consts::PI - 0.1] {
        let exact = harmonic_exact(z1, z2, 1.0, t);
        for form in Form::ALL {
            let k = semiclassical_k(form, &h, z1, z2, t, &Default::default()).unwrap().value;
            assert!((k - exact).norm() < 1e-9, "{form} T={t}: {k} vs {exact}");
        }
    }
}

#[test]
fn dropping_correction_breaks_q_form() {
    let ctx = ScaleContext::unit();
    let h = models::harmonic(&ctx);
    let (z1, z2) = (c(0.3, 0.0), c(0.0, 0.5));
    let opts = SemiclassicalOptions {
        include_correction: false,
        ..Default::default()
    };
    let k = semiclassical_k(Form::Q, &h, z1, z2, 1.0, &opts).unwrap().value;
    assert!((k - harmonic_exact(z1, z2, 1.0, 1.0)).norm() > 1e-3);
}

#[test]
fn zero_time_gives_overlap() {
    let ctx = ScaleContext::unit();
    let h = models::quartic(0.1, &ctx);
    let (z1, z2) = (c(0.3, 0.2), c(-0.1, 0.5));
    let o = cspath::coherent::overlap(z2, z1);
    for form in Form::ALL {
        let k = semiclassical_k(form, &h, z1, z2, 0.0, &Default::default()).unwrap().value;
        assert!((k - o).norm() < 1e-14, "{form}");
    }
}

#[test]
fn harmonic_trajectory_closed_form() {
    let ctx = ScaleContext::unit();
    let hw = models::harmonic(&ctx).weyl_symbol();
    let (z1, z2s) = (c(0.4, -0.1), c(0.2, 0.3));
    let t = 1.3;
    let tr = solve_bvp(&hw, 1.0, z1, z2s, t, Guess::Value(c(0.0, 0.0)), &SolverOptions::default()).unwrap();
    let expect = z2s * Complex64::from_polar(1.0, -t);
    assert!((tr.v0() - expect).norm() < 1e-10);
    for (k, &s) in tr.times.iter().enumerate() {
        assert!((tr.u[k] - z1 * Complex64::from_polar(1.0, -s)).norm() < 1e-10);
    }
}

#[test]
fn quartic_semiclassical_quick_look() {
    let ctx = ScaleContext::unit();
    let h = models::quartic(0.1, &ctx);
    let z = c(0.7, 0.0);
    let exact = exact_propagator(&h, z, z, 0.5, &PropagatorOptions::default()).unwrap();
    let r = semiclassical_k(Form::W, &h, z, z, 0.5, &Default::default()).unwrap();
    let tr = &r.trajectories[0];
    assert!(tr.residual < 1e-10);
    assert!(tr.energy_drift() < 1e-9);
    eprintln!("W: {} exact {} err {}", r.value, exact, (r.value - exact).norm());
    for form in [Form::Q, Form::P] {
        let k = semiclassical_k(form, &h, z, z, 0.5, &Default::default()).unwrap().value;
        eprintln!("{form}: {k} err {}", (k - exact).norm());
    }
}

fn action_of(hw: &cspath::operator_algebra::SymbolPoly, hbar: f64, u0: Complex64, v1: Complex64, t: f64) -> Complex64 {
    solve_bvp(hw, hbar, u0, v1, t, Guess::Auto, &SolverOptions::default())
        .unwrap()
        .action()
}

fn mixed_fd(hw: &cspath::operator_algebra::SymbolPoly, hbar: f64, u0: Complex64, v1: Complex64, t: f64) -> Complex64 {
    let h = 1e-3;
    let s = |du: f64, dv: f64| action_of(hw, hbar, u0 + du, v1 + dv, t);
    (s(h, h) - s(h, -h) - s(-h, h) + s(-h, -h)) / (4.0 * h * h)
}

#[test]
fn d2s_matches_finite_differences() {
    let ctx = ScaleContext::unit();
    for (h, t) in [(models::harmonic(&ctx), 0.9), (models::quartic(0.1, &ctx), 0.6)] {
        let hw = h.weyl_symbol();
        let (u0, v1) = (c(0.6, 0.1), c(0.5, -0.2));
        let tr = solve_bvp(&hw, 1.0, u0, v1, t, Guess::Auto, &SolverOptions::default()).unwrap();
        let fd = mixed_fd(&hw, 1.0, u0, v1, t);
        let d2s = tr.d2s().unwrap();
        assert!((fd - d2s).norm() < 1e-5, "{fd} vs {d2s}");
    }
}

#[test]
fn delta_matches_continuum_determinant() {
    use cspath::fluctuation::{det_continuum, ContinuumOptions};
    let ctx = ScaleContext::unit();
    let hw = models::quartic(0.1, &ctx).weyl_symbol();
    for &t in &[0.3, 0.7, 1.0] {
        let tr = solve_bvp(&hw, 1.0, c(0.7, 0.0), c(0.7, 0.0), t, Guess::Auto, &SolverOptions::default()).unwrap();
        let cont = det_continuum(|s| tr.second_derivatives_at(s), t, 1.0, &ContinuumOptions::default()).unwrap();
        let from_action = 1.0 / (c(0.0, 1.0) * tr.d2s().unwrap());
        assert!((cont.delta - from_action).norm() < 1e-6, "T={t}: {} vs {}", cont.delta, from_action);
    }
}

/// Classical RK4 for `p^2/2 + q^2/2 + lambda q^4`.
fn classical_endpoint(q0: f64, p0: f64, lambda: f64, t: f64) -> (f64, f64) {
    let f = |q: f64, p: f64| (p, -q - 4.0 * lambda * q * q * q);
    let n = 20_000;
    let h = t / n as f64;
    let (mut q, mut p) = (q0, p0);
    for _ in 0..n {
        let k1 = f(q, p);
        let k2 = f(q + 0.5 * h * k1.0, p + 0.5 * h * k1.1);
        let k3 = f(q + 0.5 * h * k2.0, p + 0.5 * h * k2.1);
        let k4 = f(q + h * k3.0, p + h * k3.1);
        q += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        p += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
    }
    (q, p)
}

#[test]
fn weyl_trajectory_does_not_depend_on_width() {
    let (lambda, t) = (0.1, 0.8);
    let (q0, p0) = (0.9, -0.3);
    let (q1, p1) = classical_endpoint(q0, p0, lambda, t);
    let mut curves = Vec::new();
    for b in [1.0, 2.0] {
        let ctx = ScaleContext::with_width(1.0, 1.0, 1.0, b).unwrap();
        let hw = models::quartic(lambda, &ctx).weyl_symbol();
        let (z0, z1) = (ctx.z_of(q0, p0), ctx.z_of(q1, p1));
        let tr = solve_bvp(&hw, 1.0, z0, z1.conj(), t, Guess::Auto, &SolverOptions::default()).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let curve: Vec<(Complex64, Complex64)> = (0..=16)
            .map(|k| {
                let (u, v) = tr.state_at(t * k as f64 / 16.0);
                (s * ctx.b * (u + v), c(0.0, -s * ctx.c) * (u - v))
            })
            .collect();
        let end = curve[16];
        assert!((end.0 - q1).norm() < 1e-9 && (end.1 - p1).norm() < 1e-9);
        curves.push(curve);
    }
    for (a, b) in curves[0].iter().zip(&curves[1]) {
        assert!((a.0 - b.0).norm() < 1e-9 && (a.1 - b.1).norm() < 1e-9);
    }
}

#[test]
fn sampled_trajectory_is_nearly_stationary() {
    use cspath::discrete::stationarity_residual;
    let ctx = ScaleContext::unit();
    let hw = models::quartic(0.1, &ctx).weyl_symbol();
    let (z1, z2) = (c(0.6, 0.2), c(0.3, -0.4));
    let t = 0.8;
    let tr = solve_bvp(&hw, 1.0, z1, z2.conj(), t, Guess::Auto, &SolverOptions::default()).unwrap();
    let r: Vec<f64> = [16, 32, 64]
        .iter()
        .map(|&n| stationarity_residual(&tr.sample_midpoints(n, z2).unwrap(), &hw, 1.0))
        .collect();
    for w in r.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order > 1.8, "{r:?}");
    }
}

#[test]
fn error_shrinks_with_hbar() {
    let z = c(0.7, 0.0);
    let mut errs = Vec::new();
    for hbar in [1.0, 0.5, 0.25] {
        let ctx = ScaleContext::new(hbar, 1.0, 1.0).unwrap();
        let h = models::quartic(0.1, &ctx);
        let exact = exact_propagator(&h, z, z, 0.5, &PropagatorOptions::default()).unwrap();
        let k = semiclassical_k(Form::W, &h, z, z, 0.5, &Default::default()).unwrap().value;
        errs.push((k - exact).norm());
    }
    assert!(errs[1] < errs[0] && errs[2] < errs[1], "{errs:?}");
}

#[test]
fn multistart_deduplicates() {
    let ctx = ScaleContext::unit();
    let h = models::harmonic(&ctx);
    let opts = SemiclassicalOptions {
        guesses: vec![Guess::Auto, Guess::Value(c(0.1, 0.1)), Guess::Value(c(-0.2, 0.0))],
        ..Default::default()
    };
    let r = semiclassical_k(Form::W, &h, c(0.3, 0.0), c(0.1, 0.2), 0.7, &opts).unwrap();
    assert_eq!(r.trajectories.len(), 1);
}
