use cspath::coherent::PropagatorOptions;
use cspath::discrete::DiscreteWPath;
use cspath::models;
use cspath::operator_algebra::ScaleContext;
use cspath::weyl_evolution::*;
use cspath::{Complex64, Error};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn harmonic_weyl_u(q: f64, p: f64, theta: f64, ctx: &ScaleContext) -> Complex64 {
    let t = (0.5 * theta).tan();
    let r2 = q * q / (ctx.b * ctx.b) + p * p / (ctx.c * ctx.c);
    c(0.0, -t * r2).exp() / (0.5 * theta).cos()
}

#[test]
fn harmonic_weyl_u_matches_closed_form() {
    let ctx = ScaleContext::with_width(1.0, 1.0, 1.0, 1.0).unwrap();
    let h = models::harmonic(&ctx);
    let spec = GridSpec::symmetric(&ctx, 3.0, 13);
    for &t in &[0.0, 0.4, 1.0] {
        let grid = weyl_u_grid(&h, t, &spec, &ctx, &WeylUOptions::default()).unwrap();
        let oracle = PhaseSpaceGrid::from_fn(spec, |q, p| harmonic_weyl_u(q, p, t, &ctx));
        let err = grid.max_abs_diff(&oracle);
        assert!(err < 1e-6, "T={t}: {err:e}");
    }
}

#[test]
fn weyl_u_with_other_hbar() {
    let ctx = ScaleContext::new(0.5, 2.0, 1.3).unwrap();
    let h = models::harmonic(&ctx);
    let spec = GridSpec::symmetric(&ctx, 2.5, 9);
    let t = 0.7;
    let grid = weyl_u_grid(&h, t, &spec, &ctx, &WeylUOptions::default()).unwrap();
    let oracle = PhaseSpaceGrid::from_fn(spec, |q, p| harmonic_weyl_u(q, p, ctx.omega * t, &ctx));
    assert!(grid.max_abs_diff(&oracle) < 1e-6);
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    let (mut l0, mut l1) = (1.0, 1.0 + alpha - x);
    if n == 0 {
        return l0;
    }
    for k in 1..n {
        let kf = k as f64;
        let l2 = ((2.0 * kf + 1.0 + alpha - x) * l1 - (kf + alpha) * l0) / (kf + 1.0);
        l0 = l1;
        l1 = l2;
    }
    l1
}

/// Weyl symbol of `|m><n|` in units with `b = c = 1`.
fn number_projector_symbol(m: u32, n: u32, z: Complex64) -> Complex64 {
    let (hi, lo, swap) = if m >= n { (m, n, false) } else { (n, m, true) };
    let r2 = z.norm_sqr();
    let sign = if lo % 2 == 0 { 1.0 } else { -1.0 };
    let val = (2.0 * z.conj()).powu(hi - lo)
        * (2.0 * sign * (factorial(lo) / factorial(hi)).sqrt() * (-2.0 * r2).exp() * laguerre(lo, (hi - lo) as f64, 4.0 * r2));
    if swap {
        val.conj()
    } else {
        val
    }
}

#[test]
fn number_state_wigner_matches_hermite_quadrature() {
    // W_{|m><n|}(q, p) = int h_m(q - s/2) h_n(q + s/2) e^{i p s} ds with b = c = 1.
    let ds = 0.02;
    for &(m, n) in &[(0u32, 0u32), (3, 3), (4, 1), (1, 4), (7, 2)] {
        for &(q, p) in &[(0.0, 0.0), (0.7, -0.4), (-1.3, 0.9)] {
            let mut acc = c(0.0, 0.0);
            for k in -1500..=1500 {
                let s = k as f64 * ds;
                let hm = hermite_functions(q - 0.5 * s, 8)[m as usize];
                let hn = hermite_functions(q + 0.5 * s, 8)[n as usize];
                acc += c(0.0, p * s).exp() * (hm * hn * ds);
            }
            let z = ScaleContext::unit().z_of(q, p);
            let want = number_projector_symbol(m, n, z);
            assert!((acc - want).norm() < 1e-10, "m={m} n={n}: {acc} vs {want}");
        }
    }
}

#[test]
fn zero_time_gives_identity_symbol() {
    let ctx = ScaleContext::unit();
    let h = models::quartic(0.05, &ctx);
    let spec = GridSpec::symmetric(&ctx, 3.0, 9);
    let opts = WeylUOptions { cutoff: 400, ..Default::default() };
    let grid = weyl_u_grid(&h, 0.0, &spec, &ctx, &opts).unwrap();
    let one = PhaseSpaceGrid::from_fn(spec, |_, _| c(1.0, 0.0));
    let err = grid.max_abs_diff(&one);
    assert!(err < 1e-6, "{err:e}");
}

#[test]
fn quarter_period_harmonic() {
    let ctx = ScaleContext::unit();
    let h = models::harmonic(&ctx);
    let spec = GridSpec::symmetric(&ctx, 3.0, 11);
    let theta = std::f64::consts::FRAC_PI_2;
    let grid = weyl_u_grid(&h, theta, &spec, &ctx, &WeylUOptions::default()).unwrap();
    let oracle = PhaseSpaceGrid::from_fn(spec, |q, p| harmonic_weyl_u(q, p, theta, &ctx));
    assert!(grid.max_abs_diff(&oracle) < 1e-6);
    let bound = 1.0 / (0.5 * theta).cos();
    assert!(grid.values.iter().all(|v| v.norm() <= bound + 1e-6));
}

#[test]
fn off_diagonal_projector_symbol_is_consistent() {
    // W_{|m><n|} at z = 0 vanishes unless m = n; check the conjugate relation.
    let z = c(0.3, -0.2);
    let a = number_projector_symbol(3, 1, z);
    let b = number_projector_symbol(1, 3, z);
    assert!((a - b.conj()).norm() < 1e-15);
    assert!(number_projector_symbol(2, 0, c(0.0, 0.0)).norm() < 1e-15);
}

#[test]
fn hermite_functions_match_explicit_low_orders() {
    let y: f64 = 0.37;
    let h = hermite_functions(y, 3);
    let g = std::f64::consts::PI.powf(-0.25) * (-0.5 * y * y).exp();
    assert!((h[0] - g).abs() < 1e-15);
    assert!((h[2] - g * (2.0 * y * y - 1.0) / 2f64.sqrt()).abs() < 1e-14);
    assert!((h[3] - g * (2.0 * y * y * y - 3.0 * y) / 3f64.sqrt()).abs() < 1e-14);
}

#[test]
fn harmonic_husimi_closed_form() {
    let ctx = ScaleContext::unit();
    let h = models::harmonic(&ctx);
    let spec = GridSpec::symmetric(&ctx, 3.0, 9);
    let t = 0.8;
    let grid = husimi_u_grid(&h, t, &spec, &ctx, &PropagatorOptions::default()).unwrap();
    let oracle = PhaseSpaceGrid::from_fn(spec, |q, p| {
        let z = ctx.z_of(q, p);
        c(0.0, -0.5 * t).exp() * ((c(0.0, -t).exp() - 1.0) * z.norm_sqr()).exp()
    });
    assert!(grid.max_abs_diff(&oracle) < 1e-10);
    let still = husimi_u_grid(&h, 0.0, &spec, &ctx, &PropagatorOptions::default()).unwrap();
    assert!(still.values.iter().all(|v| (v - 1.0).norm() < 1e-12));
}

#[test]
fn smoothing_links_weyl_and_husimi_for_harmonic() {
    let ctx = ScaleContext::unit();
    let h = models::harmonic(&ctx);
    let spec = GridSpec::default_for(&ctx);
    let weyl = weyl_u_grid(&h, 1.0, &spec, &ctx, &WeylUOptions::default()).unwrap();
    let hus = husimi_u_grid(&h, 1.0, &spec, &ctx, &PropagatorOptions::default()).unwrap();
    let dev = smoothing_check(&weyl, &hus, &ctx).unwrap();
    assert!(dev < 1e-4, "{dev:e}");
}

#[test]
fn smoothing_deviation_shrinks_on_wider_finer_grid() {
    let ctx = ScaleContext::unit();
    let h = models::harmonic(&ctx);
    let opts = PropagatorOptions::default();
    let mut devs = Vec::new();
    for (half, n) in [(4.0, 64), (5.0, 128)] {
        let spec = GridSpec::symmetric(&ctx, half, n);
        let weyl = weyl_u_grid(&h, 1.0, &spec, &ctx, &WeylUOptions::default()).unwrap();
        let hus = husimi_u_grid(&h, 1.0, &spec, &ctx, &opts).unwrap();
        devs.push(smoothing_check_region(&weyl, &hus, &ctx, 4.0 - 2.0 * 2f64.sqrt(), 4.0 - 2.0 * 2f64.sqrt()).unwrap());
    }
    assert!(devs[1] < devs[0], "{devs:?}");
}

#[test]
fn smoothing_of_constant_is_constant_in_interior() {
    let ctx = ScaleContext::unit();
    let spec = GridSpec::default_for(&ctx);
    let one = PhaseSpaceGrid::from_fn(spec, |_, _| c(1.0, 0.0));
    let s = gaussian_smooth(&one, &ctx);
    assert!(smoothing_check(&s, &one, &ctx).is_ok());
    let q = spec.q_values();
    let i = q.len() / 2;
    assert!((s.values[(i, i)] - 1.0).norm() < 1e-6);
}

#[test]
fn quartic_needs_enough_resolved_states() {
    let ctx = ScaleContext::unit();
    let h = models::quartic(0.05, &ctx);
    let spec = GridSpec::default_for(&ctx);
    let opts = WeylUOptions { cutoff: 120, ..Default::default() };
    assert!(matches!(weyl_u_grid(&h, 0.3, &spec, &ctx, &opts), Err(Error::TailTooLarge { .. })));
}

#[test]
fn small_grid_reports_margin() {
    let ctx = ScaleContext::unit();
    let spec = GridSpec::symmetric(&ctx, 2.0, 16);
    let g = PhaseSpaceGrid::from_fn(spec, |_, _| c(1.0, 0.0));
    assert!(matches!(smoothing_check(&g, &g, &ctx), Err(Error::MarginTooSmall { .. })));
}

#[test]
fn area_identity_holds_for_arbitrary_paths() {
    let ctx = ScaleContext::with_width(0.7, 1.0, 1.0, 1.4).unwrap();
    let w: Vec<Complex64> = (0..6).map(|k| c(0.3 * k as f64 - 0.5, 0.2 - 0.1 * (k * k) as f64)).collect();
    let path = DiscreteWPath::real(w, 0.1, c(0.1, 0.2), c(-0.3, 0.4)).unwrap();
    for &(q, p) in &[(0.0, 0.0), (0.5, -1.2), (2.0, 0.3)] {
        let (lhs, rhs) = area_identity(&path, q, p, &ctx);
        assert!((lhs - rhs).norm() < 1e-12, "{lhs} vs {rhs}");
    }
}

#[test]
fn area_is_independent_of_width() {
    // Fix the phase-space points (Q_k, P_k) and express them under two widths.
    let qp = [(0.3, -0.2), (1.1, 0.4), (-0.6, 0.9), (0.0, -1.5)];
    let (q, p) = (0.8, -0.35);
    let mut results = Vec::new();
    for b in [1.0, 2.0] {
        let ctx = ScaleContext::with_width(1.0, 1.0, 1.0, b).unwrap();
        let w = qp.iter().map(|&(x, y)| ctx.z_of(x, y)).collect();
        let path = DiscreteWPath::real(w, 0.1, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let (lhs, rhs) = area_identity(&path, q, p, &ctx);
        assert!((lhs - rhs).norm() < 1e-12);
        results.push(rhs);
    }
    assert!((results[0] - results[1]).norm() < 1e-12);
}

#[test]
fn degenerate_chord_has_no_area() {
    let ctx = ScaleContext::unit();
    let (q, p) = (0.4, -0.9);
    let zx = ctx.z_of(q, p);
    let path = DiscreteWPath::real(vec![zx, zx], 0.1, zx, zx).unwrap();
    let (lhs, rhs) = area_identity(&path, q, p, &ctx);
    assert!(lhs.norm() < 1e-14 && rhs.norm() < 1e-14);
}

#[test]
fn grid_csv_has_header_and_rows() {
    let ctx = ScaleContext::unit();
    let spec = GridSpec::symmetric(&ctx, 1.0, 3);
    let g = PhaseSpaceGrid::from_fn(spec, c);
    let mut buf = Vec::new();
    write_grid_csv(&g, &g, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), 10);
}
