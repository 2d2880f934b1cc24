//! Command-line front end for the `cspath` library.

mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cspath::coherent::{exact_propagator, PropagatorOptions};
use cspath::discrete::{convergence_table, harmonic_exact, quadrature_k, QuadratureGrid};
use cspath::operator_algebra::{HamiltonianSpec, OperatorPoly, QpPoly, ScaleContext};
use cspath::semiclassical::{semiclassical_k, Guess, SemiclassicalOptions, SolverOptions};
use cspath::weyl_evolution::{husimi_u_grid, smoothing_check, weyl_u_grid, GridSpec, WeylUOptions};
use cspath::{Complex64, Error, ErrorKind, Form};
use serde_json::{json, Value};

use output::{cjson, emit, Format, Table};

#[derive(Parser, Debug)]
#[command(name = "cspath", version, about = "Coherent-state propagators in the Q, P and Weyl representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Q, P and Weyl symbols of a Hamiltonian as (q, p) polynomials.
    Symbols {
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: SymbolFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Discrete harmonic propagators of every form against the exact one.
    HarmonicCompare {
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        omega: f64,
        #[arg(long = "T", allow_hyphen_values = true, default_value_t = std::f64::consts::TAU)]
        t: f64,
        /// Comma separated slice counts.
        #[arg(long = "N", value_delimiter = ',', default_value = "10,20,50,100,200,500,1000")]
        n: Vec<usize>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, default_value = "0.5,0")]
        z0: Complex64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, default_value = "0.3,0.4")]
        z1: Complex64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// `<z1| exp(-i H T / hbar) |z0>` from the Fock-space reference or by
    /// brute-force time slicing (N <= 3).
    Propagate {
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        form: FormArg,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z0: Complex64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z1: Complex64,
        #[arg(long = "T", allow_hyphen_values = true)]
        t: f64,
        #[arg(long = "N", default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 80)]
        cutoff: usize,
        /// Cutoff-doubling tolerance (exact) or refinement tolerance (sliced).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Semiclassical propagator from complex classical trajectories.
    Semiclassical {
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long, value_enum, default_value = "w")]
        form: FormArg,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z0: Complex64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z1: Complex64,
        #[arg(long = "T", allow_hyphen_values = true)]
        t: f64,
        /// Newton tolerance on the end-point residual.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Extra starting values for v(0); the automatic guess is always tried.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        guess: Vec<Complex64>,
        /// Drop the +I (Q) or -I (P) correction.
        #[arg(long)]
        no_correction: bool,
        /// Also report the Fock-space reference value, with this cutoff.
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weyl symbol of the evolution operator and the diagonal coherent-state
    /// propagator on a phase-space grid.
    WignerU {
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long = "T", allow_hyphen_values = true)]
        t: f64,
        /// Number-basis cutoff of the spectral Weyl symbol.
        #[arg(long, default_value_t = 240)]
        cutoff: usize,
        /// Number-basis cutoff of the diagonal propagator.
        #[arg(long, default_value_t = 80)]
        husimi_cutoff: usize,
        /// Grid covers |q| <= half_width b and |p| <= half_width c.
        #[arg(long, default_value_t = 4.0)]
        half_width: f64,
        #[arg(long, default_value_t = 64)]
        points: usize,
        /// Lattice-halving tolerance for the Weyl symbol.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SymbolFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormArg {
    Q,
    P,
    W,
    Exact,
}

impl FormArg {
    fn form(self) -> Option<Form> {
        match self {
            FormArg::Q => Some(Form::Q),
            FormArg::P => Some(Form::P),
            FormArg::W => Some(Form::W),
            FormArg::Exact => None,
        }
    }

    fn label(self) -> &'static str {
        match self {
            FormArg::Q => "q",
            FormArg::P => "p",
            FormArg::W => "w",
            FormArg::Exact => "exact",
        }
    }
}

/// Accepts `re,im` or a bare real number.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |x: &str| x.parse::<f64>().map_err(|e| format!("`{x}`: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re,im`, got `{s}`")),
    }
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Input => 1,
        ErrorKind::Convergence => 2,
        ErrorKind::Numeric => 3,
    }
}

fn load(path: &PathBuf) -> cspath::Result<(OperatorPoly, ScaleContext)> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    HamiltonianSpec::from_json(&text)?.build()
}

fn positive(name: &str, x: f64) -> cspath::Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be positive, got {x}")))
    }
}

fn non_negative_time(t: f64) -> cspath::Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("T must be finite and >= 0, got {t}")))
    }
}

fn qp_terms(p: &QpPoly) -> Vec<Value> {
    p.chop(1e-14)
        .terms()
        .iter()
        .map(|(&(j, k), c)| json!({"q": j, "p": k, "re": c.re, "im": c.im}))
        .collect()
}

fn qp_text(p: &QpPoly) -> String {
    let p = p.chop(1e-14);
    if p.terms().is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (&(j, k), c) in p.terms() {
        let coeff = if c.im == 0.0 {
            format!("{:+}", c.re)
        } else {
            format!("({:+}{:+}i)", c.re, c.im)
        };
        let mut s = coeff;
        if j > 0 {
            s.push_str(&format!(" q^{j}"));
        }
        if k > 0 {
            s.push_str(&format!(" p^{k}"));
        }
        parts.push(s);
    }
    parts.join(" ")
}

fn cmd_symbols(hamiltonian: &PathBuf, format: SymbolFormat, out: Option<&PathBuf>) -> cspath::Result<()> {
    let (h, ctx) = load(hamiltonian)?;
    let syms = [
        ("H_Q", h.q_symbol().to_qp(&ctx)),
        ("H_P", h.p_symbol().to_qp(&ctx)),
        ("H_W", h.weyl_symbol().to_qp(&ctx)),
    ];
    let text = match format {
        SymbolFormat::Text => {
            let mut s = format!("# hbar = {}, b = {}, c = {}\n", ctx.hbar, ctx.b, ctx.c);
            for (name, p) in &syms {
                s.push_str(&format!("{name} = {}\n", qp_text(p)));
            }
            s
        }
        SymbolFormat::Json => {
            let v = json!({
                "hbar": ctx.hbar, "mass": ctx.mass, "omega": ctx.omega, "b": ctx.b, "c": ctx.c,
                "H_Q": qp_terms(&syms[0].1), "H_P": qp_terms(&syms[1].1), "H_W": qp_terms(&syms[2].1),
            });
            output::pretty(&v)
        }
    };
    output::write_text(out, &text)
}

#[allow(clippy::too_many_arguments)]
fn cmd_harmonic_compare(
    omega: f64,
    t: f64,
    ns: &[usize],
    z0: Complex64,
    z1: Complex64,
    format: Format,
    out: Option<&PathBuf>,
) -> cspath::Result<()> {
    non_negative_time(t)?;
    if !omega.is_finite() {
        return Err(Error::InvalidInput("omega must be finite".into()));
    }
    if ns.is_empty() || ns.contains(&0) {
        return Err(Error::InvalidInput("N values must be positive".into()));
    }
    let oracle = harmonic_exact(z0, z1, omega, t);
    let rows = convergence_table(z0, z1, omega, t, ns, oracle)?;
    let mut table = Table::new(&["N", "form", "re_K", "im_K", "abs_err_vs_oracle", "re_mu", "im_mu"]);
    for r in &rows {
        table.push(vec![
            json!(r.n),
            json!(r.form.label()),
            json!(r.k.re),
            json!(r.k.im),
            json!(r.abs_err),
            json!(r.mu.re),
            json!(r.mu.im),
        ]);
    }
    let meta = json!({
        "command": "harmonic-compare", "omega": omega, "T": t, "z0": cjson(z0), "z1": cjson(z1),
        "oracle": cjson(oracle),
    });
    emit(out, format, &meta, &table)
}

#[allow(clippy::too_many_arguments)]
fn cmd_propagate(
    hamiltonian: &PathBuf,
    form: FormArg,
    z0: Complex64,
    z1: Complex64,
    t: f64,
    n: usize,
    cutoff: usize,
    tol: Option<f64>,
    format: Format,
    out: Option<&PathBuf>,
) -> cspath::Result<()> {
    non_negative_time(t)?;
    let (h, ctx) = load(hamiltonian)?;
    let mut record = json!({
        "command": "propagate", "form": form.label(), "z0": cjson(z0), "z1": cjson(z1), "T": t,
        "hbar": ctx.hbar, "b": ctx.b,
    });
    let value = match form.form() {
        None => {
            let opts = PropagatorOptions {
                cutoff,
                doubling_tol: tol.unwrap_or(PropagatorOptions::default().doubling_tol),
                ..Default::default()
            };
            positive("tol", opts.doubling_tol)?;
            record["cutoff"] = json!(opts.cutoff);
            record["tail_threshold"] = json!(opts.tail_threshold);
            record["doubling_tol"] = json!(opts.doubling_tol);
            exact_propagator(&h, z0, z1, t, &opts)?
        }
        Some(f) => {
            let grid = QuadratureGrid {
                tol: tol.unwrap_or(QuadratureGrid::default().tol),
                ..Default::default()
            };
            positive("tol", grid.tol)?;
            let r = quadrature_k(f, &h, z0, z1, t, n, &grid)?;
            record["N"] = json!(n);
            record["grid"] = json!({
                "spacing": grid.spacing, "radius": grid.radius, "gh_nodes": grid.gh_nodes,
                "refine": grid.refine, "tol": grid.tol, "points_per_plane": r.points,
                "refinement_delta": r.delta,
            });
            r.value
        }
    };
    record["re_K"] = json!(value.re);
    record["im_K"] = json!(value.im);
    match format {
        Format::Json => output::write_text(out, &output::pretty(&record)),
        Format::Csv => {
            let mut table = Table::new(&["form", "T", "re_K", "im_K"]);
            table.push(vec![json!(form.label()), json!(t), json!(value.re), json!(value.im)]);
            emit(out, format, &record, &table)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_semiclassical(
    hamiltonian: &PathBuf,
    form: FormArg,
    z0: Complex64,
    z1: Complex64,
    t: f64,
    tol: f64,
    guesses: &[Complex64],
    no_correction: bool,
    cutoff: Option<usize>,
    format: Format,
    out: Option<&PathBuf>,
) -> cspath::Result<()> {
    non_negative_time(t)?;
    positive("tol", tol)?;
    let form = form
        .form()
        .ok_or_else(|| Error::InvalidInput("semiclassical needs --form q, p or w".into()))?;
    let (h, ctx) = load(hamiltonian)?;
    let solver = SolverOptions { tol, ..Default::default() };
    let mut all_guesses = vec![Guess::Auto];
    all_guesses.extend(guesses.iter().map(|&g| Guess::Value(g)));
    let opts = SemiclassicalOptions {
        solver,
        guesses: all_guesses,
        include_correction: !no_correction,
    };
    let r = semiclassical_k(form, &h, z0, z1, t, &opts)?;
    let trajectories: Vec<Value> = r
        .contributions
        .iter()
        .map(|c| {
            json!({
                "v0": cjson(c.v0), "S": cjson(c.action), "I": cjson(c.correction), "d2S": cjson(c.d2s),
                "Delta": cjson(c.delta), "prefactor": cjson(c.prefactor), "residual": c.residual,
                "iterations": c.iterations, "steps": c.steps, "contribution": cjson(c.value),
            })
        })
        .collect();
    let mut record = json!({
        "command": "semiclassical", "form": form.label(), "z0": cjson(z0), "z1": cjson(z1), "T": t,
        "hbar": ctx.hbar, "b": ctx.b, "include_correction": !no_correction,
        "solver": {
            "initial_steps": solver.steps, "max_steps": solver.max_steps, "tol": solver.tol,
            "max_iter": solver.max_iter, "step_tol": solver.step_tol,
        },
        "trajectories": trajectories,
        "re_K": r.value.re, "im_K": r.value.im,
    });
    if let Some(cutoff) = cutoff {
        let popts = PropagatorOptions { cutoff, ..Default::default() };
        let exact = exact_propagator(&h, z0, z1, t, &popts)?;
        record["exact"] = json!({"cutoff": cutoff, "re": exact.re, "im": exact.im, "abs_err": (exact - r.value).norm()});
    }
    match format {
        Format::Json => output::write_text(out, &output::pretty(&record)),
        Format::Csv => {
            let mut table = Table::new(&["index", "re_v0", "im_v0", "re_S", "im_S", "re_I", "im_I", "re_d2S", "im_d2S", "residual", "re_term", "im_term"]);
            for (i, c) in r.contributions.iter().enumerate() {
                table.push(vec![
                    json!(i),
                    json!(c.v0.re),
                    json!(c.v0.im),
                    json!(c.action.re),
                    json!(c.action.im),
                    json!(c.correction.re),
                    json!(c.correction.im),
                    json!(c.d2s.re),
                    json!(c.d2s.im),
                    json!(c.residual),
                    json!(c.value.re),
                    json!(c.value.im),
                ]);
            }
            emit(out, format, &record, &table)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_wigner_u(
    hamiltonian: &PathBuf,
    t: f64,
    cutoff: usize,
    husimi_cutoff: usize,
    half_width: f64,
    points: usize,
    tol: f64,
    format: Format,
    out: Option<&PathBuf>,
) -> cspath::Result<()> {
    non_negative_time(t)?;
    positive("half-width", half_width)?;
    positive("tol", tol)?;
    let (h, ctx) = load(hamiltonian)?;
    let spec = GridSpec::symmetric(&ctx, half_width, points);
    let wopts = WeylUOptions { cutoff, tol, ..Default::default() };
    let popts = PropagatorOptions { cutoff: husimi_cutoff, ..Default::default() };
    let weyl = weyl_u_grid(&h, t, &spec, &ctx, &wopts)?;
    let hus = husimi_u_grid(&h, t, &spec, &ctx, &popts)?;
    let deviation = match smoothing_check(&weyl, &hus, &ctx) {
        Ok(d) => Some(d),
        Err(Error::MarginTooSmall { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut table = Table::new(&["q", "p", "re_U", "im_U", "re_husimi", "im_husimi"]);
    let (qs, ps) = (spec.q_values(), spec.p_values());
    for (i, &q) in qs.iter().enumerate() {
        for (j, &p) in ps.iter().enumerate() {
            let (u, k) = (weyl.values[(i, j)], hus.values[(i, j)]);
            table.push(vec![json!(q), json!(p), json!(u.re), json!(u.im), json!(k.re), json!(k.im)]);
        }
    }
    let meta = json!({
        "command": "wigner-u", "T": t, "hbar": ctx.hbar, "b": ctx.b, "c": ctx.c,
        "grid": {"q_min": spec.q_min, "q_max": spec.q_max, "p_min": spec.p_min, "p_max": spec.p_max, "nq": spec.nq, "np": spec.np},
        "weyl": {"cutoff": wopts.cutoff, "filter_center": wopts.filter_center, "filter_width": wopts.filter_width,
                 "lattice_step": wopts.lattice_step, "tol": wopts.tol, "tail_threshold": wopts.tail_threshold},
        "husimi": {"cutoff": popts.cutoff, "tail_threshold": popts.tail_threshold, "doubling_tol": popts.doubling_tol},
        "smoothing_deviation": deviation,
    });
    if format == Format::Csv {
        match deviation {
            Some(d) => eprintln!("smoothing deviation (interior): {d:.3e}"),
            None => eprintln!("grid too small for the smoothing check"),
        }
    }
    emit(out, format, &meta, &table)
}

fn run(cli: Cli) -> cspath::Result<()> {
    match cli.command {
        Command::Symbols { hamiltonian, format, out } => cmd_symbols(&hamiltonian, format, out.as_ref()),
        Command::HarmonicCompare { omega, t, n, z0, z1, format, out } => {
            cmd_harmonic_compare(omega, t, &n, z0, z1, format, out.as_ref())
        }
        Command::Propagate { hamiltonian, form, z0, z1, t, n, cutoff, tol, format, out } => {
            cmd_propagate(&hamiltonian, form, z0, z1, t, n, cutoff, tol, format, out.as_ref())
        }
        Command::Semiclassical { hamiltonian, form, z0, z1, t, tol, guess, no_correction, cutoff, format, out } => {
            cmd_semiclassical(&hamiltonian, form, z0, z1, t, tol, &guess, no_correction, cutoff, format, out.as_ref())
        }
        Command::WignerU { hamiltonian, t, cutoff, husimi_cutoff, half_width, points, tol, format, out } => {
            cmd_wigner_u(&hamiltonian, t, cutoff, husimi_cutoff, half_width, points, tol, format, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.kind()))
        }
    }
}
