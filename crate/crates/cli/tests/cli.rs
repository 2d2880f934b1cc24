use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const HARMONIC: &str = r#"{"hbar":1.0,"mass":1.0,"omega":1.0,"ordering":"normal",
  "terms":[{"m":1,"n":1,"re":1.0},{"m":0,"n":0,"re":0.5}]}"#;

fn quartic(lambda: f64) -> String {
    format!(
        r#"{{"hbar":1.0,"mass":1.0,"omega":1.0,"width_b":1.0,"ordering":"weyl_qp",
  "terms":[{{"m":0,"n":2,"re":0.5}},{{"m":2,"n":0,"re":0.5}},{{"m":4,"n":0,"re":{lambda}}}]}}"#
    )
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cspath")).args(args).output().unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&run_ok(args)).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn harmonic_exact(z0: (f64, f64), z1: (f64, f64), t: f64) -> (f64, f64) {
    // exp(-i t/2 + e^{-it} z0 conj(z1) - |z0|^2/2 - |z1|^2/2)
    let (c, s) = (t.cos(), -t.sin());
    let prod = (z0.0 * z1.0 + z0.1 * z1.1, z0.1 * z1.0 - z0.0 * z1.1);
    let re = c * prod.0 - s * prod.1 - 0.5 * (z0.0 * z0.0 + z0.1 * z0.1 + z1.0 * z1.0 + z1.1 * z1.1);
    let im = s * prod.0 + c * prod.1 - 0.5 * t;
    (re.exp() * im.cos(), re.exp() * im.sin())
}

fn k_of(v: &Value) -> (f64, f64) {
    (v["re_K"].as_f64().unwrap(), v["im_K"].as_f64().unwrap())
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

#[test]
fn symbols_of_harmonic_and_quartic() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.json", HARMONIC);
    let v = json(&["symbols", "--hamiltonian", p(&h), "--format", "json"]);
    // H_W = (q^2 + p^2)/2 with no constant; H_Q and H_P shift it by -/+ 1/2.
    let constant = |name: &str| {
        v[name]
            .as_array()
            .unwrap()
            .iter()
            .find(|t| t["q"] == 0 && t["p"] == 0)
            .map_or(0.0, |t| t["re"].as_f64().unwrap())
    };
    assert!(constant("H_W").abs() < 1e-14);
    assert!((constant("H_Q") - 0.5).abs() < 1e-14);
    assert!((constant("H_P") + 0.5).abs() < 1e-14);

    let q = write(&dir, "q.json", &quartic(0.25));
    let text = run_ok(&["symbols", "--hamiltonian", p(&q)]);
    assert!(text.contains("H_W = "));
    assert!(text.contains("q^4"));
    let v = json(&["symbols", "--hamiltonian", p(&q), "--format", "json"]);
    let quartic_w = v["H_W"].as_array().unwrap().iter().find(|t| t["q"] == 4).unwrap();
    assert!((quartic_w["re"].as_f64().unwrap() - 0.25).abs() < 1e-14);
}

#[test]
fn symbols_of_empty_hamiltonian() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "e.json", r#"{"hbar":1.0,"mass":1.0,"omega":1.0,"ordering":"normal","terms":[]}"#);
    let text = run_ok(&["symbols", "--hamiltonian", p(&h)]);
    assert!(text.contains("H_Q = 0"));
    assert!(text.contains("H_W = 0"));
}

#[test]
fn harmonic_compare_reports_all_forms() {
    let v = json(&["harmonic-compare", "--N", "100", "--format", "json"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let mu = |form: &str| {
        let r = rows.iter().find(|r| r["form"] == form).unwrap();
        (r["re_mu"].as_f64().unwrap(), r["im_mu"].as_f64().unwrap())
    };
    let one = (2.0 * std::f64::consts::PI).cos();
    // Q and P overshoot and undershoot; W stays on the unit circle.
    assert!(dist(mu("W"), (1.0, 0.0)) < dist(mu("Q"), (one, 0.0)));
    assert!(dist(mu("W"), (1.0, 0.0)) < dist(mu("P"), (one, 0.0)));
    let (re, im) = mu("W");
    assert!((re.hypot(im) - 1.0).abs() < 1e-12);
}

#[test]
fn harmonic_compare_at_zero_frequency() {
    let v = json(&["harmonic-compare", "--omega", "0", "--N", "4,8", "--format", "json"]);
    for r in v["rows"].as_array().unwrap() {
        assert!((r["re_mu"].as_f64().unwrap() - 1.0).abs() < 1e-14);
        assert!(r["im_mu"].as_f64().unwrap().abs() < 1e-14);
    }
}

#[test]
fn harmonic_compare_csv_header() {
    let text = run_ok(&["harmonic-compare", "--N", "10"]);
    let header = text.lines().next().unwrap();
    assert_eq!(header, "N,form,re_K,im_K,abs_err_vs_oracle,re_mu,im_mu");
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn propagate_exact_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.json", HARMONIC);
    let v = json(&["propagate", "--hamiltonian", p(&h), "--z0", "0.5,0.1", "--z1", "0.2,-0.3", "--T", "1.3"]);
    let want = harmonic_exact((0.5, 0.1), (0.2, -0.3), 1.3);
    assert!(dist(k_of(&v), want) < 1e-10);
}

#[test]
fn propagate_at_zero_time_is_overlap() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", &quartic(0.1));
    let v = json(&["propagate", "--hamiltonian", p(&q), "--z0", "0.4", "--z1", "0.1,0.2", "--T", "0"]);
    let want = harmonic_exact((0.4, 0.0), (0.1, 0.2), 0.0);
    assert!(dist(k_of(&v), want) < 1e-14);
}

#[test]
fn propagate_sliced_weyl_form() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.json", HARMONIC);
    let args = ["propagate", "--hamiltonian", p(&h), "--form", "w", "--N", "2", "--z0", "0.5", "--z1", "0.3,0.4", "--T", "0.5"];
    let v = json(&args);
    assert_eq!(v["N"], 2);
    assert!(v["grid"]["points_per_plane"].as_u64().unwrap() > 0);
    // Two slices carry a visible time-step error but stay close.
    let want = harmonic_exact((0.5, 0.0), (0.3, 0.4), 0.5);
    assert!(dist(k_of(&v), want) < 5e-2);
}

#[test]
fn semiclassical_weyl_is_exact_for_harmonic() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.json", HARMONIC);
    let v = json(&[
        "semiclassical", "--hamiltonian", p(&h), "--form", "w", "--z0", "0.5,0.2", "--z1", "-0.1,0.3", "--T", "0.8", "--cutoff", "60",
    ]);
    let want = harmonic_exact((0.5, 0.2), (-0.1, 0.3), 0.8);
    assert!(dist(k_of(&v), want) < 1e-9);
    assert!(v["exact"]["abs_err"].as_f64().unwrap() < 1e-9);
    assert_eq!(v["trajectories"].as_array().unwrap().len(), 1);
}

#[test]
fn repeated_runs_are_identical() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", &quartic(0.05));
    let args = ["semiclassical", "--hamiltonian", p(&q), "--z0", "0.5", "--z1", "0.3,0.4", "--T", "0.7", "--format", "csv"];
    assert_eq!(run_ok(&args), run_ok(&args));
}

#[test]
fn output_file_matches_stdout() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("table.csv");
    let stdout = run_ok(&["harmonic-compare", "--N", "6,12"]);
    run_ok(&["harmonic-compare", "--N", "6,12", "--out", p(&out)]);
    assert_eq!(fs::read_to_string(&out).unwrap(), stdout);
}

#[test]
fn wigner_u_csv_layout() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.json", HARMONIC);
    let out = run(&[
        "wigner-u", "--hamiltonian", p(&h), "--T", "0.5", "--points", "12", "--cutoff", "120", "--half-width", "3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "q,p,re_U,im_U,re_husimi,im_husimi");
    assert_eq!(lines.count(), 144);
}

#[test]
fn exit_code_for_bad_input() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"hbar":1.0}"#);
    assert_eq!(run(&["symbols", "--hamiltonian", p(&bad)]).status.code(), Some(1));
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["symbols", "--hamiltonian", p(&missing)]).status.code(), Some(1));
    assert_eq!(run(&["harmonic-compare", "--T", "-1"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn exit_code_for_convergence_failure() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", &quartic(5.0));
    let out = run(&["propagate", "--hamiltonian", p(&q), "--z0", "0.5", "--z1", "0.5", "--T", "1", "--cutoff", "20"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn exit_code_for_numeric_failure() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.json", HARMONIC);
    // A coherent state this far out does not fit in 20 number states.
    let out = run(&["propagate", "--hamiltonian", p(&h), "--z0", "8", "--z1", "8", "--T", "1", "--cutoff", "20"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}
