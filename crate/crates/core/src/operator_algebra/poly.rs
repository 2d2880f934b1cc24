use std::collections::BTreeMap;

use num_complex::Complex64;

/// Sparse bivariate coefficient table keyed by exponent pairs.
pub type Terms = BTreeMap<(u32, u32), Complex64>;

pub(crate) fn prune(terms: &mut Terms) {
    terms.retain(|_, c| *c != Complex64::new(0.0, 0.0));
}

pub(crate) fn add_term(terms: &mut Terms, key: (u32, u32), c: Complex64) {
    if c == Complex64::new(0.0, 0.0) {
        return;
    }
    let slot = terms.entry(key).or_insert(Complex64::new(0.0, 0.0));
    *slot += c;
}

/// Commutative product of two coefficient tables.
pub(crate) fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (&(i, j), &x) in a {
        for (&(k, l), &y) in b {
            add_term(&mut out, (i + k, j + l), x * y);
        }
    }
    prune(&mut out);
    out
}

/// Substitutes `first -> x`, `second -> y` in `sum c_{mn} first^m second^n`.
pub(crate) fn substitute(terms: &Terms, x: &Terms, y: &Terms) -> Terms {
    let max_m = terms.keys().map(|k| k.0).max().unwrap_or(0);
    let max_n = terms.keys().map(|k| k.1).max().unwrap_or(0);
    let xs = powers(x, max_m);
    let ys = powers(y, max_n);
    let mut out = Terms::new();
    for (&(m, n), &c) in terms {
        for (&key, &v) in &mul(&xs[m as usize], &ys[n as usize]) {
            add_term(&mut out, key, c * v);
        }
    }
    prune(&mut out);
    out
}

fn powers(x: &Terms, max: u32) -> Vec<Terms> {
    let mut one = Terms::new();
    one.insert((0, 0), Complex64::new(1.0, 0.0));
    let mut out = vec![one];
    for k in 1..=max as usize {
        let next = mul(&out[k - 1], x);
        out.push(next);
    }
    out
}

/// `exp(s d_first d_second)` applied to a polynomial; the series terminates.
pub(crate) fn heat(terms: &Terms, s: f64) -> Terms {
    let mut out = Terms::new();
    for (&(m, n), &c) in terms {
        let mut coef = 1.0;
        for k in 0..=m.min(n) {
            if k > 0 {
                let kf = k as f64;
                coef *= s * (m - k + 1) as f64 * (n - k + 1) as f64 / kf;
            }
            add_term(&mut out, (m - k, n - k), c * coef);
        }
    }
    prune(&mut out);
    out
}

pub(crate) fn max_abs_diff(a: &Terms, b: &Terms) -> f64 {
    let zero = Complex64::new(0.0, 0.0);
    a.keys()
        .chain(b.keys())
        .map(|k| (a.get(k).copied().unwrap_or(zero) - b.get(k).copied().unwrap_or(zero)).norm())
        .fold(0.0, f64::max)
}

pub(crate) fn chop(terms: &Terms, tol: f64) -> Terms {
    terms
        .iter()
        .filter(|(_, c)| c.norm() > tol)
        .map(|(k, c)| (*k, *c))
        .collect()
}
