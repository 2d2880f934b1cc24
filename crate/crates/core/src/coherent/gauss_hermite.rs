use nalgebra::{DMatrix, SymmetricEigen};

/// Gauss–Hermite rule for `∫ exp(-x^2) f(x) dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussHermite {
    /// Nodes from the Jacobi matrix; weights from the Christoffel sum of the
    /// orthonormal Hermite polynomials, which stays accurate at the extreme nodes.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Hermite rule needs at least one node");
        let jac = DMatrix::from_fn(n, n, |i, j| {
            if i + 1 == j || j + 1 == i {
                (i.max(j) as f64 / 2.0).sqrt()
            } else {
                0.0
            }
        });
        let mut nodes: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
        nodes.sort_by(f64::total_cmp);
        // symmetrize away eigen-solver round-off
        for i in 0..n / 2 {
            let x = 0.5 * (nodes[n - 1 - i] - nodes[i]);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        let weights = nodes.iter().map(|&x| 1.0 / christoffel_sum(x, n)).collect();
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

fn christoffel_sum(x: f64, n: usize) -> f64 {
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25);
    let mut sum = cur * cur;
    for k in 0..n - 1 {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        sum += cur * cur;
    }
    sum
}
