//! Gauss–Legendre rules on the reference interval [-1, 1] and the Legendre
//! polynomials they are built from.

use crate::error::{Error, Result};

/// A `q`-point Gauss–Legendre rule on [-1, 1], exact for polynomials of
/// degree up to `2q - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Iterates `(node, weight)` pairs in increasing node order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// Integrates `f` over `[lo, hi]` with the rule mapped affinely.
    pub fn integrate(&self, lo: f64, hi: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        half * self.iter().map(|(xi, w)| w * f(mid + half * xi)).sum::<f64>()
    }
}

/// Builds the `q`-point Gauss–Legendre rule by Newton iteration on `P_q`.
pub fn gauss_rule(q: usize) -> Result<QuadratureRule> {
    if q == 0 {
        return Err(Error::invalid("quadrature order must be at least 1"));
    }
    let mut nodes = vec![0.0; q];
    let mut weights = vec![0.0; q];
    let n = q as f64;
    for i in 0..q.div_ceil(2) {
        // Tricomi initial guess for the i-th largest root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(q, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(q, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[q - 1 - i] = x;
        nodes[i] = -x;
        weights[q - 1 - i] = w;
        weights[i] = w;
    }
    if q % 2 == 1 {
        nodes[q / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights })
}

/// `P_n(x)` and `P_n'(x)` by the three-term recurrence.
pub fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p_prev = 1.0;
    let mut p = x;
    for m in 2..=n {
        let m = m as f64;
        let next = ((2.0 * m - 1.0) * x * p - (m - 1.0) * p_prev) / m;
        p_prev = p;
        p = next;
    }
    let n_f = n as f64;
    let d = if (1.0 - x * x).abs() < 1e-300 {
        // Endpoint: P_n'(+-1) = (+-1)^(n-1) n(n+1)/2.
        let sign = if x > 0.0 || n % 2 == 1 { 1.0 } else { -1.0 };
        sign * n_f * (n_f + 1.0) / 2.0
    } else {
        n_f * (p_prev - x * p) / (1.0 - x * x)
    };
    (p, d)
}

/// Fills `values[m] = P_m(x)` and `derivs[m] = P_m'(x)` for `m = 0..values.len()`.
pub fn legendre_table(x: f64, values: &mut [f64], derivs: &mut [f64]) {
    let len = values.len();
    debug_assert_eq!(len, derivs.len());
    if len == 0 {
        return;
    }
    values[0] = 1.0;
    derivs[0] = 0.0;
    if len == 1 {
        return;
    }
    values[1] = x;
    derivs[1] = 1.0;
    for m in 2..len {
        let mf = m as f64;
        values[m] = ((2.0 * mf - 1.0) * x * values[m - 1] - (mf - 1.0) * values[m - 2]) / mf;
        // P_m' = P_{m-2}' + (2m - 1) P_{m-1}
        derivs[m] = derivs[m - 2] + (2.0 * mf - 1.0) * values[m - 1];
    }
}
