//! Quadrature rules: fixed-order Gauss–Legendre for smooth panels and a
//! tanh-sinh rule for integrands with algebraic endpoint singularities.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::order::EvalResult;

/// Gauss–Legendre rule of fixed order on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes are the roots of `P_n`, found by Newton iteration from the
    /// Tricomi initial guess; weights `2 / ((1 - x²) P_n'(x)²)`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 4.0 * f64::EPSILON * x.abs().max(1e-300) {
                    break;
                }
            }
            let dp = legendre_with_derivative(n, x).1;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Largest |t| of the tanh-sinh grid; beyond it weights are below 1e-35.
const TANH_SINH_T_MAX: f64 = 4.0;

/// Tanh-sinh (double exponential) quadrature of `f` over `[a, b]`.
///
/// Halves the step until successive estimates differ by at most `tol`
/// (or `max_level` is reached). The returned error is that difference,
/// floored by a rounding estimate. Abscissae near the endpoints are
/// formed from their distance to the endpoint, so `f` sees arguments
/// like `a + 1e-30` rather than `a`.
pub fn tanh_sinh<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_level: u32,
) -> EvalResult {
    let half = 0.5 * (b - a);
    let mut abs_sum = 0.0;
    let mut eval = |t: f64, f: &mut F| -> f64 {
        let q = FRAC_PI_2 * t.sinh();
        let cq = q.cosh();
        let w = FRAC_PI_2 * t.cosh() / (cq * cq);
        // distance of the node from the nearer endpoint, in units of `half`
        let d = 1.0 / (q.abs().exp() * cq);
        if d == 0.0 || w == 0.0 {
            return 0.0;
        }
        let x = if t < 0.0 { a + half * d } else { b - half * d };
        let v = w * f(x);
        abs_sum += v.abs();
        v
    };

    let mut h = 1.0;
    let mut sum = eval(0.0, &mut f);
    let mut k = 1.0;
    while k * h <= TANH_SINH_T_MAX {
        sum += eval(k * h, &mut f) + eval(-k * h, &mut f);
        k += 1.0;
    }
    let mut estimate = half * h * sum;
    let mut err = f64::INFINITY;

    for level in 1..=max_level {
        h *= 0.5;
        let mut fresh = 0.0;
        let mut t = h;
        while t <= TANH_SINH_T_MAX {
            fresh += eval(t, &mut f) + eval(-t, &mut f);
            t += 2.0 * h;
        }
        sum += fresh;
        let next = half * h * sum;
        err = (next - estimate).abs();
        estimate = next;
        if level >= 3 && err <= tol {
            break;
        }
    }
    let rounding = 8.0 * f64::EPSILON * half.abs() * h * abs_sum;
    EvalResult::new(estimate, err.max(rounding))
}
