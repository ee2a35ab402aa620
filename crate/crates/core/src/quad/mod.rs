//! Quadrature engines.
//!
//! Gauss-Legendre rules (exact on polynomials up to degree 2n-1), composite
//! panel integration with refinement-based error estimates, an adaptive
//! bisection integrator for integrands with localized structure, and the
//! oscillatory zero-partition integrator behind the Bessel moments.

pub mod oscillatory;

use std::f64::consts::FRAC_PI_2;

use crate::error::Error;
use crate::specfun::legendre::legendre_pair;

pub use oscillatory::{
    bessel_moment, c1_direct, BesselMomentResult, ConvergenceMode, OscillatorySum,
};

/// A value together with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadValue {
    pub value: f64,
    pub error: f64,
}

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// n-point rule; nodes found by Newton iteration on P_n, each converged
    /// to ~1e-15 relative, then symmetrized about 0.
    pub fn gauss_legendre(n: usize) -> QuadratureRule {
        assert!(n >= 1, "rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let half = n.div_ceil(2);
        for i in 0..half {
            // Chebyshev-flavored initial guess for the i-th root from the top.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_pair(n as u32, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_pair(n as u32, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // x is the (n-1-i)-th node in ascending order; mirror for -x.
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
            nodes[i] = -x;
            weights[i] = w;
        }
        if n % 2 == 1 {
            // Middle node is exactly zero by symmetry.
            nodes[n / 2] = 0.0;
            let (_, dp) = legendre_pair(n as u32, 0.0);
            weights[n / 2] = 2.0 / (dp * dp);
        }
        QuadratureRule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integral of f over [a, b] with this rule mapped affinely.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let scale = 0.5 * (b - a);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + scale * x);
        }
        acc * scale
    }
}

/// Composite Gauss-Legendre value of `int_0^{pi/2} f(theta) sin(theta) dtheta`.
///
/// Starts from `panels` equal panels of `nodes_per_panel` points and doubles
/// the panel count until two successive refinements agree to 1e-13; the
/// reported error is the last observed change.
pub fn integrate_theta<F: Fn(f64) -> f64>(
    f: F,
    panels: usize,
    nodes_per_panel: usize,
) -> Result<QuadValue, Error> {
    const TOL: f64 = 1e-13;
    const MAX_DOUBLINGS: usize = 12;
    assert!(panels >= 1 && nodes_per_panel >= 1);
    let rule = QuadratureRule::gauss_legendre(nodes_per_panel);
    let weighted = |theta: f64| f(theta) * theta.sin();
    let mut p = panels;
    let mut prev = composite(&rule, FRAC_PI_2, p, &weighted);
    for _ in 0..MAX_DOUBLINGS {
        p *= 2;
        let next = composite(&rule, FRAC_PI_2, p, &weighted);
        let change = (next - prev).abs();
        if change <= TOL {
            return Ok(QuadValue {
                value: next,
                error: change,
            });
        }
        prev = next;
    }
    Err(Error::NonConvergence(format!(
        "theta integral still moving after {MAX_DOUBLINGS} panel doublings"
    )))
}

fn composite<F: Fn(f64) -> f64>(rule: &QuadratureRule, end: f64, panels: usize, f: &F) -> f64 {
    let h = end / panels as f64;
    let mut acc = 0.0;
    for i in 0..panels {
        let a = i as f64 * h;
        acc += rule.integrate(a, a + h, f);
    }
    acc
}

/// Adaptive bisection by greedy global refinement: the panel with the
/// largest embedded-rule error estimate is split until the estimates sum
/// below `tol`. Splitting order is a deterministic function of the
/// integrand, so results are reproducible.
pub fn adaptive_integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadValue, Error> {
    const MAX_PANELS: usize = 50_000;

    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        error: f64,
        seq: u64,
    }
    impl Panel {
        fn key(&self) -> (f64, u64) {
            (self.error, self.seq)
        }
    }

    let coarse = QuadratureRule::gauss_legendre(12);
    let fine = QuadratureRule::gauss_legendre(24);
    let mut seq = 0u64;
    let mut make = |a: f64, b: f64, f: &F| {
        let lo = coarse.integrate(a, b, f);
        let hi = fine.integrate(a, b, f);
        seq += 1;
        Panel {
            a,
            b,
            value: hi,
            error: (hi - lo).abs(),
            seq,
        }
    };

    let mut panels = vec![make(a, b, f)];
    loop {
        let total_error: f64 = panels.iter().map(|p| p.error).sum();
        if total_error <= tol {
            let value = panels.iter().map(|p| p.value).sum();
            return Ok(QuadValue {
                value,
                error: total_error,
            });
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::NonConvergence(format!(
                "adaptive refinement exceeded {MAX_PANELS} panels (error {total_error:.3e})"
            )));
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|(_, p), (_, q)| {
                p.key()
                    .0
                    .total_cmp(&q.key().0)
                    .then(p.key().1.cmp(&q.key().1))
            })
            .map(|(i, _)| i)
            .expect("panel list is never empty");
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Err(Error::NonConvergence(
                "adaptive panel collapsed below floating-point resolution".into(),
            ));
        }
        panels.push(make(a, mid, f));
        panels.push(make(mid, b, f));
    }
}
