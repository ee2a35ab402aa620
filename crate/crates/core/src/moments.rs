//! Moments of Legendre polynomials against sin(theta) dtheta on [0, pi/2],
//! equivalently against dt on [0, 1].
//!
//! For integer powers the integrand is a polynomial of degree j*l in
//! t = cos(theta), so a Gauss-Legendre rule with ceil((j*l + 2)/2) nodes
//! integrates it exactly; the asymptotic statements about l^2 M_j(l) can
//! then be checked in exact arithmetic. The absolute fifth moment, whose
//! integrand |P_l|^5 is not polynomial, goes through the adaptive
//! bisection integrator instead.

use rayon::prelude::*;

use crate::error::Error;
use crate::quad::{self, bessel_moment, QuadValue, QuadratureRule};
use crate::specfun::bessel::j0;
use crate::specfun::legendre::eval_unchecked;

/// One row of a Legendre moment table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRecord {
    pub l: u32,
    pub j: u32,
    /// M_j(l) = int_0^1 P_l(t)^j dt.
    pub value: f64,
    /// Empirical error estimate (node-count bump, or panel refinement for
    /// the composite fallback).
    pub error: f64,
    /// l^2 * value.
    pub scaled: f64,
    /// Bessel moment c_j this row converges to, when one was attached.
    pub limit: Option<f64>,
}

/// Node-count ceiling for the exact route; larger products fall back to
/// composite panels.
const EXACT_DEGREE_LIMIT: u64 = 200_000;

/// M_j(l), exact to roundoff for moderate j*l.
pub fn legendre_moment(l: u32, j: u32) -> MomentRecord {
    assert!(j >= 1, "moment order starts at 1");
    let degree = l as u64 * j as u64;
    if degree > EXACT_DEGREE_LIMIT {
        let est = quad::integrate_theta(
            |theta| eval_unchecked(l, theta.cos()).powi(j as i32),
            (l as usize).max(8),
            12,
        )
        .expect("composite fallback did not settle");
        return record(l, j, est.value, est.error);
    }
    let value = exact_moment(l, j, 0);
    let check = exact_moment(l, j, 8);
    record(l, j, value, (value - check).abs())
}

fn record(l: u32, j: u32, value: f64, error: f64) -> MomentRecord {
    let lf = l as f64;
    MomentRecord {
        l,
        j,
        value,
        error,
        scaled: lf * lf * value,
        limit: None,
    }
}

/// Gauss-Legendre in t over [0, 1] with `extra` nodes beyond exactness.
fn exact_moment(l: u32, j: u32, extra: usize) -> f64 {
    let degree = l as u64 * j as u64;
    let n = (degree / 2 + 1) as usize + extra;
    let rule = QuadratureRule::gauss_legendre(n);
    // Map [-1, 1] -> [0, 1].
    let mut acc = 0.0;
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let t = 0.5 * (x + 1.0);
        acc += w * eval_unchecked(l, t).powi(j as i32);
    }
    0.5 * acc
}

/// Scaled moment table for odd j >= 3 over even degrees, with the Bessel
/// moment c_j attached as the limit column.
pub fn scaled_moment_table(j: u32, degrees: &[u32]) -> Result<Vec<MomentRecord>, Error> {
    if j < 3 || j.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "scaled table needs odd j >= 3, got {j}"
        )));
    }
    if let Some(&odd) = degrees.iter().find(|&&l| l % 2 != 0) {
        return Err(Error::Domain(format!(
            "scaled table expects even degrees, got {odd}"
        )));
    }
    let limit = bessel_moment(j)?;
    // Degrees evaluate in parallel; collect preserves input order.
    Ok(degrees
        .par_iter()
        .map(|&l| {
            let mut rec = legendre_moment(l, j);
            rec.limit = Some(limit.value);
            rec
        })
        .collect())
}

/// int_0^{pi/2} |P_l(cos theta)|^5 sin(theta) dtheta, by adaptive bisection
/// in t (the integrand has C^4 kinks at the zeros of P_l).
pub fn abs_moment5(l: u32) -> Result<QuadValue, Error> {
    assert!(l >= 1);
    let f = |t: f64| eval_unchecked(l, t).abs().powi(5);
    quad::adaptive_integrate(&f, 0.0, 1.0, 1e-12)
}

/// Final-remark diagnostics for the uniform-argument marginal sqrt(2l+1) P_l(t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvenMomentDiagnostics {
    pub l: u32,
    /// sqrt(l) * E[(sqrt(2l+1) P_l)^3]; stays bounded as l grows.
    pub m3_scaled: f64,
    /// E[(sqrt(2l+1) P_l)^4] / ln(l); stabilizes to a positive constant.
    pub m4_scaled: f64,
}

pub fn even_moment_diagnostics(l: u32) -> EvenMomentDiagnostics {
    assert!(
        l >= 2 && l.is_multiple_of(2),
        "diagnostics defined for even l >= 2"
    );
    let lf = l as f64;
    let norm = 2.0 * lf + 1.0;
    let m3 = legendre_moment(l, 3).value;
    let m4 = legendre_moment(l, 4).value;
    EvenMomentDiagnostics {
        l,
        m3_scaled: lf.sqrt() * norm.powf(1.5) * m3,
        m4_scaled: norm * norm * m4 / lf.ln(),
    }
}

/// Main-term moment with P_l replaced by its Hilb approximation:
/// int_0^{pi/2} (theta/sin theta)^{j/2-1} J0((l+1/2) theta)^j theta dtheta.
/// Used to confront the exact route with the scaling-limit route.
pub fn hilb_route_moment(l: u32, j: u32) -> f64 {
    let big_l = l as f64 + 0.5;
    let power = j as f64 / 2.0 - 1.0;
    let f = |theta: f64| {
        let ratio = if theta < 1e-8 {
            1.0 + theta * theta / 6.0
        } else {
            theta / theta.sin()
        };
        ratio.powf(power) * j0(big_l * theta).powi(j as i32) * theta
    };
    let rule = QuadratureRule::gauss_legendre(12);
    let panels = 4 * l as usize;
    let h = std::f64::consts::FRAC_PI_2 / panels as f64;
    let mut acc = 0.0;
    for i in 0..panels {
        let a = i as f64 * h;
        acc += rule.integrate(a, a + h, f);
    }
    acc
}
