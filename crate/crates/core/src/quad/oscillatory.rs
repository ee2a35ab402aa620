//! Oscillatory integrals of Bessel type on [0, infinity).
//!
//! The integrals handled here have the shape
//!
//! ```text
//! int_0^inf psi g(J0(psi)) dpsi
//! ```
//!
//! with g odd (g(x) = x^j or g(x) = arcsin(x) - x). Beyond the head region
//! the integrand inherits the sign of J0, so integrating exactly between
//! consecutive Bessel zeros produces an (eventually) alternating series of
//! interval contributions. Partial sums are then accelerated with iterated
//! Aitken extrapolation; the acceleration residual doubles as the error
//! estimate. This one mechanism serves both the conditionally convergent
//! j = 3 moment and the absolutely convergent j >= 5 moments, whose direct
//! truncation error decays too slowly (~Psi^{-1/2} for j = 5) for any
//! practical cutoff.

use std::sync::OnceLock;

use crate::error::Error;
use crate::quad::{adaptive_integrate, QuadratureRule};
use crate::specfun::bessel::{j0, j0_zero};

/// Convergence character of a Bessel moment integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceMode {
    Absolute,
    Conditional,
}

/// c_j = int_0^inf psi J0(psi)^j dpsi together with how it was earned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselMomentResult {
    pub j: u32,
    pub value: f64,
    pub mode: ConvergenceMode,
    pub error_estimate: f64,
    /// Bessel-zero intervals consumed past the head region.
    pub partitions: usize,
}

/// Result of a zero-partition + acceleration integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorySum {
    pub value: f64,
    pub error: f64,
    pub partitions: usize,
}

pub(crate) struct OscillatorOptions {
    /// The head [0, z_s] (z_s = first zero >= this cutoff) is integrated
    /// adaptively before the interval series starts.
    pub head_cutoff: f64,
    /// Leading intervals summed directly before acceleration is applied.
    pub accel_start: usize,
    /// Interval budget; exceeding it is a non-convergence error.
    pub max_intervals: usize,
    /// Stability target for successive accelerated estimates.
    pub tol: f64,
}

impl Default for OscillatorOptions {
    fn default() -> Self {
        OscillatorOptions {
            head_cutoff: 0.0,
            accel_start: 5,
            max_intervals: 200,
            tol: 1e-10,
        }
    }
}

const ZERO_TABLE_SIZE: usize = 256;

/// First `ZERO_TABLE_SIZE` positive zeros of J0, filled once and shared.
fn zeros() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| (1..=ZERO_TABLE_SIZE).map(j0_zero).collect())
}

/// Zero-partition integration of psi * g(J0(psi)).
pub(crate) fn oscillatory_integral<G: Fn(f64) -> f64>(
    g: G,
    opts: &OscillatorOptions,
) -> Result<OscillatorySum, Error> {
    let integrand = |psi: f64| psi * g(j0(psi));
    let table = zeros();
    let start = table
        .iter()
        .position(|&z| z >= opts.head_cutoff)
        .ok_or_else(|| Error::NonConvergence("head cutoff beyond the zero table".into()))?;

    let head = adaptive_integrate(&integrand, 0.0, table[start], 1e-13)?;
    let rule = QuadratureRule::gauss_legendre(32);

    let mut direct = head.value;
    let mut sums: Vec<f64> = Vec::new();
    let mut prev = f64::NAN;
    let mut prev2 = f64::NAN;
    let mut residual = f64::INFINITY;
    let mut negligible_run = 0usize;

    for k in 0..opts.max_intervals {
        let idx = start + k;
        if idx + 1 >= table.len() {
            return Err(Error::NonConvergence(
                "ran past the Bessel zero table".into(),
            ));
        }
        let term = rule.integrate(table[idx], table[idx + 1], integrand);
        direct += term;

        if term.abs() < 1e-17 * direct.abs().max(1.0) {
            negligible_run += 1;
            if negligible_run >= 3 {
                // The series has converged numerically; no acceleration needed.
                let error = head.error + 10.0 * term.abs().max(f64::MIN_POSITIVE);
                return Ok(OscillatorySum {
                    value: direct,
                    error,
                    partitions: k + 1,
                });
            }
        } else {
            negligible_run = 0;
        }

        if k < opts.accel_start {
            continue;
        }
        sums.push(direct);
        if sums.len() < 6 {
            continue;
        }
        let (accel, level_residual) = iterated_aitken(&sums);
        let change = (accel - prev).abs();
        let drift = (accel - prev2).abs();
        residual = level_residual.max(change);
        if prev2.is_finite() && change <= opts.tol && drift <= 3.0 * opts.tol {
            let error = (head.error + residual).max(1e-16 * accel.abs());
            return Ok(OscillatorySum {
                value: accel,
                error,
                partitions: k + 1,
            });
        }
        prev2 = prev;
        prev = accel;
    }
    Err(Error::NonConvergence(format!(
        "acceleration did not stabilize within {} zero intervals (last residual {residual:.3e})",
        opts.max_intervals
    )))
}

/// Iterated Aitken delta-squared extrapolation of a partial-sum sequence.
/// Returns the final estimate and the change across the last two levels.
fn iterated_aitken(sums: &[f64]) -> (f64, f64) {
    let mut current = sums.to_vec();
    let mut last = *current.last().expect("non-empty sequence");
    let mut residual = f64::INFINITY;
    let scale = last.abs().max(1.0);
    while current.len() >= 3 {
        let mut next = Vec::with_capacity(current.len() - 2);
        for i in 0..current.len() - 2 {
            let d1 = current[i + 1] - current[i];
            let d2 = current[i + 2] - current[i + 1];
            let den = d2 - d1;
            if den.abs() < 1e-18 * scale {
                next.push(current[i + 2]);
            } else {
                next.push(current[i + 2] - d2 * d2 / den);
            }
        }
        let tail = *next.last().expect("shrinking sequence stays non-empty");
        residual = (tail - last).abs();
        last = tail;
        current = next;
    }
    (last, residual)
}

/// c_j for odd j (j = 3 conditionally convergent, j >= 5 absolutely).
pub fn bessel_moment(j: u32) -> Result<BesselMomentResult, Error> {
    bessel_moment_with(j, &OscillatorOptions::default())
}

pub(crate) fn bessel_moment_with(
    j: u32,
    opts: &OscillatorOptions,
) -> Result<BesselMomentResult, Error> {
    if j.is_multiple_of(2) || j < 3 {
        return Err(Error::Domain(format!(
            "Bessel moment needs odd j >= 3, got {j}"
        )));
    }
    let p = j as i32;
    let sum = oscillatory_integral(|x| x.powi(p), opts)?;
    let mode = if j == 3 {
        ConvergenceMode::Conditional
    } else {
        ConvergenceMode::Absolute
    };
    Ok(BesselMomentResult {
        j,
        value: sum.value,
        mode,
        error_estimate: sum.error,
        partitions: sum.partitions,
    })
}

/// C1 = int_0^inf psi (arcsin(J0) - J0) dpsi, conditionally convergent.
/// The default head region [0, ~20] mirrors the free splitting parameter
/// of the tail analysis; `c1_direct_with_head` lets tests move it.
pub fn c1_direct() -> Result<OscillatorySum, Error> {
    c1_direct_with_head(20.0)
}

pub fn c1_direct_with_head(head_cutoff: f64) -> Result<OscillatorySum, Error> {
    let opts = OscillatorOptions {
        head_cutoff,
        ..OscillatorOptions::default()
    };
    oscillatory_integral(|x| x.asin() - x, &opts)
}
