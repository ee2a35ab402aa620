//! Hilb-type uniform approximation of P_l(cos theta).
//!
//! ```text
//! P_l(cos theta) = (theta / sin theta)^{1/2} J0((l + 1/2) theta) + delta(theta)
//! ```
//!
//! with the two-regime envelope
//!
//! ```text
//! |delta(theta)| <= K * theta^{1/2} l^{-3/2}   for theta > 1/l
//! |delta(theta)| <= K * theta^2                for 0 < theta < 1/l
//! ```
//!
//! on [0, pi/2]. The universal constant K below was fitted over a dense
//! calibration grid at l = 50 and then required, unchanged, to dominate the
//! error on disjoint validation grids at l = 100 and l = 200 (that check is
//! re-run in the acceptance suite); the stored value carries ~25% headroom
//! over the worst observed ratio.

use crate::error::Error;
use crate::specfun::bessel;
use crate::specfun::legendre;

/// Fitted universal envelope constant (see module docs).
pub const HILB_ENVELOPE_CONSTANT: f64 = 0.24;

/// Main term and error envelope at (l, theta).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HilbApproximation {
    pub l: u32,
    pub theta: f64,
    pub main_term: f64,
    pub error_bound: f64,
}

/// Hilb approximation for l >= 1, theta in [0, pi/2].
pub fn hilb_approx(l: u32, theta: f64) -> HilbApproximation {
    assert!(l >= 1, "degree must be positive");
    assert!(
        (0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&theta),
        "theta {theta} outside [0, pi/2]"
    );
    let amplitude = theta_over_sin_sqrt(theta);
    let main_term = amplitude * bessel::j0((l as f64 + 0.5) * theta);
    let lf = l as f64;
    let error_bound = if theta > 1.0 / lf {
        HILB_ENVELOPE_CONSTANT * theta.sqrt() * lf.powf(-1.5)
    } else {
        HILB_ENVELOPE_CONSTANT * theta * theta
    };
    HilbApproximation {
        l,
        theta,
        main_term,
        error_bound,
    }
}

/// True deviation P_l(cos theta) - main term; handy for envelope fits.
pub fn hilb_deviation(l: u32, theta: f64) -> Result<f64, Error> {
    let approx = hilb_approx(l, theta);
    let exact = legendre::legendre_eval(l, theta.cos())?;
    Ok(exact - approx.main_term)
}

/// Worst observed |P_l(cos theta) - mainTerm| / envelope-unit over dense
/// grids in both regimes; an envelope constant is valid for this degree iff
/// it is at least this ratio.
pub fn envelope_fit_ratio(l: u32) -> f64 {
    let lf = l as f64;
    let unit = |theta: f64| {
        if theta > 1.0 / lf {
            theta.sqrt() * lf.powf(-1.5)
        } else {
            theta * theta
        }
    };
    let mut worst = 0.0_f64;
    for i in 1..=2000 {
        let theta = std::f64::consts::FRAC_PI_2 * i as f64 / 2000.0;
        let dev = hilb_deviation(l, theta)
            .expect("grid angles are in range")
            .abs();
        worst = worst.max(dev / unit(theta));
    }
    for i in 1..=200 {
        let theta = (1.0 / lf) * i as f64 / 201.0;
        let dev = hilb_deviation(l, theta)
            .expect("grid angles are in range")
            .abs();
        worst = worst.max(dev / unit(theta));
    }
    worst
}

/// (theta / sin theta)^{1/2} with the removable singularity at 0 evaluated
/// by series below 1e-4.
fn theta_over_sin_sqrt(theta: f64) -> f64 {
    if theta < 1e-4 {
        // theta/sin(theta) = 1 + theta^2/6 + 7 theta^4/360 + ...
        let t2 = theta * theta;
        (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0).sqrt()
    } else {
        (theta / theta.sin()).sqrt()
    }
}
