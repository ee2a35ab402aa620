//! Fully normalized associated Legendre functions.
//!
//! `assoc_legendre_normalized(l, m, t)` returns
//!
//! ```text
//! Pbar_l^m(t) = sqrt( (2l+1)/(4 pi) * (l-m)!/(l+m)! ) * P_l^m(t)
//! ```
//!
//! (Condon-Shortley phase included), so that the real basis
//!
//! ```text
//! Y_{l0}        = Pbar_l^0
//! Y_{lm}, m > 0 = sqrt(2) * Pbar_l^m * cos(m phi)
//! Y_{l,-m}      = sqrt(2) * Pbar_l^m * sin(m phi)
//! ```
//!
//! is orthonormal on the unit sphere. The normalization is pinned by
//! requiring the synthesized random field to have covariance P_l(cos d);
//! `randfield` tests verify that numerically.
//!
//! The recurrence acts on the normalized values directly so nothing
//! overflows even at degree several thousand.

use std::f64::consts::PI;

use crate::error::Error;

/// Pbar_l^m(t) for 0 <= m <= l, |t| <= 1.
pub fn assoc_legendre_normalized(l: u32, m: u32, t: f64) -> Result<f64, Error> {
    if m > l {
        return Err(Error::Domain(format!("order m={m} exceeds degree l={l}")));
    }
    if t.abs() > 1.0 + 1e-12 {
        return Err(Error::Domain(format!("argument {t} outside [-1, 1]")));
    }
    let t = t.clamp(-1.0, 1.0);
    let row = normalized_row_for_order(l, m, t);
    Ok(row)
}

/// Pbar_l^m(t) for a single (l, m); used by `assoc_legendre_normalized` and,
/// column by column, by the synthesis tables.
fn normalized_row_for_order(l: u32, m: u32, t: f64) -> f64 {
    let s = (1.0 - t * t).max(0.0).sqrt();
    // Sectoral seed Pbar_m^m, built multiplicatively.
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for k in 1..=m {
        let kf = k as f64;
        pmm *= -((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * s;
    }
    if l == m {
        return pmm;
    }
    // Pbar_{m+1}^m = sqrt(2m+3) t Pbar_m^m
    let mut prev = pmm;
    let mut curr = (2.0 * m as f64 + 3.0).sqrt() * t * pmm;
    if l == m + 1 {
        return curr;
    }
    // Pbar_l^m = a_l ( t Pbar_{l-1}^m - Pbar_{l-2}^m / a_{l-1} ),
    // a_l = sqrt( (4l^2 - 1) / (l^2 - m^2) )
    let mf = m as f64;
    let mut a_prev = (((2 * m + 3) * (2 * m + 1)) as f64 / (2.0 * mf + 1.0)).sqrt();
    for n in (m + 2)..=l {
        let nf = n as f64;
        let a_n = ((4.0 * nf * nf - 1.0) / (nf * nf - mf * mf)).sqrt();
        let next = a_n * (t * curr - prev / a_prev);
        prev = curr;
        curr = next;
        a_prev = a_n;
    }
    curr
}

/// All Pbar_l^m(t) for fixed l, m = 0..=l. Shared by the field synthesis,
/// which needs a full order sweep per grid ring.
pub fn assoc_legendre_row(l: u32, t: f64) -> Vec<f64> {
    let t = t.clamp(-1.0, 1.0);
    (0..=l).map(|m| normalized_row_for_order(l, m, t)).collect()
}
