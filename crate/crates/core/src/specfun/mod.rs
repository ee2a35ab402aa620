//! Special functions: Legendre polynomials, the normalized associated
//! Legendre basis, Bessel J0, arcsine Taylor coefficients and the Hilb
//! approximation with its error envelope.
//!
//! Everything here is pure and stateless; callers may share freely across
//! threads.

pub mod arcsin;
pub mod assoc;
pub mod bessel;
pub mod hilb;
pub mod legendre;

pub use arcsin::{arcsin_coeff, arcsin_coeffs};
pub use assoc::{assoc_legendre_normalized, assoc_legendre_row};
pub use bessel::{bessel_j0, j0_zero};
pub use hilb::{
    envelope_fit_ratio, hilb_approx, hilb_deviation, HilbApproximation, HILB_ENVELOPE_CONSTANT,
};
pub use legendre::{legendre_batch, legendre_eval};
