//! Defect (signed area) of Gaussian random spherical harmonics.
//!
//! A degree-l random spherical harmonic is the Gaussian field
//! f_l = (2l+1)^{-1/2} sum_m a_lm Y_lm with i.i.d. standard normal
//! coefficients; its defect is the area of the region where it is positive
//! minus the area where it is negative. The defect vanishes identically
//! for odd l and has mean zero for all l; for even l its variance is
//!
//! ```text
//! Var(D_l) = 32 pi int_0^{pi/2} arcsin(P_l(cos theta)) sin(theta) dtheta
//!          = C / l^2 (1 + o(1)),
//! C = 32 pi int_0^inf psi (arcsin(J0(psi)) - J0(psi)) dpsi > 32/sqrt(27).
//! ```
//!
//! This crate evaluates both sides of that story at desk scale:
//!
//! - [`specfun`]: Legendre P_l, the orthonormal associated Legendre basis,
//!   Bessel J0, arcsine Taylor coefficients, Hilb approximation.
//! - [`quad`]: Gauss-Legendre rules, adaptive panels, and the zero-partition,
//!   series-accelerated integrator for the conditionally convergent
//!   Bessel moments.
//! - [`wigner`]: all-zero Wigner 3j / Clebsch-Gordan squares, which give the
//!   third Legendre moment exactly at finite l.
//! - [`moments`]: Legendre moment tables l^2 M_j(l) -> c_j, the uniform
//!   fifth-absolute-moment bound, and log-growth diagnostics of the fourth
//!   moment.
//! - [`constants`]: the exact variance at finite l, the limit constant C by
//!   two independent routes, and its proven bounds.
//! - [`randfield`]: reproducible Monte Carlo simulation of the fields
//!   themselves, defect measurement, and variance estimation.
//!
//! All computational paths are pure; shared tables are immutable after
//! construction, so everything can be called concurrently.

pub mod constants;
pub mod error;
pub mod moments;
pub mod quad;
pub mod randfield;
pub mod specfun;
pub mod util;
pub mod wigner;

pub use error::Error;
