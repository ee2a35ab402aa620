//! Quadrature grid on the sphere: Gauss-Legendre rings in cos(theta)
//! crossed with a uniform longitude circle.

use std::f64::consts::PI;

use crate::error::Error;
use crate::quad::QuadratureRule;

/// Default ratio of ring count to degree; at least 8 samples per angular
/// wavelength keeps the sign-quadrature noise an order below the defect
/// signal itself.
pub const DEFAULT_RESOLUTION_FACTOR: f64 = 8.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid {
    n_theta: usize,
    n_phi: usize,
    /// cos(theta) of each ring, ascending (south to north).
    theta_cos: Vec<f64>,
    /// Gauss-Legendre ring weights; sum to 2.
    theta_weights: Vec<f64>,
    phi_step: f64,
}

impl SphereGrid {
    /// Grid sized for degree l at resolution factor rho:
    /// n_theta = n_phi = max(64, ceil(rho l)), forced even so antipodal
    /// pairing and the hemisphere split land on grid points.
    pub fn build(l: u32, resolution_factor: f64) -> Result<SphereGrid, Error> {
        if resolution_factor < 4.0 {
            return Err(Error::Resolution(format!(
                "resolution factor {resolution_factor} below the minimum of 4"
            )));
        }
        let n = ((resolution_factor * l as f64).ceil() as usize).max(64);
        let n = n + n % 2;
        SphereGrid::with_size(n, n)
    }

    pub fn with_size(n_theta: usize, n_phi: usize) -> Result<SphereGrid, Error> {
        if !n_phi.is_multiple_of(2) || !n_theta.is_multiple_of(2) {
            return Err(Error::Resolution(format!(
                "grid dimensions must be even, got {n_theta} x {n_phi}"
            )));
        }
        if n_theta == 0 || n_phi == 0 {
            return Err(Error::Resolution("empty grid".into()));
        }
        let rule = QuadratureRule::gauss_legendre(n_theta);
        Ok(SphereGrid {
            n_theta,
            n_phi,
            theta_cos: rule.nodes().to_vec(),
            theta_weights: rule.weights().to_vec(),
            phi_step: 2.0 * PI / n_phi as f64,
        })
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn theta_cos(&self) -> &[f64] {
        &self.theta_cos
    }

    pub fn theta_weights(&self) -> &[f64] {
        &self.theta_weights
    }

    pub fn phi_step(&self) -> f64 {
        self.phi_step
    }

    /// phi of column k.
    pub fn phi(&self, k: usize) -> f64 {
        k as f64 * self.phi_step
    }

    /// Area weight of cell (ring i, column k); the columns share the ring
    /// weight uniformly.
    pub fn cell_weight(&self, ring: usize) -> f64 {
        self.theta_weights[ring] * self.phi_step
    }

    /// Sum of all cell weights; 4 pi up to roundoff.
    pub fn total_weight(&self) -> f64 {
        self.theta_weights.iter().sum::<f64>() * self.phi_step * self.n_phi as f64
    }

    /// Grid point antipodal to (ring, column); exact because the rings are
    /// symmetric in cos(theta) and n_phi is even.
    pub fn antipode(&self, ring: usize, column: usize) -> (usize, usize) {
        (
            self.n_theta - 1 - ring,
            (column + self.n_phi / 2) % self.n_phi,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_cover_the_sphere() {
        let grid = SphereGrid::build(16, 8.0).unwrap();
        assert!((grid.total_weight() - 4.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn build_respects_floor_and_parity() {
        let small = SphereGrid::build(2, 8.0).unwrap();
        assert_eq!(small.n_theta(), 64);
        let odd_product = SphereGrid::build(9, 7.0).unwrap(); // ceil(63) = 63 -> 64
        assert_eq!(odd_product.n_theta() % 2, 0);
    }

    #[test]
    fn rejects_low_resolution_or_odd_dims() {
        assert!(SphereGrid::build(16, 3.9).is_err());
        assert!(SphereGrid::with_size(65, 64).is_err());
        assert!(SphereGrid::with_size(64, 63).is_err());
    }

    #[test]
    fn antipode_is_an_involution_on_grid_points() {
        let grid = SphereGrid::with_size(16, 10).unwrap();
        for ring in 0..16 {
            for col in 0..10 {
                let (ar, ac) = grid.antipode(ring, col);
                assert_eq!(grid.antipode(ar, ac), (ring, col));
                // cos(theta) flips sign exactly.
                assert!((grid.theta_cos()[ring] + grid.theta_cos()[ar]).abs() < 1e-14);
            }
        }
    }
}
