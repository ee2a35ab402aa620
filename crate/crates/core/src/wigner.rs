//! Wigner 3j symbols with all magnetic quantum numbers zero, and the
//! squared Clebsch-Gordan diagonal they furnish.
//!
//! Only squares of the coefficients enter the moment identities, so the
//! sign convention relating CG coefficients to 3j symbols never matters
//! here; we keep the standard (-1)^{l1-l2} sqrt(2 l3 + 1) relation, which
//! is a pure phase at m = 0.

use crate::error::Error;

/// (l1 l2 l3; 0 0 0) via the closed form with log-factorial accumulation.
///
/// With 2g = l1 + l2 + l3 even and the triangle condition satisfied,
///
/// ```text
/// (l1 l2 l3; 0 0 0) = (-1)^g g! / ((g-l1)! (g-l2)! (g-l3)!)
///                     * sqrt( (2g-2l1)! (2g-2l2)! (2g-2l3)! / (2g+1)! )
/// ```
///
/// and the symbol vanishes whenever the parity or triangle conditions fail.
/// Log-space evaluation keeps degrees up to 10^4 free of overflow.
pub fn threej_zero(l1: u32, l2: u32, l3: u32) -> f64 {
    let total = l1 + l2 + l3;
    if !total.is_multiple_of(2) {
        return 0.0;
    }
    if l1 + l2 < l3 || l2 + l3 < l1 || l3 + l1 < l2 {
        return 0.0;
    }
    let g = total / 2;
    let ln_abs = ln_factorial(g as u64)
        - ln_factorial((g - l1) as u64)
        - ln_factorial((g - l2) as u64)
        - ln_factorial((g - l3) as u64)
        + 0.5
            * (ln_factorial(2 * (g - l1) as u64)
                + ln_factorial(2 * (g - l2) as u64)
                + ln_factorial(2 * (g - l3) as u64)
                - ln_factorial((2 * g + 1) as u64));
    let sign = if g.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * ln_abs.exp()
}

/// {C^{l0}_{l0 l0}}^2 = (2l+1) (l l l; 0 0 0)^2 for even l.
pub fn cg_squared_diag(l: u32) -> Result<f64, Error> {
    if !l.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "diagonal CG coefficient vanishes for odd l = {l}; treat as 0"
        )));
    }
    let tj = threej_zero(l, l, l);
    Ok((2.0 * l as f64 + 1.0) * tj * tj)
}

/// ln(n!), exact table through 20! and a Stirling series beyond; both
/// branches agree to ~1e-15 relative where they meet.
pub(crate) fn ln_factorial(n: u64) -> f64 {
    if n <= 20 {
        let mut f = 1u64;
        for k in 2..=n {
            f *= k;
        }
        (f as f64).ln()
    } else {
        ln_gamma_stirling(n as f64 + 1.0)
    }
}

fn ln_gamma_stirling(x: f64) -> f64 {
    // ln Gamma(x) = (x - 1/2) ln x - x + ln(2 pi)/2 + 1/(12x) - 1/(360x^3) + ...
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    (x - 0.5) * x.ln() - x
        + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn odd_sum_vanishes() {
        assert_eq!(threej_zero(1, 1, 1), 0.0);
        assert_eq!(threej_zero(2, 2, 1), 0.0);
    }

    #[test]
    fn triangle_violation_vanishes() {
        assert_eq!(threej_zero(1, 1, 4), 0.0);
        assert_eq!(threej_zero(0, 3, 5), 0.0);
    }

    #[test]
    fn empty_coupling_is_one() {
        assert_eq!(threej_zero(0, 0, 0), 1.0);
    }

    #[test]
    fn two_two_two_closed_form() {
        let want = -(2.0_f64 / 35.0).sqrt();
        assert!((threej_zero(2, 2, 2) - want).abs() < 1e-14);
    }

    #[test]
    fn known_small_symbols() {
        // (1 1 2; 0 0 0) = sqrt(2/15), (2 2 4; 0 0 0) = sqrt(2/35) * 3/sqrt(9)...
        assert!((threej_zero(1, 1, 2) - (2.0_f64 / 15.0).sqrt()).abs() < 1e-14);
        assert!((threej_zero(1, 1, 0) - (-(1.0_f64 / 3.0).sqrt())).abs() < 1e-14);
        assert!((threej_zero(2, 1, 1) - (2.0_f64 / 15.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn magnitude_bounded_by_one() {
        for l1 in 0..20u32 {
            for l2 in 0..20u32 {
                for l3 in 0..20u32 {
                    assert!(threej_zero(l1, l2, l3).abs() <= 1.0 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn no_overflow_at_high_degree() {
        let v = threej_zero(10_000, 10_000, 10_000);
        assert!(v.is_finite());
        assert!(v.abs() < 1.0);
    }

    #[test]
    fn diagonal_cg_squares() {
        assert_eq!(cg_squared_diag(0).unwrap(), 1.0);
        assert!((cg_squared_diag(2).unwrap() - 2.0 / 7.0).abs() < 1e-14);
        assert!(cg_squared_diag(3).is_err());
    }

    #[test]
    fn diagonal_cg_approaches_third_bessel_moment() {
        // l^2 {C^{l0}_{l0l0}}^2 / (2l+1) -> c_3 = 2/(pi sqrt(3)). The l^2
        // factor makes this the scaled third Legendre moment, via the exact
        // identity checked in `moments`.
        let c3 = 2.0 / (PI * 3.0_f64.sqrt());
        let dev = |l: u32| {
            let lf = l as f64;
            let v = lf * lf * cg_squared_diag(l).unwrap() / (2.0 * lf + 1.0);
            (v - c3).abs()
        };
        assert!(dev(200) < 0.02 * c3, "relative deviation {}", dev(200) / c3);
        // Deviations shrink monotonically along a doubling ladder.
        let ladder = [50u32, 100, 200, 400];
        for pair in ladder.windows(2) {
            assert!(dev(pair[1]) < dev(pair[0]));
        }
    }

    #[test]
    fn ln_factorial_matches_exact_products() {
        let mut exact = 0.0;
        for n in 1..=200u64 {
            exact += (n as f64).ln();
            let got = ln_factorial(n);
            assert!(
                (got - exact).abs() < 1e-12 * exact.max(1.0),
                "n={n}: {got} vs {exact}"
            );
        }
    }
}
