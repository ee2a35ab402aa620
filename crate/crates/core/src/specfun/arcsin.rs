//! Taylor coefficients of the arcsine.
//!
//! ```text
//! arcsin(t) = sum_{k>=0} a_k t^{2k+1},   a_k = (2k)! / (4^k (k!)^2 (2k+1))
//! ```
//!
//! The coefficients are produced by the ratio recurrence
//! `a_{k+1} = a_k (2k+1)^2 / ((2k+2)(2k+3))`, which avoids factorial
//! overflow entirely; a_k ~ k^{-3/2} / (2 sqrt(pi)) for large k.

/// a_k for k >= 1 (a_1 = 1/6).
pub fn arcsin_coeff(k: u32) -> f64 {
    assert!(k >= 1, "coefficient index starts at 1");
    let mut a = 1.0 / 6.0;
    for i in 1..k {
        a *= ratio(i);
    }
    a
}

/// a_1, ..., a_m in one pass.
pub fn arcsin_coeffs(m: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(m);
    let mut a = 1.0 / 6.0;
    for k in 1..=m as u32 {
        out.push(a);
        a *= ratio(k);
    }
    out
}

fn ratio(k: u32) -> f64 {
    let kf = k as f64;
    let odd = 2.0 * kf + 1.0;
    odd * odd / ((2.0 * kf + 2.0) * (2.0 * kf + 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficients() {
        assert!((arcsin_coeff(1) - 1.0 / 6.0).abs() < 1e-16);
        // a_2 = 4!/(16 * 4 * 5) = 3/40, directly from the factorial formula.
        assert!((arcsin_coeff(2) - 3.0 / 40.0).abs() < 1e-16);
        assert!((arcsin_coeff(3) - 15.0 / 336.0).abs() < 1e-16);
    }

    #[test]
    fn batch_matches_single() {
        let batch = arcsin_coeffs(50);
        for (i, &a) in batch.iter().enumerate() {
            assert_eq!(a, arcsin_coeff(i as u32 + 1));
        }
    }

    #[test]
    fn ratio_recurrence_holds() {
        for k in 1..200u32 {
            let lhs = arcsin_coeff(k + 1) / arcsin_coeff(k);
            let kf = k as f64;
            let rhs = (2.0 * kf + 1.0) * (2.0 * kf + 1.0) / ((2.0 * kf + 2.0) * (2.0 * kf + 3.0));
            assert!((lhs - rhs).abs() < 1e-14);
        }
    }

    #[test]
    fn scaled_coefficients_stay_in_band() {
        // a_k k^{3/2} increases toward 1/(2 sqrt(pi)) = 0.28209...
        for k in [1_000u32, 10_000, 100_000, 1_000_000] {
            // Jump straight to k with log-gamma to keep the test fast.
            let kf = k as f64;
            let a = {
                let mut a = 1.0 / 6.0;
                let mut i = 1u32;
                // Exact recurrence is O(k); cheap enough up to 10^6.
                while i < k {
                    a *= ratio(i);
                    i += 1;
                }
                a
            };
            let scaled = a * kf.powf(1.5);
            assert!(
                (0.2815..0.28215).contains(&scaled),
                "k={k}: a_k k^(3/2) = {scaled}"
            );
        }
    }

    #[test]
    fn partial_sums_converge_uniformly() {
        let xs: Vec<f64> = (0..=99).map(|i| -0.99 + 0.02 * i as f64).collect();
        let mut prev_worst = f64::INFINITY;
        for kmax in [10usize, 100, 1000] {
            let coeffs = arcsin_coeffs(kmax);
            let mut worst = 0.0_f64;
            for &x in &xs {
                let mut sum = x;
                let mut xp = x;
                let x2 = x * x;
                for &a in &coeffs {
                    xp *= x2;
                    sum += a * xp;
                }
                worst = worst.max((x.asin() - sum).abs());
            }
            // Geometric tail bound: first omitted term over (1 - x^2) at x = 0.99.
            let first_omitted = arcsin_coeff(kmax as u32 + 1) * 0.99f64.powi(2 * kmax as i32 + 3);
            assert!(worst <= first_omitted / (1.0 - 0.99 * 0.99) + 1e-15);
            assert!(worst < prev_worst);
            prev_worst = worst;
        }
    }
}
