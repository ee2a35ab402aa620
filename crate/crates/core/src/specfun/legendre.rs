//! Legendre polynomials via the three-term recurrence.
//!
//! The recurrence
//!
//! ```text
//! (n+1) P_{n+1}(t) = (2n+1) t P_n(t) - n P_{n-1}(t)
//! ```
//!
//! is numerically stable on [-1, 1] and is the workhorse behind every
//! covariance, moment and quadrature computation in this crate.

use crate::error::Error;

/// Arguments may stray outside [-1, 1] by at most this much before we call
/// it a domain error; smaller excursions (cosine roundoff) are clamped.
const ARG_SLACK: f64 = 1e-12;

fn checked_arg(t: f64) -> Result<f64, Error> {
    if t.abs() <= 1.0 {
        Ok(t)
    } else if t.abs() <= 1.0 + ARG_SLACK {
        Ok(t.clamp(-1.0, 1.0))
    } else {
        Err(Error::Domain(format!(
            "Legendre argument {t} outside [-1, 1]"
        )))
    }
}

/// Upward recurrence for P_l(t), assuming |t| <= 1 already holds.
pub(crate) fn eval_unchecked(l: u32, t: f64) -> f64 {
    match l {
        0 => 1.0,
        1 => t,
        _ => {
            let mut prev = 1.0;
            let mut curr = t;
            for n in 1..l {
                let nf = n as f64;
                let next = ((2.0 * nf + 1.0) * t * curr - nf * prev) / (nf + 1.0);
                prev = curr;
                curr = next;
            }
            curr
        }
    }
}

/// P_l(t) for t in [-1, 1].
pub fn legendre_eval(l: u32, t: f64) -> Result<f64, Error> {
    Ok(eval_unchecked(l, checked_arg(t)?))
}

/// P_0(t), ..., P_{l_max}(t) in one upward pass.
pub fn legendre_batch(l_max: u32, t: f64) -> Result<Vec<f64>, Error> {
    let t = checked_arg(t)?;
    let mut out = Vec::with_capacity(l_max as usize + 1);
    out.push(1.0);
    if l_max == 0 {
        return Ok(out);
    }
    out.push(t);
    for n in 1..l_max {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * t * out[n as usize] - nf * out[n as usize - 1]) / (nf + 1.0);
        out.push(next);
    }
    Ok(out)
}

/// P_n(x) together with its derivative, for Newton iteration on the nodes.
pub(crate) fn legendre_pair(n: u32, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut prev = 1.0;
    let mut curr = x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * curr - kf * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    // P'_n(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let deriv = n as f64 * (x * curr - prev) / (x * x - 1.0);
    (curr, deriv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randfield::rng::mix64;

    #[test]
    fn degree_zero_is_one() {
        assert_eq!(legendre_eval(0, 0.3).unwrap(), 1.0);
    }

    #[test]
    fn endpoint_normalization() {
        for l in [1, 2, 7, 50, 313, 1000, 10_000] {
            assert!(
                (legendre_eval(l, 1.0).unwrap() - 1.0).abs() < 1e-12,
                "P_{l}(1) != 1"
            );
        }
    }

    #[test]
    fn stable_at_degree_ten_thousand() {
        let v = legendre_eval(10_000, 0.5).unwrap();
        assert!(v.is_finite() && v.abs() <= 1.0 + 1e-12);
        // Parity is exact under the recurrence.
        assert_eq!(v, legendre_eval(10_000, -0.5).unwrap());
    }

    #[test]
    fn degree_two_closed_form() {
        // P_2(t) = (3 t^2 - 1) / 2
        assert!((legendre_eval(2, 0.5).unwrap() - (-0.125)).abs() < 1e-15);
    }

    #[test]
    fn batch_small_values() {
        let p = legendre_batch(2, 0.0).unwrap();
        assert_eq!(p, vec![1.0, 0.0, -0.5]);
        assert_eq!(legendre_batch(1, 1.0).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn batch_matches_single_eval() {
        let t = -0.37;
        let p = legendre_batch(60, t).unwrap();
        for (l, &v) in p.iter().enumerate() {
            let single = legendre_eval(l as u32, t).unwrap();
            assert!((v - single).abs() < 1e-12);
        }
    }

    #[test]
    fn parity_alternates() {
        let t = 0.62;
        let plus = legendre_batch(4, t).unwrap();
        let minus = legendre_batch(4, -t).unwrap();
        for l in 0..=4usize {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            assert!((minus[l] - sign * plus[l]).abs() < 1e-14);
        }
    }

    #[test]
    fn domain_error_beyond_slack() {
        assert!(legendre_eval(3, 1.1).is_err());
        assert!(legendre_eval(3, -1.0 - 1e-6).is_err());
        // Roundoff-sized excursions clamp instead.
        assert_eq!(legendre_eval(5, 1.0 + 1e-13).unwrap(), 1.0);
    }

    #[test]
    fn recurrence_residual_at_random_points() {
        // |(l+1) P_{l+1} - (2l+1) t P_l + l P_{l-1}| stays at roundoff level.
        let mut state = 0x9e3779b97f4a7c15_u64;
        for _ in 0..1000 {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let l = 1 + (mix64(state) % 500) as u32;
            let t = (mix64(state ^ 0xabcd) >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0;
            let p = legendre_batch(l + 1, t).unwrap();
            let lf = l as f64;
            let residual = (lf + 1.0) * p[l as usize + 1] - (2.0 * lf + 1.0) * t * p[l as usize]
                + lf * p[l as usize - 1];
            assert!(
                residual.abs() <= 1e-10,
                "residual {residual} at l={l}, t={t}"
            );
        }
    }

    #[test]
    fn bounded_by_one() {
        let mut state = 0x243f6a8885a308d3_u64;
        for _ in 0..1000 {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let l = (mix64(state) % 2000) as u32;
            let t = (mix64(state ^ 0x77) >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0;
            let v = legendre_eval(l, t).unwrap();
            assert!(v.abs() <= 1.0 + 1e-12, "|P_{l}({t})| = {v} > 1");
        }
    }
}
