//! Small numeric helpers shared across modules.

/// Pairwise (tree) summation.
///
/// The reduction shape depends only on the slice length, so the result is
/// bitwise reproducible regardless of how the values were produced, and the
/// rounding error grows like O(log n) instead of O(n).
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BASE: usize = 32;
    if values.len() <= BASE {
        let mut acc = 0.0;
        for &v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}
