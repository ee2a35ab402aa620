//! Counter-based Gaussian draws.
//!
//! Each standard normal is a pure function of (seed, sample index, slot),
//! so coefficient streams are bitwise reproducible no matter how samples
//! are scheduled across threads, and any coefficient can be regenerated in
//! isolation. The mixer is the SplitMix64 finalizer; two decorrelated
//! 64-bit lanes feed a Box-Muller transform.

/// SplitMix64 finalizer (Steele, Lea & Flood); bijective on u64.
pub(crate) fn mix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn key(seed: u64, sample_index: u64, slot: u64) -> u64 {
    mix64(mix64(mix64(seed) ^ sample_index) ^ slot)
}

/// Uniform in the open interval (0, 1).
fn to_unit(bits: u64) -> f64 {
    ((bits >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal keyed by (seed, sample_index, slot).
pub fn standard_normal(seed: u64, sample_index: u64, slot: u64) -> f64 {
    let base = key(seed, sample_index, slot);
    let u1 = to_unit(mix64(base ^ 0x243f6a8885a308d3));
    let u2 = to_unit(mix64(base ^ 0x13198a2e03707344));
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
