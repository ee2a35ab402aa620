//! Monte Carlo side: Gaussian random spherical-harmonic fields, their
//! synthesis on a sphere grid, the defect (signed area) of one sample and
//! variance estimation over many.
//!
//! Model: f_l = (2l+1)^{-1/2} sum_m a_m Y_lm with i.i.d. standard normal
//! a_m and harmonics normalized so that E[f_l(x) f_l(y)] = P_l(cos d(x,y)),
//! in particular unit pointwise variance. With the orthonormal basis from
//! `specfun::assoc` this means an extra sqrt(4 pi) in the synthesis scale;
//! the covariance tests below pin that choice.

pub mod grid;
pub mod rng;

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::Error;
use crate::specfun::assoc::assoc_legendre_row;
use crate::util::pairwise_sum;

pub use grid::{SphereGrid, DEFAULT_RESOLUTION_FACTOR};

/// The 2l+1 Gaussian coefficients of one field sample; index i holds the
/// coefficient of order m = i - l.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicCoefficients {
    pub l: u32,
    pub a: Vec<f64>,
    pub seed: u64,
    pub sample_index: u64,
}

/// Draw the 2l+1 i.i.d. standard normals for one sample. Each entry is a
/// pure function of (seed, sample_index, slot), so the result is bitwise
/// reproducible regardless of caller threading.
pub fn sample_coefficients(l: u32, seed: u64, sample_index: u64) -> HarmonicCoefficients {
    let a = (0..2 * l as u64 + 1)
        .map(|slot| rng::standard_normal(seed, sample_index, slot))
        .collect();
    HarmonicCoefficients {
        l,
        a,
        seed,
        sample_index,
    }
}

/// Field values over a grid, row-major by ring then longitude column.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub l: u32,
    pub seed: u64,
    pub sample_index: u64,
    pub n_theta: usize,
    pub n_phi: usize,
    pub values: Vec<f64>,
}

/// Precomputed per-grid tables: normalized associated Legendre rings and
/// longitude trig tables. Immutable after construction and shared across
/// all samples of an MC run.
#[derive(Debug, Clone)]
pub struct SynthesisTable {
    l: u32,
    n_theta: usize,
    n_phi: usize,
    /// ring-major: plm[ring * (l+1) + m]
    plm: Vec<f64>,
    /// column-major in m: trig[col * (l+1) + m]
    cos_mphi: Vec<f64>,
    sin_mphi: Vec<f64>,
}

/// Build the shared synthesis tables for degree l on a grid.
pub fn synthesis_table(l: u32, grid: &SphereGrid) -> Result<SynthesisTable, Error> {
    if grid.n_theta() < 2 * l as usize + 2 {
        return Err(Error::Resolution(format!(
            "grid has {} rings; degree {l} needs at least {}",
            grid.n_theta(),
            2 * l + 2
        )));
    }
    let orders = l as usize + 1;
    let mut plm = Vec::with_capacity(grid.n_theta() * orders);
    for &t in grid.theta_cos() {
        plm.extend(assoc_legendre_row(l, t));
    }
    let mut cos_mphi = Vec::with_capacity(grid.n_phi() * orders);
    let mut sin_mphi = Vec::with_capacity(grid.n_phi() * orders);
    for k in 0..grid.n_phi() {
        let phi = grid.phi(k);
        for m in 0..orders {
            let (s, c) = (m as f64 * phi).sin_cos();
            cos_mphi.push(c);
            sin_mphi.push(s);
        }
    }
    Ok(SynthesisTable {
        l,
        n_theta: grid.n_theta(),
        n_phi: grid.n_phi(),
        plm,
        cos_mphi,
        sin_mphi,
    })
}

/// Synthesize one sample using prebuilt tables.
pub fn synthesize_with(table: &SynthesisTable, coeffs: &HarmonicCoefficients) -> Field {
    assert_eq!(
        table.l, coeffs.l,
        "table and coefficients disagree on degree"
    );
    let l = table.l as usize;
    let orders = l + 1;
    let scale = (4.0 * PI / (2 * l + 1) as f64).sqrt();
    let sqrt2 = 2.0_f64.sqrt();
    let mut values = vec![0.0; table.n_theta * table.n_phi];
    let mut cos_amp = vec![0.0; orders];
    let mut sin_amp = vec![0.0; orders];
    for ring in 0..table.n_theta {
        let plm = &table.plm[ring * orders..(ring + 1) * orders];
        cos_amp[0] = scale * coeffs.a[l] * plm[0];
        sin_amp[0] = 0.0;
        for m in 1..orders {
            let amp = scale * sqrt2 * plm[m];
            cos_amp[m] = amp * coeffs.a[l + m];
            sin_amp[m] = amp * coeffs.a[l - m];
        }
        let row = &mut values[ring * table.n_phi..(ring + 1) * table.n_phi];
        for (k, value) in row.iter_mut().enumerate() {
            let cos_tab = &table.cos_mphi[k * orders..(k + 1) * orders];
            let sin_tab = &table.sin_mphi[k * orders..(k + 1) * orders];
            let mut acc = 0.0;
            for m in 0..orders {
                acc += cos_amp[m] * cos_tab[m] + sin_amp[m] * sin_tab[m];
            }
            *value = acc;
        }
    }
    Field {
        l: coeffs.l,
        seed: coeffs.seed,
        sample_index: coeffs.sample_index,
        n_theta: table.n_theta,
        n_phi: table.n_phi,
        values,
    }
}

/// One-shot synthesis; builds the tables internally.
pub fn synthesize(coeffs: &HarmonicCoefficients, grid: &SphereGrid) -> Result<Field, Error> {
    let table = synthesis_table(coeffs.l, grid)?;
    Ok(synthesize_with(&table, coeffs))
}

/// Evaluate one sample at an arbitrary point (test and diagnostic use;
/// O(l^2) per call).
pub fn eval_point(coeffs: &HarmonicCoefficients, cos_theta: f64, phi: f64) -> f64 {
    let l = coeffs.l as usize;
    let scale = (4.0 * PI / (2 * l + 1) as f64).sqrt();
    let sqrt2 = 2.0_f64.sqrt();
    let plm = assoc_legendre_row(coeffs.l, cos_theta);
    let mut acc = coeffs.a[l] * plm[0];
    for (m, &p) in plm.iter().enumerate().skip(1) {
        let (s, c) = (m as f64 * phi).sin_cos();
        acc += sqrt2 * p * (coeffs.a[l + m] * c + coeffs.a[l - m] * s);
    }
    scale * acc
}

/// Heaviside sign with H(0) = 0; the convention is pinned so defects of
/// fields with exact zeros are bit-exact.
fn heaviside(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// One defect sample: area of the positive region minus area of the
/// negative region, in [-4 pi, 4 pi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectSample {
    pub l: u32,
    pub value: f64,
    pub seed: u64,
    pub sample_index: u64,
}

/// Sign quadrature of the field over the grid.
pub fn defect(field: &Field, grid: &SphereGrid) -> DefectSample {
    assert_eq!(
        field.n_theta,
        grid.n_theta(),
        "field and grid dimensions differ"
    );
    assert_eq!(
        field.n_phi,
        grid.n_phi(),
        "field and grid dimensions differ"
    );
    let mut acc = 0.0;
    for ring in 0..field.n_theta {
        let w = grid.cell_weight(ring);
        let row = &field.values[ring * field.n_phi..(ring + 1) * field.n_phi];
        let mut ring_sum = 0.0;
        for &v in row {
            ring_sum += heaviside(v);
        }
        acc += w * ring_sum;
    }
    debug_assert!(
        acc.abs() <= 4.0 * PI + 1e-8,
        "defect {acc} outside [-4 pi, 4 pi]"
    );
    DefectSample {
        l: field.l,
        value: acc,
        seed: field.seed,
        sample_index: field.sample_index,
    }
}

/// Defect restricted to the hemispheres cos(theta) > 0 and < 0 (northern,
/// southern). The split is exact because the rings are symmetric and never
/// sit on the equator. Exposed for exploration; no distributional claims
/// are attached to it here.
pub fn hemisphere_defect(field: &Field, grid: &SphereGrid) -> (f64, f64) {
    let mut north = 0.0;
    let mut south = 0.0;
    for ring in 0..field.n_theta {
        let w = grid.cell_weight(ring);
        let row = &field.values[ring * field.n_phi..(ring + 1) * field.n_phi];
        let mut ring_sum = 0.0;
        for &v in row {
            ring_sum += heaviside(v);
        }
        if grid.theta_cos()[ring] > 0.0 {
            north += w * ring_sum;
        } else {
            south += w * ring_sum;
        }
    }
    (north, south)
}

/// Aggregated Monte Carlo estimate of the defect distribution at degree l.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceEstimate {
    pub l: u32,
    pub n_samples: usize,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    /// sqrt(variance / n)
    pub mean_std_err: f64,
    /// variance * sqrt(2 / (n - 1)), the Gaussian-theory sampling error of
    /// the variance itself.
    pub var_std_err: f64,
    pub grid_resolution_factor: f64,
}

/// Monte Carlo mean/variance of the defect over `n_samples` independent
/// fields. Samples run in parallel; the counter-based draws plus an
/// index-ordered pairwise reduction make the result bitwise independent of
/// the thread count.
pub fn mc_variance(
    l: u32,
    n_samples: usize,
    seed: u64,
    resolution_factor: f64,
) -> Result<VarianceEstimate, Error> {
    if !l.is_multiple_of(2) || l == 0 {
        return Err(Error::Domain(format!(
            "defect statistics are nontrivial for even l only, got {l}"
        )));
    }
    if n_samples < 2 {
        return Err(Error::Domain("need at least two samples".into()));
    }
    let grid = SphereGrid::build(l, resolution_factor)?;
    let table = synthesis_table(l, &grid)?;
    let values: Vec<f64> = (0..n_samples as u64)
        .into_par_iter()
        .map(|sample_index| {
            let coeffs = sample_coefficients(l, seed, sample_index);
            defect(&synthesize_with(&table, &coeffs), &grid).value
        })
        .collect();
    let n = n_samples as f64;
    let mean = pairwise_sum(&values) / n;
    let squared: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
    let variance = pairwise_sum(&squared) / (n - 1.0);
    Ok(VarianceEstimate {
        l,
        n_samples,
        mean,
        variance,
        mean_std_err: (variance / n).sqrt(),
        var_std_err: variance * (2.0 / (n - 1.0)).sqrt(),
        grid_resolution_factor: resolution_factor,
    })
}
