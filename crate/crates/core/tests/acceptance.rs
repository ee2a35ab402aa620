//! Acceptance suite: every headline claim the crate makes, each as one
//! criterion with its tolerance pinned in code. Run with
//!
//! ```text
//! cargo test -p defect-core --test acceptance -- --nocapture
//! ```
//!
//! to see one PASS/FAIL line per criterion.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use defect_core::constants::{c2_series, report, variance_exact};
use defect_core::moments::{abs_moment5, legendre_moment};
use defect_core::quad::{bessel_moment, c1_direct};
use defect_core::randfield::{
    defect, mc_variance, sample_coefficients, synthesis_table, synthesize_with, SphereGrid,
};
use defect_core::specfun::hilb::hilb_deviation;
use defect_core::wigner::cg_squared_diag;

/// Fixed seed for every stochastic criterion.
const SEED: u64 = 7;

fn conclude(id: u32, name: &str, pass: bool, detail: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id:02} [{name}]: {verdict} ({detail}; {elapsed:.2?})");
    assert!(pass, "criterion {id:02} [{name}] failed: {detail}");
    assert!(
        elapsed <= budget,
        "criterion {id:02} [{name}] exceeded its runtime budget: {elapsed:.2?} > {budget:?}"
    );
}

fn c3_exact() -> f64 {
    2.0 / (PI * 3.0_f64.sqrt())
}

#[test]
fn criterion_01_closed_form_third_bessel_moment() {
    let start = Instant::now();
    let got = bessel_moment(3).unwrap();
    let diff = (got.value - c3_exact()).abs();
    conclude(
        1,
        "c3 = 2/(pi sqrt(3))",
        diff <= 1e-6,
        &format!("|c3 - exact| = {diff:.3e}"),
        start,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_02_route_agreement() {
    let start = Instant::now();
    let direct = c1_direct().unwrap().value;
    let series = c2_series(200).unwrap().value;
    let gap = (direct - series).abs();
    conclude(
        2,
        "C1 direct vs series",
        gap <= 2e-3,
        &format!("|{direct:.8} - {series:.8}| = {gap:.3e}"),
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_03_bound_checks() {
    let start = Instant::now();
    let rep = report().unwrap();
    let lower = 32.0 / 27.0_f64.sqrt();
    let per_area_lower = 2.0 / (PI * PI * 27.0_f64.sqrt());
    let pass = rep.c > lower && rep.c_per_area > per_area_lower;
    conclude(
        3,
        "C above its proven bounds",
        pass,
        &format!(
            "C = {:.6} > {lower:.6}; C~ = {:.6} > {per_area_lower:.6}; planar-wave reference {:.4} (comparison only)",
            rep.c, rep.c_per_area, rep.bgs_reference
        ),
        start,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_04_exact_cg_identity() {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for l in (0..=40u32).step_by(2) {
        let moment = legendre_moment(l, 3).value;
        let cg = cg_squared_diag(l).unwrap() / (2.0 * l as f64 + 1.0);
        worst = worst.max((moment - cg).abs());
    }
    conclude(
        4,
        "third moment equals CG square, even l <= 40",
        worst <= 1e-12,
        &format!("worst |moment - cg| = {worst:.3e}"),
        start,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_05_first_moment_vanishes() {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for l in (2..=400u32).step_by(2) {
        worst = worst.max(legendre_moment(l, 1).value.abs());
    }
    conclude(
        5,
        "first moment zero for even l <= 400",
        worst <= 1e-13,
        &format!("worst |M_1(l)| = {worst:.3e}"),
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_06_moment_asymptotics() {
    let start = Instant::now();
    let degrees = [50u32, 100, 200, 400];
    let mut pass = true;
    let mut detail = String::new();
    for j in [3u32, 5] {
        let cj = bessel_moment(j).unwrap().value;
        let devs: Vec<f64> = degrees
            .iter()
            .map(|&l| (legendre_moment(l, j).scaled - cj).abs())
            .collect();
        let decreasing = devs.windows(2).all(|w| w[1] < w[0]);
        let final_rel = devs[3] / cj;
        pass &= decreasing && final_rel <= 0.10;
        detail.push_str(&format!(
            "j={j}: devs {:.2e} -> {:.2e} -> {:.2e} -> {:.2e}, rel@400 = {final_rel:.4}; ",
            devs[0], devs[1], devs[2], devs[3]
        ));
    }
    conclude(
        6,
        "l^2 M_j -> c_j, j in {3,5}",
        pass,
        detail.trim_end(),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_07_variance_asymptotics_at_desk_scale() {
    let start = Instant::now();
    let c = report().unwrap().c;
    let devs: Vec<f64> = [50u32, 100, 200, 400]
        .iter()
        .map(|&l| {
            let lf = l as f64;
            (lf * lf * variance_exact(l).unwrap().value - c).abs()
        })
        .collect();
    let decreasing = devs.windows(2).all(|w| w[1] < w[0]);
    let final_rel = devs[3] / c;
    conclude(
        7,
        "l^2 Var(D_l) -> C",
        decreasing && final_rel <= 0.10,
        &format!(
            "devs {:.3e} -> {:.3e} -> {:.3e} -> {:.3e}, rel@400 = {final_rel:.4}",
            devs[0], devs[1], devs[2], devs[3]
        ),
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_08_monte_carlo_vs_exact() {
    let start = Instant::now();
    let est = mc_variance(16, 2000, SEED, 8.0).unwrap();
    let exact = variance_exact(16).unwrap().value;
    let mean_ok = est.mean.abs() <= 3.0 * est.mean_std_err;
    let var_gap = (est.variance - exact).abs();
    let var_budget = (0.15 * exact).max(3.0 * est.var_std_err);
    conclude(
        8,
        "MC defect statistics at l = 16",
        mean_ok && var_gap <= var_budget,
        &format!(
            "mean = {:.3e} ({:.2} stderr); var = {:.5} vs exact {:.5} (gap {:.2e}, budget {:.2e})",
            est.mean,
            est.mean / est.mean_std_err,
            est.variance,
            exact,
            var_gap,
            var_budget
        ),
        start,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_09_scaling_exponent() {
    let start = Instant::now();
    let points: Vec<(f64, f64)> = [8u32, 16, 32]
        .iter()
        .map(|&l| {
            let est = mc_variance(l, 2000, SEED, 8.0).unwrap();
            ((l as f64).ln(), est.variance.ln())
        })
        .collect();
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    conclude(
        9,
        "log-log variance slope",
        (-2.5..=-1.5).contains(&slope),
        &format!("slope = {slope:.4}"),
        start,
        Duration::from_secs(1200),
    );
}

#[test]
fn criterion_10_odd_degree_nullity() {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for l in [5u32, 15, 31] {
        let grid = SphereGrid::build(l, 8.0).unwrap();
        let table = synthesis_table(l, &grid).unwrap();
        for sample in 0..25u64 {
            let field = synthesize_with(&table, &sample_coefficients(l, SEED, sample));
            worst = worst.max(defect(&field, &grid).value.abs());
        }
    }
    conclude(
        10,
        "odd-degree defects vanish",
        worst <= 1e-10,
        &format!("worst |defect| = {worst:.3e} over 25 samples at l in {{5,15,31}}"),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_11_uniform_fifth_moment_bound() {
    let start = Instant::now();
    // Fixed ceiling frozen ahead of time; the sweep peaked at ~0.491.
    const CEILING: f64 = 0.6;
    let mut scaled = Vec::new();
    for l in 10..=500u32 {
        let lf = l as f64;
        scaled.push((lf, lf * lf * abs_moment5(l).unwrap().value));
    }
    let max = scaled.iter().map(|&(_, v)| v).fold(0.0_f64, f64::max);
    // Trend over the top decade [50, 500]: slope of log(value) vs log(l)
    // must be flat; l^2 log(l) mis-scaling would show up near +0.2.
    let decade: Vec<(f64, f64)> = scaled
        .iter()
        .filter(|&&(lf, _)| lf >= 50.0)
        .map(|&(lf, v)| (lf.ln(), v.ln()))
        .collect();
    let n = decade.len() as f64;
    let sx: f64 = decade.iter().map(|p| p.0).sum();
    let sy: f64 = decade.iter().map(|p| p.1).sum();
    let sxx: f64 = decade.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = decade.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    conclude(
        11,
        "uniform l^2 bound on the absolute fifth moment",
        max <= CEILING && slope.abs() <= 0.05,
        &format!("max l^2 M5 = {max:.4} (ceiling {CEILING}); top-decade slope = {slope:.4}"),
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_12_hilb_envelope() {
    let start = Instant::now();
    let envelope = |l: u32, theta: f64| {
        let lf = l as f64;
        if theta > 1.0 / lf {
            theta.sqrt() * lf.powf(-1.5)
        } else {
            theta * theta
        }
    };
    let max_ratio = |l: u32| -> f64 {
        let lf = l as f64;
        let mut worst = 0.0_f64;
        for i in 1..=2000 {
            let theta = std::f64::consts::FRAC_PI_2 * i as f64 / 2000.0;
            worst = worst.max(hilb_deviation(l, theta).unwrap().abs() / envelope(l, theta));
        }
        for i in 1..=200 {
            let theta = (1.0 / lf) * i as f64 / 201.0;
            worst = worst.max(hilb_deviation(l, theta).unwrap().abs() / envelope(l, theta));
        }
        worst
    };
    // Calibrate on l = 50 (10% headroom), then the same constant must
    // dominate the disjoint validation grids.
    let k_fit = 1.1 * max_ratio(50);
    let r100 = max_ratio(100);
    let r200 = max_ratio(200);
    conclude(
        12,
        "Hilb two-regime error envelope",
        r100 <= k_fit && r200 <= k_fit,
        &format!("K_fit = {k_fit:.5}; max ratios l=100: {r100:.5}, l=200: {r200:.5}"),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_13_remark_diagnostics() {
    let start = Instant::now();
    let diags: Vec<_> = [64u32, 256, 1024]
        .iter()
        .map(|&l| defect_core::moments::even_moment_diagnostics(l))
        .collect();
    let ratios_ok = diags
        .windows(2)
        .all(|w| (0.8..=1.25).contains(&(w[1].m4_scaled / w[0].m4_scaled)));
    let positive = diags.iter().all(|d| d.m4_scaled > 0.0);
    let m3_bounded = diags.iter().all(|d| d.m3_scaled.abs() <= 2.0);
    conclude(
        13,
        "fourth moment ~ log l, third moment O(1/sqrt(l))",
        ratios_ok && positive && m3_bounded,
        &format!(
            "m4/log l: {:.4}, {:.4}, {:.4}; m3 diag: {:.4}, {:.4}, {:.4}",
            diags[0].m4_scaled,
            diags[1].m4_scaled,
            diags[2].m4_scaled,
            diags[0].m3_scaled,
            diags[1].m3_scaled,
            diags[2].m3_scaled
        ),
        start,
        Duration::from_secs(60),
    );
}
