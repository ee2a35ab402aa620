//! Command implementations. Each produces both serializations plus the
//! outcome of its embedded invariant checks; the caller picks the format
//! and maps the outcome to an exit status.

use std::f64::consts::PI;

use defect_core::constants::{assemble_report, variance_exact, ConstantReport};
use defect_core::moments::legendre_moment;
use defect_core::quad::bessel_moment;
use defect_core::randfield::mc_variance;
use defect_core::specfun::hilb::envelope_fit_ratio;
use defect_core::wigner::cg_squared_diag;
use defect_core::Error;

use crate::output::{document, fmt_f64, render_csv, render_json, Val};

pub struct Artifact {
    pub json: String,
    pub csv: String,
    /// All embedded invariant checks passed.
    pub pass: bool,
}

pub enum CmdError {
    /// Invalid configuration; exit status 2.
    Config(String),
    /// Runtime numerical failure; exit status 1.
    Run(String),
}

impl From<Error> for CmdError {
    fn from(err: Error) -> CmdError {
        match err {
            Error::Domain(_) | Error::Resolution(_) => CmdError::Config(err.to_string()),
            Error::NonConvergence(_) | Error::Invariant(_) => CmdError::Run(err.to_string()),
        }
    }
}

fn pass_row(pass: bool) -> Vec<String> {
    vec![
        "pass".into(),
        if pass { "1".into() } else { "0".into() },
        fmt_f64(0.0),
    ]
}

fn constant_fields(rep: &ConstantReport) -> Vec<(&'static str, Val)> {
    let c_error = 32.0 * PI * rep.c1_direct_error;
    vec![
        ("c1_direct", Val::F(rep.c1_direct)),
        ("c1_direct_error", Val::F(rep.c1_direct_error)),
        ("c1_series", Val::F(rep.c1_series)),
        ("c1_series_error", Val::F(rep.c1_series_error)),
        ("c1_series_tail", Val::F(rep.c1_series_tail)),
        ("series_terms", Val::U(rep.series_terms as u64)),
        ("c", Val::F(rep.c)),
        ("c_error", Val::F(c_error)),
        ("c_per_area", Val::F(rep.c_per_area)),
        ("c_per_area_error", Val::F(c_error / (16.0 * PI * PI))),
        ("lower_bound", Val::F(rep.lower_bound)),
        ("lower_bound_per_area", Val::F(rep.lower_bound_per_area)),
        ("bgs_reference", Val::F(rep.bgs_reference)),
    ]
}

fn constant_csv_rows(rep: &ConstantReport) -> Vec<Vec<String>> {
    let c_error = 32.0 * PI * rep.c1_direct_error;
    let row = |name: &str, value: f64, error: f64| -> Vec<String> {
        vec![name.into(), fmt_f64(value), fmt_f64(error)]
    };
    vec![
        row("c1_direct", rep.c1_direct, rep.c1_direct_error),
        row("c1_series", rep.c1_series, rep.c1_series_error),
        row("c1_series_tail", rep.c1_series_tail, 0.0),
        row("c", rep.c, c_error),
        row("c_per_area", rep.c_per_area, c_error / (16.0 * PI * PI)),
        row("lower_bound", rep.lower_bound, 0.0),
        row("lower_bound_per_area", rep.lower_bound_per_area, 0.0),
        row("bgs_reference", rep.bgs_reference, 0.0),
    ]
}

pub fn constants() -> Result<Artifact, CmdError> {
    let rep = assemble_report()?;
    let checks = rep.checks();
    let pass = checks.all();
    let mut fields = constant_fields(&rep);
    fields.push((
        "checks",
        Val::Obj(vec![
            ("c_above_lower_bound", Val::B(checks.c_above_lower_bound)),
            (
                "per_area_above_lower_bound",
                Val::B(checks.per_area_above_lower_bound),
            ),
            ("routes_agree", Val::B(checks.routes_agree)),
        ]),
    ));
    fields.push(("pass", Val::B(pass)));
    let json = render_json(&document("constants", fields));
    let mut rows = constant_csv_rows(&rep);
    rows.push(pass_row(pass));
    let csv = render_csv(&["name", "value", "error"], &rows);
    Ok(Artifact { json, csv, pass })
}

pub const MOMENTS_CSV_HEADER: &[&str] = &[
    "l",
    "j",
    "value",
    "value_error",
    "scaled",
    "scaled_error",
    "limit",
    "limit_error",
];

pub fn moments(j: u32, degrees: &[u32]) -> Result<Artifact, CmdError> {
    if j < 3 || j.is_multiple_of(2) {
        return Err(CmdError::Config(format!(
            "moment tables need odd j >= 3, got {j}"
        )));
    }
    if let Some(&odd) = degrees.iter().find(|&&l| l % 2 != 0) {
        return Err(CmdError::Config(format!(
            "moment tables expect even degrees, got {odd}"
        )));
    }
    if degrees.is_empty() {
        return Err(CmdError::Config("no degrees given".into()));
    }
    let limit = bessel_moment(j)?;
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut pass = true;
    for &l in degrees {
        let rec = legendre_moment(l, j);
        let lf = l as f64;
        pass &= rec.value.is_finite() && rec.value > 0.0;
        rows.push(vec![
            l.to_string(),
            j.to_string(),
            fmt_f64(rec.value),
            fmt_f64(rec.error),
            fmt_f64(rec.scaled),
            fmt_f64(lf * lf * rec.error),
            fmt_f64(limit.value),
            fmt_f64(limit.error_estimate),
        ]);
        json_rows.push(Val::Obj(vec![
            ("l", Val::U(l as u64)),
            ("value", Val::F(rec.value)),
            ("value_error", Val::F(rec.error)),
            ("scaled", Val::F(rec.scaled)),
            ("scaled_error", Val::F(lf * lf * rec.error)),
        ]));
    }
    let json = render_json(&document(
        "moments",
        vec![
            ("j", Val::U(j as u64)),
            ("limit", Val::F(limit.value)),
            ("limit_error", Val::F(limit.error_estimate)),
            ("rows", Val::Arr(json_rows)),
            ("pass", Val::B(pass)),
        ],
    ));
    let csv = render_csv(MOMENTS_CSV_HEADER, &rows);
    Ok(Artifact { json, csv, pass })
}

pub const VARIANCE_CSV_HEADER: &[&str] = &[
    "l",
    "il",
    "il_error",
    "variance",
    "variance_error",
    "scaled_variance",
    "scaled_variance_error",
];

struct VarianceRow {
    l: u32,
    il: f64,
    il_error: f64,
    variance: f64,
    variance_error: f64,
}

fn variance_rows(degrees: &[u32]) -> Result<Vec<VarianceRow>, CmdError> {
    if degrees.is_empty() {
        return Err(CmdError::Config("no degrees given".into()));
    }
    if let Some(&odd) = degrees.iter().find(|&&l| l % 2 != 0 || l < 2) {
        return Err(CmdError::Config(format!(
            "defect variance is nontrivial for even l >= 2 only, got {odd}"
        )));
    }
    degrees
        .iter()
        .map(|&l| {
            let il = defect_core::constants::il_exact(l)?;
            Ok(VarianceRow {
                l,
                il: il.value,
                il_error: il.error,
                variance: 32.0 * PI * il.value,
                variance_error: 32.0 * PI * il.error,
            })
        })
        .collect()
}

fn variance_csv_row(row: &VarianceRow) -> Vec<String> {
    let lf = row.l as f64;
    vec![
        row.l.to_string(),
        fmt_f64(row.il),
        fmt_f64(row.il_error),
        fmt_f64(row.variance),
        fmt_f64(row.variance_error),
        fmt_f64(lf * lf * row.variance),
        fmt_f64(lf * lf * row.variance_error),
    ]
}

fn variance_json_row(row: &VarianceRow) -> Val {
    let lf = row.l as f64;
    Val::Obj(vec![
        ("l", Val::U(row.l as u64)),
        ("il", Val::F(row.il)),
        ("il_error", Val::F(row.il_error)),
        ("variance", Val::F(row.variance)),
        ("variance_error", Val::F(row.variance_error)),
        ("scaled_variance", Val::F(lf * lf * row.variance)),
        (
            "scaled_variance_error",
            Val::F(lf * lf * row.variance_error),
        ),
    ])
}

pub fn variance(degrees: &[u32]) -> Result<Artifact, CmdError> {
    let rows = variance_rows(degrees)?;
    let pass = rows
        .iter()
        .all(|r| r.variance > 0.0 && r.variance < 16.0 * PI * PI);
    let json = render_json(&document(
        "variance",
        vec![
            (
                "rows",
                Val::Arr(rows.iter().map(variance_json_row).collect()),
            ),
            ("pass", Val::B(pass)),
        ],
    ));
    let csv = render_csv(
        VARIANCE_CSV_HEADER,
        &rows.iter().map(variance_csv_row).collect::<Vec<_>>(),
    );
    Ok(Artifact { json, csv, pass })
}

pub const MC_CSV_HEADER: &[&str] = &[
    "l",
    "samples",
    "seed",
    "rho",
    "mean",
    "mean_std_err",
    "variance",
    "var_std_err",
    "exact_variance",
    "exact_variance_error",
];

pub fn mc(l: u32, samples: usize, seed: u64, rho: f64) -> Result<Artifact, CmdError> {
    let est = mc_variance(l, samples, seed, rho)?;
    let exact = variance_exact(l)?;
    // Generous sanity gates (5 sigma / 25%) so the exit status flags real
    // breakage, not ordinary sampling noise.
    let mean_ok = est.mean.abs() <= 5.0 * est.mean_std_err;
    let var_ok =
        (est.variance - exact.value).abs() <= (0.25 * exact.value).max(5.0 * est.var_std_err);
    let pass = mean_ok && var_ok;
    let json = render_json(&document(
        "mc",
        vec![
            ("l", Val::U(l as u64)),
            ("samples", Val::U(samples as u64)),
            ("seed", Val::U(seed)),
            ("rho", Val::F(rho)),
            ("mean", Val::F(est.mean)),
            ("mean_std_err", Val::F(est.mean_std_err)),
            ("variance", Val::F(est.variance)),
            ("var_std_err", Val::F(est.var_std_err)),
            ("exact_variance", Val::F(exact.value)),
            ("exact_variance_error", Val::F(exact.error)),
            (
                "checks",
                Val::Obj(vec![
                    ("mean_within_5_stderr", Val::B(mean_ok)),
                    ("variance_matches_exact", Val::B(var_ok)),
                ]),
            ),
            ("pass", Val::B(pass)),
        ],
    ));
    let csv = render_csv(
        MC_CSV_HEADER,
        &[vec![
            l.to_string(),
            samples.to_string(),
            seed.to_string(),
            fmt_f64(rho),
            fmt_f64(est.mean),
            fmt_f64(est.mean_std_err),
            fmt_f64(est.variance),
            fmt_f64(est.var_std_err),
            fmt_f64(exact.value),
            fmt_f64(exact.error),
        ]],
    );
    Ok(Artifact { json, csv, pass })
}

pub const CG_CSV_HEADER: &[&str] = &["l", "moment", "moment_error", "cg_over_2lp1", "abs_diff"];

/// Identity tolerance for the finite-l third moment; exact arithmetic on
/// both sides leaves only roundoff.
const CG_IDENTITY_TOL: f64 = 1e-12;

pub fn cg_check(l_max: u32) -> Result<Artifact, CmdError> {
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut worst = 0.0_f64;
    for l in (0..=l_max).step_by(2) {
        let rec = legendre_moment(l, 3);
        let cg = cg_squared_diag(l).map_err(CmdError::from)? / (2.0 * l as f64 + 1.0);
        let diff = (rec.value - cg).abs();
        worst = worst.max(diff);
        rows.push(vec![
            l.to_string(),
            fmt_f64(rec.value),
            fmt_f64(rec.error),
            fmt_f64(cg),
            fmt_f64(diff),
        ]);
        json_rows.push(Val::Obj(vec![
            ("l", Val::U(l as u64)),
            ("moment", Val::F(rec.value)),
            ("moment_error", Val::F(rec.error)),
            ("cg_over_2lp1", Val::F(cg)),
            ("abs_diff", Val::F(diff)),
        ]));
    }
    let pass = worst <= CG_IDENTITY_TOL;
    let json = render_json(&document(
        "cg-check",
        vec![
            ("l_max", Val::U(l_max as u64)),
            ("tolerance", Val::F(CG_IDENTITY_TOL)),
            ("worst_abs_diff", Val::F(worst)),
            ("rows", Val::Arr(json_rows)),
            ("pass", Val::B(pass)),
        ],
    ));
    let csv = render_csv(CG_CSV_HEADER, &rows);
    Ok(Artifact { json, csv, pass })
}

pub const HILB_CSV_HEADER: &[&str] = &["l", "max_ratio", "k_fit"];

pub fn hilb_check(l_fit: u32, degrees: &[u32]) -> Result<Artifact, CmdError> {
    if l_fit == 0 || degrees.contains(&0) {
        return Err(CmdError::Config("degrees must be positive".into()));
    }
    // 10% headroom over the calibration grid; the same constant must then
    // dominate every validation degree unchanged.
    let k_fit = 1.1 * envelope_fit_ratio(l_fit);
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut pass = true;
    for &l in degrees {
        let ratio = envelope_fit_ratio(l);
        pass &= ratio <= k_fit;
        rows.push(vec![l.to_string(), fmt_f64(ratio), fmt_f64(k_fit)]);
        json_rows.push(Val::Obj(vec![
            ("l", Val::U(l as u64)),
            ("max_ratio", Val::F(ratio)),
        ]));
    }
    let json = render_json(&document(
        "hilb-check",
        vec![
            ("l_fit", Val::U(l_fit as u64)),
            ("k_fit", Val::F(k_fit)),
            ("rows", Val::Arr(json_rows)),
            ("pass", Val::B(pass)),
        ],
    ));
    let csv = render_csv(HILB_CSV_HEADER, &rows);
    Ok(Artifact { json, csv, pass })
}

/// Default degree ladder for the report's convergence table: a decade span
/// that still runs at desk speed.
pub const REPORT_DEGREES: [u32; 4] = [50, 100, 200, 400];

pub fn full_report() -> Result<Artifact, CmdError> {
    let rep = assemble_report()?;
    let checks = rep.checks();
    let rows = variance_rows(&REPORT_DEGREES)?;
    let deviations: Vec<f64> = rows
        .iter()
        .map(|r| ((r.l as f64).powi(2) * r.variance - rep.c).abs())
        .collect();
    let decreasing = deviations.windows(2).all(|w| w[1] < w[0]);
    let final_rel = deviations.last().expect("ladder is non-empty") / rep.c;
    let converging = final_rel <= 0.10;
    let pass = checks.all() && decreasing && converging;

    let mut fields = constant_fields(&rep);
    fields.push((
        "variance_table",
        Val::Arr(rows.iter().map(variance_json_row).collect()),
    ));
    fields.push((
        "checks",
        Val::Obj(vec![
            ("c_above_lower_bound", Val::B(checks.c_above_lower_bound)),
            (
                "per_area_above_lower_bound",
                Val::B(checks.per_area_above_lower_bound),
            ),
            ("routes_agree", Val::B(checks.routes_agree)),
            ("deviations_decreasing", Val::B(decreasing)),
            (
                "final_relative_deviation_within_10_percent",
                Val::B(converging),
            ),
        ]),
    ));
    fields.push(("final_relative_deviation", Val::F(final_rel)));
    fields.push(("pass", Val::B(pass)));
    let json = render_json(&document("report", fields));

    let mut csv_rows = constant_csv_rows(&rep);
    for row in &rows {
        let lf = row.l as f64;
        csv_rows.push(vec![
            format!("scaled_variance_l{}", row.l),
            fmt_f64(lf * lf * row.variance),
            fmt_f64(lf * lf * row.variance_error),
        ]);
    }
    csv_rows.push(vec![
        "final_relative_deviation".into(),
        fmt_f64(final_rel),
        fmt_f64(0.0),
    ]);
    csv_rows.push(pass_row(pass));
    let csv = render_csv(&["name", "value", "error"], &csv_rows);
    Ok(Artifact { json, csv, pass })
}
