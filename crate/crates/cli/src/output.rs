//! CSV schemas and writers.

use crate::error::{CliError, Result};
use serde::Serialize;
use std::io::Write;
use std::path::Path;
use vcdens_core::bounds::BoundReport;
use vcdens_core::dichotomy::{DensityEstimate, GrowthEstimate, VcDimEstimate};
use vcdens_core::uc::UcExperimentResult;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    /// Decimal, so values past `u64` survive.
    pub count: String,
    pub exactness: &'static str,
    pub seed: u64,
    pub class_id: String,
}

pub fn growth_rows(g: &GrowthEstimate) -> Vec<GrowthRow> {
    g.samples
        .iter()
        .map(|s| GrowthRow {
            n: s.n,
            count: s.count.value.to_string(),
            exactness: s.exactness.as_str(),
            seed: g.seed,
            class_id: g.class_id.clone(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsRow {
    pub m: usize,
    pub eps: f64,
    pub delta: f64,
    pub k_elementary: u64,
    pub k_rademacher: u64,
    pub k_solver_elem: u64,
    pub k_solver_rad: u64,
    pub classical_m2: f64,
    pub classical_m4: f64,
    pub classical_mlogm: f64,
}

impl From<&BoundReport> for BoundsRow {
    fn from(r: &BoundReport) -> Self {
        Self {
            m: r.query.m,
            eps: r.query.eps,
            delta: r.query.delta,
            k_elementary: r.k_elementary,
            k_rademacher: r.k_rademacher,
            k_solver_elem: r.k_solver_elementary,
            k_solver_rad: r.k_solver_rademacher,
            classical_m2: r.classical_m2,
            classical_m4: r.classical_m4,
            classical_mlogm: r.classical_mlogm,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UcRow {
    pub k: usize,
    pub eps: f64,
    pub delta_target: f64,
    pub trials: usize,
    pub failures: usize,
    pub empirical_rate: f64,
    pub sup_method: &'static str,
    pub seed: u64,
}

impl UcRow {
    pub fn new(r: &UcExperimentResult, delta_target: f64) -> Self {
        Self {
            k: r.k,
            eps: r.eps,
            delta_target,
            trials: r.trials,
            failures: r.failures,
            empirical_rate: r.empirical_rate,
            sup_method: r.sup_method.as_str(),
            seed: r.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VcDimRow {
    pub class_id: String,
    pub vc_dim: usize,
    pub at_cap: bool,
    pub certainty: &'static str,
    pub max_d: usize,
    pub seed: u64,
}

impl VcDimRow {
    pub fn new(class_id: &str, v: &VcDimEstimate, max_d: usize, seed: u64) -> Self {
        Self {
            class_id: class_id.into(),
            vc_dim: v.value,
            at_cap: v.at_cap,
            certainty: match v.certainty {
                vcdens_core::dichotomy::Certainty::Exact => "exact",
                vcdens_core::dichotomy::Certainty::Sampled => "sampled",
            },
            max_d,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityRow {
    pub class_id: String,
    pub slope: f64,
    pub raw_slope: f64,
    pub intercept: f64,
    pub fit_n_min: usize,
    pub fit_n_max: usize,
    pub residual: f64,
    pub points: usize,
    pub seed: u64,
}

impl DensityRow {
    pub fn new(class_id: &str, d: &DensityEstimate, seed: u64) -> Self {
        Self {
            class_id: class_id.into(),
            slope: d.slope,
            raw_slope: d.raw_slope,
            intercept: d.intercept,
            fit_n_min: d.fit_range.0,
            fit_n_max: d.fit_range.1,
            residual: d.residual,
            points: d.points,
            seed,
        }
    }
}

/// Serializes rows (header included) to CSV bytes.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    w.into_inner().map_err(|e| CliError::io("<buffer>", e.into_error()))
}

/// One curve for [`emit_plot_data`].
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self { label: label.into(), points }
    }
}

/// Two columns per series (`<label>_x`, `<label>_y`); shorter series leave
/// their cells empty.
pub fn plot_csv(series: &[Series]) -> Result<Vec<u8>> {
    if series.is_empty() {
        return Err(CliError::Schema("no series to plot".into()));
    }
    if let Some(s) = series.iter().find(|s| s.points.is_empty()) {
        return Err(CliError::Schema(format!("series `{}` is empty", s.label)));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<String> = series.iter().flat_map(|s| [format!("{}_x", s.label), format!("{}_y", s.label)]).collect();
    w.write_record(&header)?;
    let rows = series.iter().map(|s| s.points.len()).max().unwrap_or(0);
    for i in 0..rows {
        let record: Vec<String> = series
            .iter()
            .flat_map(|s| match s.points.get(i) {
                Some((x, y)) => [x.to_string(), y.to_string()],
                None => [String::new(), String::new()],
            })
            .collect();
        w.write_record(&record)?;
    }
    w.into_inner().map_err(|e| CliError::io("<buffer>", e.into_error()))
}

pub fn emit_plot_data(series: &[Series], path: &Path) -> Result<()> {
    let bytes = plot_csv(series)?;
    write_file(path, &bytes)
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut f = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(bytes).map_err(|e| CliError::io(path, e))
}

/// Thousands separators for the summary tables.
pub fn group_digits(v: u64) -> String {
    let s = v.to_string();
    let mut out = String::with_capacity(s.len() + s.len() / 3);
    for (i, c) in s.chars().enumerate() {
        if i > 0 && (s.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(c);
    }
    out
}

/// Left-aligned plain-text table.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(|s| s.as_str()).collect()));
    for r in rows {
        out.push_str(&line(r.iter().map(|s| s.as_str()).collect()));
    }
    out
}
