//! Dispatch of a [`RunConfig`] to the core library.

use crate::config::{fit_policy, ClassFile, Command, DistributionFile, GrowthArgs, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{
    growth_rows, group_digits, plot_csv, table, to_csv, write_file, BoundsRow, DensityRow, Series, UcRow, VcDimRow,
};
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use vcdens_core::bounds::{bound_report, k_elementary, BoundConstants, BoundQuery};
use vcdens_core::class::EnumerationOptions;
use vcdens_core::dichotomy::{
    estimate_growth, estimate_vc_density, vc_dim_bruteforce, GrowthEstimate, PointSetPolicy, ShatterOptions, VcSearch,
};
use vcdens_core::uc::UcExperiment;

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "VCDENS_OUTPUT_DIR";

/// Everything a run produces, before anything touches the disk.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    /// `(file name, CSV bytes)`, one writer per file.
    pub files: Vec<(String, Vec<u8>)>,
    pub summary: String,
}

/// `config.out`, else `$VCDENS_OUTPUT_DIR`, else the working directory.
pub fn output_dir(config: &RunConfig) -> PathBuf {
    config
        .out
        .clone()
        .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

pub fn write_outputs(out: &RunOutput, dir: &Path) -> Result<Vec<PathBuf>> {
    out.files
        .iter()
        .map(|(name, bytes)| {
            let p = dir.join(name);
            write_file(&p, bytes)?;
            Ok(p)
        })
        .collect()
}

/// Computes and writes; returns the summary and the written paths.
pub fn run(config: &RunConfig) -> Result<(RunOutput, Vec<PathBuf>)> {
    let out = execute(config)?;
    let paths = write_outputs(&out, &output_dir(config))?;
    Ok((out, paths))
}

fn pool(threads: Option<usize>) -> Result<Option<rayon::ThreadPool>> {
    match threads {
        None => Ok(None),
        Some(0) => Err(CliError::Schema("threads must be >= 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(Some)
            .map_err(|e| CliError::Schema(format!("cannot start {n} threads: {e}"))),
    }
}

/// `f(0), ..., f(n-1)` in index order, on `pool` when given.
fn map_indexed<T: Send>(
    pool: &Option<rayon::ThreadPool>,
    n: usize,
    f: impl Fn(usize) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    match pool {
        None => (0..n).map(f).collect(),
        Some(p) => p.install(|| (0..n).into_par_iter().map(f).collect()),
    }
}

pub fn execute(config: &RunConfig) -> Result<RunOutput> {
    let pool = pool(config.threads)?;
    let seed = config.seed;
    let mut out = match &config.command {
        Command::Bounds { m, eps, delta, c, c_prime, c_hat } => {
            bounds(m, eps, delta, BoundConstants::new(*c, *c_prime, *c_hat)?, config.plot)?
        }
        Command::Growth(g) => {
            let est = growth(g, seed, &pool)?;
            let mut out = RunOutput { files: vec![("growth.csv".into(), to_csv(&growth_rows(&est))?)], summary: growth_table(&est) };
            if config.plot {
                out.files.push(("plot.csv".into(), plot_csv(&[growth_series(&est)])?));
            }
            out
        }
        Command::Vcdim { class, max_d, random_sets, budget } => {
            let file = ClassFile::load(class)?;
            let c = file.build()?;
            let search = VcSearch {
                max_d: *max_d,
                random_sets: *random_sets,
                seed,
                shatter: ShatterOptions { budget: *budget, seed, ..Default::default() },
                ..Default::default()
            };
            let v = vc_dim_bruteforce(&c, &search)?;
            let row = VcDimRow::new(&file.id, &v, *max_d, seed);
            let summary = table(
                &["class", "vc_dim", "at_cap", "certainty"],
                &[vec![row.class_id.clone(), row.vc_dim.to_string(), row.at_cap.to_string(), row.certainty.into()]],
            );
            RunOutput { files: vec![("vcdim.csv".into(), to_csv(&[row])?)], summary }
        }
        Command::Density { growth: g, fit, fit_n_min, fit_n_max } => {
            let est = growth(g, seed, &pool)?;
            let d = estimate_vc_density(&est, fit_policy(*fit, *fit_n_min, *fit_n_max)?)?;
            let row = DensityRow::new(&est.class_id, &d, seed);
            let mut summary = growth_table(&est);
            summary.push('\n');
            summary.push_str(&table(
                &["class", "slope", "raw_slope", "fit_range", "residual"],
                &[vec![
                    row.class_id.clone(),
                    format!("{:.4}", d.slope),
                    format!("{:.4}", d.raw_slope),
                    format!("{}..{}", d.fit_range.0, d.fit_range.1),
                    format!("{:.2e}", d.residual),
                ]],
            ));
            let mut out = RunOutput {
                files: vec![("growth.csv".into(), to_csv(&growth_rows(&est))?), ("density.csv".into(), to_csv(&[row])?)],
                summary,
            };
            if config.plot {
                out.files.push(("plot.csv".into(), plot_csv(&[growth_series(&est)])?));
            }
            out
        }
        Command::Ucheck { class, distribution, eps, delta, k, m, trials, budget } => {
            let c = ClassFile::load(class)?.build()?;
            let dist = DistributionFile::load(distribution)?.build()?;
            let k = match (k, m.or(c.parameter_count())) {
                (Some(k), _) => {
                    if !(*delta > 0.0 && *delta < 1.0) {
                        return Err(CliError::Schema(format!("delta must lie in (0, 1), got {delta}")));
                    }
                    *k
                }
                (None, Some(m)) => {
                    let q = BoundQuery::new(m, *eps, *delta, BoundConstants::default())?;
                    usize::try_from(k_elementary(&q)).map_err(|_| CliError::Schema("k_elementary exceeds usize".into()))?
                }
                (None, None) => {
                    return Err(CliError::Schema("this class has no parameter count; give `m` or `k`".into()));
                }
            };
            if *trials == 0 {
                return Err(CliError::Schema("trials must be >= 1".into()));
            }
            let opts = EnumerationOptions { budget: *budget, seed, ..Default::default() };
            let exp = UcExperiment::new(&c, &dist, *eps, k, &opts)?;
            let sups = map_indexed(&pool, *trials, |t| Ok(exp.trial(seed, t as u64)?))?;
            let r = exp.summarize(seed, &sups)?;
            let row = UcRow::new(&r, *delta);
            let summary = table(
                &["k", "eps", "delta", "trials", "failures", "rate", "mean_sup", "std_err", "sup_method"],
                &[vec![
                    group_digits(r.k as u64),
                    r.eps.to_string(),
                    delta.to_string(),
                    r.trials.to_string(),
                    r.failures.to_string(),
                    format!("{:.4}", r.empirical_rate),
                    format!("{:.5}", r.mean_sup),
                    format!("{:.5}", r.std_err),
                    r.sup_method.as_str().into(),
                ]],
            );
            RunOutput { files: vec![("ucheck.csv".into(), to_csv(&[row])?)], summary }
        }
    };
    if config.plot && matches!(config.command, Command::Vcdim { .. } | Command::Ucheck { .. }) {
        out.summary.push_str("(no plot data for this command)\n");
    }
    Ok(out)
}

fn bounds(ms: &[usize], epss: &[f64], deltas: &[f64], constants: BoundConstants, plot: bool) -> Result<RunOutput> {
    for (name, empty) in [("m", ms.is_empty()), ("eps", epss.is_empty()), ("delta", deltas.is_empty())] {
        if empty {
            return Err(CliError::Schema(format!("missing field `{name}`")));
        }
    }
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut series = Vec::new();
    for &m in ms {
        for &eps in epss {
            let mut elem = Vec::new();
            let mut rad = Vec::new();
            for &delta in deltas {
                let r = bound_report(&BoundQuery::new(m, eps, delta, constants)?)?;
                lines.push(vec![
                    m.to_string(),
                    eps.to_string(),
                    delta.to_string(),
                    group_digits(r.k_elementary),
                    group_digits(r.k_rademacher),
                    group_digits(r.k_solver_elementary),
                    group_digits(r.k_solver_rademacher),
                    flag(r.verified_elementary, r.elementary_in_regime),
                    flag(r.verified_rademacher, true),
                ]);
                elem.push((delta, r.k_elementary as f64));
                rad.push((delta, r.k_rademacher as f64));
                rows.push(BoundsRow::from(&r));
            }
            series.push(Series::new(format!("k_elementary_m{m}_eps{eps}"), elem));
            series.push(Series::new(format!("k_rademacher_m{m}_eps{eps}"), rad));
        }
    }
    let summary = table(
        &["m", "eps", "delta", "k_elementary", "k_rademacher", "k_solver_elem", "k_solver_rad", "elem_check", "rad_check"],
        &lines,
    );
    let mut files = vec![("bounds.csv".into(), to_csv(&rows)?)];
    if plot {
        files.push(("plot.csv".into(), plot_csv(&series)?));
    }
    Ok(RunOutput { files, summary })
}

fn flag(ok: bool, applicable: bool) -> String {
    match (applicable, ok) {
        (false, _) => "n/a".into(),
        (true, true) => "ok".into(),
        (true, false) => "VIOLATED".into(),
    }
}

fn growth(g: &GrowthArgs, seed: u64, pool: &Option<rayon::ThreadPool>) -> Result<GrowthEstimate> {
    if g.n.is_empty() {
        return Err(CliError::Schema("missing field `n`".into()));
    }
    let file = ClassFile::load(&g.class)?;
    let class = file.build()?;
    let method = g.method.to_method(g.budget);
    let policy = PointSetPolicy { random_draws: g.random_draws, structured: g.structured };
    let opts = EnumerationOptions { budget: g.budget, seed, ..Default::default() };
    // each n has its own streams, so splitting by n does not change any count
    let parts = map_indexed(pool, g.n.len(), |i| Ok(estimate_growth(&class, &file.id, &g.n[i..=i], method, policy, &opts)?))?;
    let mut est = GrowthEstimate { class_id: file.id.clone(), samples: Vec::new(), method, policy, seed };
    for p in parts {
        est.samples.extend(p.samples);
    }
    Ok(est)
}

fn growth_table(est: &GrowthEstimate) -> String {
    let rows: Vec<Vec<String>> = est
        .samples
        .iter()
        .map(|s| vec![est.class_id.clone(), s.n.to_string(), s.count.value.to_string(), s.exactness.as_str().into()])
        .collect();
    table(&["class", "n", "count", "exactness"], &rows)
}

fn growth_series(est: &GrowthEstimate) -> Series {
    Series::new(est.class_id.clone(), est.samples.iter().map(|s| (s.n as f64, s.count.value as f64)).collect())
}
