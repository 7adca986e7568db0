//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};
use vcdens_cli::config::{Command, FitConfig, GrowthArgs, MethodConfig, RunConfig};
use vcdens_cli::{execute, RunOutput};
use vcdens_core::bounds::{
    bound_report, delta_crossover, k_elementary, k_rademacher, BoundConstants, BoundQuery,
};
use vcdens_core::class::EnumerationOptions;
use vcdens_core::dichotomy::{
    count_dichotomies, count_dichotomies_exact_ltf, sauer_shelah_cap, vc_dim_bruteforce, GrowthMethod, LtfCaps,
    PointSet, VcSearch,
};
use vcdens_core::hypothesis::BaselineClass;
use vcdens_core::rng;
use vcdens_core::uc::DiscreteDistribution;
use vcdens_core::HypothesisClass;

const COVER: [u128; 8] = [2, 4, 8, 14, 22, 32, 44, 58];
const NS: [usize; 4] = [16, 32, 64, 128];
const SEED: u64 = rng::DEFAULT_SEED;

type Outcome = Result<String, String>;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn ltf(d: usize) -> HypothesisClass {
    HypothesisClass::Baseline(BaselineClass::linear_threshold(d).unwrap())
}

fn union(m: usize, domain: usize) -> HypothesisClass {
    let pts = PointSet::new((0..domain).map(|i| vec![i as f64]).collect()).unwrap();
    HypothesisClass::Baseline(BaselineClass::union_of_points(m, pts))
}

/// A class, a point set, its exact count, and the measured VC-dimension.
struct CountedConfig {
    label: String,
    n: usize,
    count: u128,
    vc: usize,
}

#[derive(Default)]
struct Shared {
    ltf2_sets: Vec<(usize, u128)>,
    vc_ltf2: Option<usize>,
    vc_union: Vec<(usize, usize)>,
    density_csv: Vec<Vec<(String, Vec<u8>)>>,
    ucheck_csv: Vec<Vec<(String, Vec<u8>)>>,
}

fn check(cond: bool, pass: String, fail: String) -> Outcome {
    if cond {
        Ok(pass)
    } else {
        Err(fail)
    }
}

fn within(limit: Duration, elapsed: Duration, out: Outcome) -> Outcome {
    match out {
        Ok(s) if elapsed > limit => Err(format!("{s}; too slow: {:.1?} > {:?}", elapsed, limit)),
        o => o,
    }
}

fn cover_counts(sh: &mut Shared) -> Outcome {
    let mut got = Vec::new();
    for n in 1..=8 {
        for r in 0..3u64 {
            let pts = PointSet::random_general_position(n, 2, &mut rng::stream(SEED, &[0xC0, n as u64, r]))
                .map_err(|e| e.to_string())?;
            let c = count_dichotomies_exact_ltf(&pts, LtfCaps::default()).map_err(|e| e.to_string())?;
            sh.ltf2_sets.push((n, c));
            if c != COVER[n - 1] {
                return Err(format!("n = {n}, draw {r}: count {c}, expected {}", COVER[n - 1]));
            }
        }
        let poly = PointSet::convex_polygon(n).map_err(|e| e.to_string())?;
        let c = count_dichotomies_exact_ltf(&poly, LtfCaps::default()).map_err(|e| e.to_string())?;
        sh.ltf2_sets.push((n, c));
        got.push(c);
        if c != COVER[n - 1] {
            return Err(format!("convex {n}-gon: count {c}, expected {}", COVER[n - 1]));
        }
    }
    Ok(format!("counts {got:?} on 32 point sets"))
}

fn vc_oracles(sh: &mut Shared) -> Outcome {
    let search = VcSearch { seed: SEED, ..Default::default() };
    let v = vc_dim_bruteforce(&ltf(2), &search).map_err(|e| e.to_string())?;
    sh.vc_ltf2 = Some(v.value);
    let mut detail = vec![format!("ltf2 -> {}", v.value)];
    let mut ok = v.value == 3 && !v.at_cap;
    for m in 1..=3 {
        let u = vc_dim_bruteforce(&union(m, 10), &search).map_err(|e| e.to_string())?;
        sh.vc_union.push((m, u.value));
        detail.push(format!("union{m} -> {}", u.value));
        ok &= u.value == m && !u.at_cap;
    }
    check(ok, detail.join(", "), detail.join(", "))
}

fn density_run(file: &str, method: MethodConfig, threads: Option<usize>) -> Result<RunOutput, String> {
    let cfg = RunConfig {
        threads,
        ..RunConfig::new(Command::Density {
            growth: GrowthArgs {
                class: configs().join(file),
                n: NS.to_vec(),
                method,
                budget: 20_000,
                random_draws: 4,
                structured: true,
            },
            fit: FitConfig::UpperHalf,
            fit_n_min: None,
            fit_n_max: None,
        })
    };
    execute(&cfg).map_err(|e| format!("{file}: {e}"))
}

fn slope_of(out: &RunOutput) -> Result<f64, String> {
    let (_, bytes) = out.files.iter().find(|(n, _)| n == "density.csv").ok_or("no density.csv")?;
    let mut r = csv::Reader::from_reader(bytes.as_slice());
    let rec = r.records().next().ok_or("empty density.csv")?.map_err(|e| e.to_string())?;
    rec[1].parse().map_err(|e: std::num::ParseFloatError| e.to_string())
}

fn counts_of(out: &RunOutput) -> Result<Vec<u128>, String> {
    let (_, bytes) = out.files.iter().find(|(n, _)| n == "growth.csv").ok_or("no growth.csv")?;
    let mut r = csv::Reader::from_reader(bytes.as_slice());
    r.records().map(|rec| rec.map_err(|e| e.to_string())?[1].parse::<u128>().map_err(|e| e.to_string())).collect()
}

fn criterion3_runs(threads: Option<usize>) -> Result<Vec<RunOutput>, String> {
    Ok(vec![
        density_run("union2.json", MethodConfig::Oracle, threads)?,
        density_run("ltf2.json", MethodConfig::Oracle, threads)?,
        density_run("ltf2.json", MethodConfig::Arrangement, threads)?,
        density_run("threshold_net.json", MethodConfig::Sampled, threads)?,
    ])
}

fn density_slopes(sh: &mut Shared) -> Outcome {
    let runs = criterion3_runs(None)?;
    let s: Vec<f64> = runs.iter().map(slope_of).collect::<Result<_, _>>()?;
    let oracle = counts_of(&runs[1])?;
    let arrangement = counts_of(&runs[2])?;
    sh.density_csv.push(runs.into_iter().flat_map(|r| r.files).collect());
    let detail = format!(
        "union2 {:.4}, ltf2 {:.4} (arrangement {:.4}), threshold net {:.4}",
        s[0], s[1], s[2], s[3]
    );
    let band = 1.8..=2.05;
    check(
        band.contains(&s[0]) && band.contains(&s[1]) && band.contains(&s[2]) && s[3] <= 4.1 && oracle == arrangement,
        detail.clone(),
        format!("{detail}; ltf2 oracle {oracle:?} vs arrangement {arrangement:?}"),
    )
}

fn sauer_shelah(sh: &mut Shared) -> Outcome {
    let vc_ltf = sh.vc_ltf2.ok_or("criterion 2 did not measure ltf2")?;
    let mut configs: Vec<CountedConfig> = sh
        .ltf2_sets
        .iter()
        .map(|&(n, count)| CountedConfig { label: "ltf2".into(), n, count, vc: vc_ltf })
        .collect();
    let opts = EnumerationOptions { seed: SEED, ..Default::default() };
    for &(m, vc) in &sh.vc_union {
        let class = union(m, 10);
        for n in 1..=10 {
            let pts = PointSet::new((0..n).map(|i| vec![i as f64]).collect()).map_err(|e| e.to_string())?;
            let (c, _) = count_dichotomies(&class, &pts, GrowthMethod::Exact, &opts).map_err(|e| e.to_string())?;
            let listed = class.traces_on(&pts, &opts).map_err(|e| e.to_string())?.len() as u128;
            if listed != c.value {
                return Err(format!("union{m}, n = {n}: enumerated {listed} traces but counted {}", c.value));
            }
            configs.push(CountedConfig { label: format!("union{m}"), n, count: c.value, vc });
        }
    }
    let violations: Vec<String> = configs
        .iter()
        .filter(|c| c.count > sauer_shelah_cap(c.vc, c.n).value)
        .map(|c| format!("{} n={} count={} cap={}", c.label, c.n, c.count, sauer_shelah_cap(c.vc, c.n).value))
        .collect();
    check(
        violations.is_empty(),
        format!("{} configurations, 0 violations", configs.len()),
        format!("{} violations: {}", violations.len(), violations.join("; ")),
    )
}

fn grid() -> impl Iterator<Item = BoundQuery> {
    [1usize, 2, 4, 8].into_iter().flat_map(|m| {
        [0.05, 0.1, 0.2].into_iter().flat_map(move |eps| {
            [0.05, 0.1, 0.2].into_iter().map(move |delta| BoundQuery::new(m, eps, delta, BoundConstants::default()).unwrap())
        })
    })
}

fn elementary_back_check(_: &mut Shared) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for q in grid() {
        let r = bound_report(&q).map_err(|e| e.to_string())?;
        if r.elementary_in_regime {
            checked += 1;
            if !r.verified_elementary {
                bad.push(format!("m={} eps={} delta={}: {}", q.m, q.eps, q.delta, r.deviation_elementary));
            }
        }
    }
    check(
        bad.is_empty() && checked > 0,
        format!("{checked} of 36 queries in regime, 0 violations"),
        format!("{checked} in regime, violations: {}", bad.join("; ")),
    )
}

fn rademacher_back_check(_: &mut Shared) -> Outcome {
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for q in grid() {
        let r = bound_report(&q).map_err(|e| e.to_string())?;
        worst = worst.max(r.deviation_rademacher / q.eps);
        if !r.verified_rademacher || !r.verified_solver_rademacher || r.k_solver_rademacher > r.k_rademacher {
            bad.push(format!(
                "m={} eps={} delta={}: dev {} solver {} closed {}",
                q.m, q.eps, q.delta, r.deviation_rademacher, r.k_solver_rademacher, r.k_rademacher
            ));
        }
    }
    check(
        bad.is_empty(),
        format!("36 queries, 0 violations (largest deviation/eps {worst:.4})"),
        format!("violations: {}", bad.join("; ")),
    )
}

fn crossover(_: &mut Shared) -> Outcome {
    let c = BoundConstants::default();
    let q = |delta: f64| BoundQuery::new(1, 0.1, delta, c).unwrap();
    // log grid over (1e-6, 0.2]
    let steps = 2000;
    let (lo, hi) = (1e-6f64.ln(), 0.2f64.ln());
    let mut first_bad = None;
    for i in 1..=steps {
        let d = (lo + (hi - lo) * i as f64 / steps as f64).exp().min(0.2);
        if k_rademacher(&q(d)) >= k_elementary(&q(d)) {
            first_bad = Some(d);
            break;
        }
    }
    let exact = delta_crossover(1, 0.1, c, 1e-6, 0.999).map_err(|e| e.to_string())?;
    let ratio = k_elementary(&q(1e-4)) as f64 / k_rademacher(&q(1e-4)) as f64;
    let detail = format!(
        "k_rademacher < k_elementary on all of (1e-6, 0.2]; formulas cross at delta = {}; ratio at 1e-4 = {ratio:.3e}",
        exact.map_or("none".into(), |d| format!("{d:.4}"))
    );
    check(
        first_bad.is_none() && ratio > 10.0 && exact.is_some_and(|d| d > 1e-6),
        detail.clone(),
        format!("{detail}; first failing delta {first_bad:?}"),
    )
}

fn ucheck_run(threads: Option<usize>) -> Result<RunOutput, String> {
    let path = configs().join("ucheck_ltf2.json");
    let mut cfg = RunConfig::load(&path).map_err(|e| e.to_string())?;
    cfg.resolve_paths(&configs());
    cfg.threads = threads;
    execute(&cfg).map_err(|e| e.to_string())
}

fn uniform_convergence(sh: &mut Shared) -> Outcome {
    let file = vcdens_cli::config::DistributionFile::load(&configs().join("octagon8.json")).map_err(|e| e.to_string())?;
    let d: DiscreteDistribution = file.build().map_err(|e| e.to_string())?;
    if !d.support().is_in_general_position().map_err(|e| e.to_string())? || d.len() != 8 {
        return Err("support is not 8 points in general position".into());
    }
    let traces = ltf(2).traces_on(d.support(), &EnumerationOptions::default()).map_err(|e| e.to_string())?;
    if !traces.traces.contains(d.labels()) {
        return Err("labels are not realizable by a half-plane".into());
    }
    let out = ucheck_run(None)?;
    let (_, bytes) = &out.files[0];
    let mut r = csv::Reader::from_reader(bytes.as_slice());
    let rec = r.records().next().ok_or("empty ucheck.csv")?.map_err(|e| e.to_string())?;
    let k: u64 = rec[0].parse().map_err(|_| "bad k")?;
    let rate: f64 = rec[5].parse().map_err(|_| "bad rate")?;
    let method = rec[6].to_string();
    sh.ucheck_csv.push(out.files);
    let expected_k = k_elementary(&BoundQuery::new(3, 0.25, 0.2, BoundConstants::default()).unwrap());
    let limit = 0.2 + 3.0 * (0.2f64 * 0.8 / 200.0).sqrt();
    let detail = format!("k = {k}, {} traces, failure rate {rate} (limit {limit:.4}), {method}", traces.len());
    check(k == expected_k && rate <= limit && method == "exact_trace_enumeration", detail.clone(), detail)
}

fn write_all(dir: &Path, files: &[(String, Vec<u8>)]) -> Result<Vec<PathBuf>, String> {
    files
        .iter()
        .enumerate()
        .map(|(i, (name, bytes))| {
            let p = dir.join(format!("{i:02}_{name}"));
            std::fs::write(&p, bytes).map_err(|e| e.to_string())?;
            Ok(p)
        })
        .collect()
}

fn determinism(sh: &mut Shared) -> Outcome {
    let first: Vec<(String, Vec<u8>)> = sh.density_csv.iter().chain(&sh.ucheck_csv).flatten().cloned().collect();
    if first.is_empty() {
        return Err("criteria 3 and 8 produced no CSVs".into());
    }
    // repeat on four worker threads: same seeds must give the same bytes
    let mut second: Vec<(String, Vec<u8>)> =
        criterion3_runs(Some(4))?.into_iter().flat_map(|r| r.files).collect();
    second.extend(ucheck_run(Some(4))?.files);
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    let pa = write_all(a.path(), &first)?;
    let pb = write_all(b.path(), &second)?;
    if pa.len() != pb.len() {
        return Err(format!("{} files vs {} files", pa.len(), pb.len()));
    }
    let differing: Vec<String> = pa
        .iter()
        .zip(&pb)
        .filter(|(x, y)| std::fs::read(x).ok() != std::fs::read(y).ok())
        .map(|(x, _)| x.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    check(
        differing.is_empty(),
        format!("{} CSV files byte-identical across runs", pa.len()),
        format!("differing files: {}", differing.join(", ")),
    )
}

type Criterion = (u32, &'static str, Duration, fn(&mut Shared) -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "Cover counts on planar general-position sets, n = 1..8", Duration::from_secs(10), cover_counts),
        (2, "VC-dimension oracles (planar LTF = 3, union of m points = m)", Duration::from_secs(60), vc_oracles),
        (3, "VC-density slopes over n = 16..128", Duration::from_secs(300), density_slopes),
        (4, "Sauer-Shelah cap on criteria 1-2 configurations", Duration::from_secs(60), sauer_shelah),
        (5, "Growth-route sample size back-verification", Duration::from_secs(1), elementary_back_check),
        (6, "Rademacher-route sample size back-verification", Duration::from_secs(60), rademacher_back_check),
        (7, "Rademacher size wins for small delta", Duration::from_secs(60), crossover),
        (8, "Uniform-convergence Monte Carlo on 8 planar points", Duration::from_secs(300), uniform_convergence),
        (9, "Byte-identical CSVs on repeat", Duration::from_secs(600), determinism),
    ];
    let mut shared = Shared::default();
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let out = f(&mut shared);
        let elapsed = start.elapsed();
        let out = within(limit, elapsed, out);
        let (tag, detail) = match &out {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if out.is_err() {
            failed += 1;
        }
        println!("{tag} [{id}] {name}: {detail} ({:.2?})", elapsed);
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
