use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};
use vcdens_cli::config::{Command, FitConfig, GrowthArgs, MethodConfig, RunConfig};
use vcdens_cli::{run, CliError};
use vcdens_core::rng::DEFAULT_SEED;

/// Growth functions, VC-dimension and VC-density estimates, sample-size
/// bounds, and uniform-convergence experiments.
#[derive(Parser)]
#[command(name = "vcdens", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Run seed.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Seed from the clock instead (printed to stderr).
    #[arg(long, global = true, conflicts_with = "seed")]
    time_seed: bool,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output directory (default: $VCDENS_OUTPUT_DIR, else `.`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write plot.csv.
    #[arg(long, global = true)]
    plot: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Exact,
    Arrangement,
    Sampled,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fit {
    UpperHalf,
    All,
}

#[derive(Args)]
struct GrowthCli {
    /// Class file (JSON).
    #[arg(long)]
    class: PathBuf,
    /// Point-set sizes, comma separated.
    #[arg(long, required = true, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    method: Method,
    /// Weight draws per point set for sampled counts.
    #[arg(long, default_value_t = 20_000)]
    budget: usize,
    /// Random point sets per n, besides the structured one.
    #[arg(long, default_value_t = 4)]
    random_draws: usize,
    /// Skip the structured point set.
    #[arg(long)]
    no_structured: bool,
}

impl GrowthCli {
    fn into_args(self) -> GrowthArgs {
        GrowthArgs {
            class: self.class,
            n: self.n,
            method: match self.method {
                Method::Exact => MethodConfig::Exact,
                Method::Arrangement => MethodConfig::Arrangement,
                Method::Sampled => MethodConfig::Sampled,
                Method::Oracle => MethodConfig::Oracle,
            },
            budget: self.budget,
            random_draws: self.random_draws,
            structured: !self.no_structured,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample-size bounds over a grid of (m, eps, delta).
    Bounds {
        #[arg(long, required = true, value_delimiter = ',')]
        m: Vec<usize>,
        #[arg(long, required = true, value_delimiter = ',')]
        eps: Vec<f64>,
        #[arg(long, required = true, value_delimiter = ',')]
        delta: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 2.0)]
        c_prime: f64,
        #[arg(long, default_value_t = 64.0)]
        c_hat: f64,
    },
    /// Dichotomy counts for a range of n.
    Growth(GrowthCli),
    /// Brute-force VC-dimension search.
    Vcdim {
        #[arg(long)]
        class: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_d: usize,
        #[arg(long, default_value_t = 8)]
        random_sets: usize,
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
    },
    /// Growth counts plus the fitted log-log slope.
    Density {
        #[command(flatten)]
        growth: GrowthCli,
        #[arg(long, value_enum, default_value_t = Fit::UpperHalf)]
        fit: Fit,
        #[arg(long, requires = "fit_n_max")]
        fit_n_min: Option<usize>,
        #[arg(long, requires = "fit_n_min")]
        fit_n_max: Option<usize>,
    },
    /// Monte Carlo uniform-convergence check on a finite distribution.
    Ucheck {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        distribution: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        delta: f64,
        /// Sample size (default: k_elementary(m, eps, delta)).
        #[arg(long)]
        k: Option<usize>,
        /// Exponent for the default k (default: the class's parameter count).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
    },
    /// Run a JSON run config; relative paths resolve against its directory.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn config(cli: Cli) -> Result<RunConfig, CliError> {
    let command = match cli.command {
        Cmd::Bounds { m, eps, delta, c, c_prime, c_hat } => Command::Bounds { m, eps, delta, c, c_prime, c_hat },
        Cmd::Growth(g) => Command::Growth(g.into_args()),
        Cmd::Vcdim { class, max_d, random_sets, budget } => Command::Vcdim { class, max_d, random_sets, budget },
        Cmd::Density { growth, fit, fit_n_min, fit_n_max } => Command::Density {
            growth: growth.into_args(),
            fit: match fit {
                Fit::UpperHalf => FitConfig::UpperHalf,
                Fit::All => FitConfig::All,
            },
            fit_n_min,
            fit_n_max,
        },
        Cmd::Ucheck { class, distribution, eps, delta, k, m, trials, budget } => {
            Command::Ucheck { class, distribution, eps, delta, k, m, trials, budget }
        }
        Cmd::Run { config } => {
            let mut c = RunConfig::load(&config)?;
            c.resolve_paths(config.parent().unwrap_or_else(|| ".".as_ref()));
            if let Some(t) = cli.common.threads {
                c.threads = Some(t);
            }
            if cli.common.out.is_some() {
                c.out = cli.common.out;
            }
            return Ok(c);
        }
    };
    let seed = if cli.common.time_seed {
        let s = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos() as u64).unwrap_or(DEFAULT_SEED);
        eprintln!("seed: {s}");
        s
    } else {
        cli.common.seed
    };
    Ok(RunConfig { seed, threads: cli.common.threads, out: cli.common.out, plot: cli.common.plot, ..RunConfig::new(command) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match config(cli).and_then(|c| run(&c)) {
        Ok((out, paths)) => {
            print!("{}", out.summary);
            for p in paths {
                println!("wrote {}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
