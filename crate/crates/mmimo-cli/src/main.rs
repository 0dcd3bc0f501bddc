//! `mmimo`: sum-rate sweeps, self-checks, and selection thresholds.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use mmimo::SystemConfig;
use mmimo_cli::cfgfile::{parse_config, FileConfig};
use mmimo_cli::curve::{known_names, parse_curve_list};
use mmimo_cli::figures::{db_to_linear, figure_spec};
use mmimo_cli::sweep::{expand_range, run_sweep, SweepAxis, SweepSpec};
use mmimo_cli::thresholds::thresholds_report;
use mmimo_cli::validation::{all_passed, run_validation};

const DEFAULT_M: usize = 24;
const DEFAULT_K: usize = 20;
const DEFAULT_TRIALS: u64 = 10_000;
const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(
    name = "mmimo",
    version,
    about = "Multi-user massive-MIMO sum-rate sweeps, self-checks, and scheme-selection thresholds"
)]
struct Cli {
    /// Worker threads for Monte-Carlo runs (0 = all cores); any value gives
    /// identical results
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the statistical self-checks; exits nonzero if any fails
    Validate(ValidateArgs),
    /// Print selection thresholds and, once powers are given, mode decisions
    Thresholds(ThresholdsArgs),
    /// Sweep one axis and emit a CSV document
    Sweep(SweepArgs),
    /// Recreate a canned figure sweep and emit its CSV
    ReproduceFig(ReproduceArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Base seed for every check
    #[arg(long)]
    seed: Option<u64>,
    /// Optional "key = value" config file; flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdsArgs {
    /// Antenna count M
    #[arg(long)]
    m: Option<usize>,
    /// User count K; unlocks the per-k power thresholds
    #[arg(long)]
    k: Option<usize>,
    /// Downlink total power in dB; unlocks K_cross,DL and the downlink decision
    #[arg(long, allow_negative_numbers = true)]
    pt_db: Option<f64>,
    /// Uplink per-user power in dB; unlocks K_cross,UL and the uplink decision
    #[arg(long, allow_negative_numbers = true)]
    pu_db: Option<f64>,
    /// Optional "key = value" config file; flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

fn sweep_after_help() -> String {
    format!(
        "Curves:\n  {}\n\nDefault ranges: users 1:24:1, power-db -20:20:1, antennas 10:100:10",
        known_names()
    )
}

#[derive(Args)]
#[command(after_help = sweep_after_help())]
struct SweepArgs {
    /// Antenna count M
    #[arg(long)]
    m: Option<usize>,
    /// User count K
    #[arg(long)]
    k: Option<usize>,
    /// Downlink total power in dB
    #[arg(long, allow_negative_numbers = true)]
    pt_db: Option<f64>,
    /// Uplink per-user power in dB
    #[arg(long, allow_negative_numbers = true)]
    pu_db: Option<f64>,
    /// Monte-Carlo trials per point
    #[arg(long)]
    trials: Option<u64>,
    /// Base seed for the per-trial substreams
    #[arg(long)]
    seed: Option<u64>,
    /// Axis to sweep: users, power-db, or antennas
    #[arg(long)]
    axis: Option<String>,
    /// Inclusive grid start:stop:step; default depends on the axis
    #[arg(long, allow_hyphen_values = true)]
    axis_range: Option<String>,
    /// Comma-separated curve names (full list below)
    #[arg(long)]
    curves: Option<String>,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit closed forms outside their certified power range
    #[arg(long)]
    exploratory: bool,
    /// Optional "key = value" config file; flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Figure id: 3a, 3b, 4a, 4b, 6a, 6b, 7a, 7b, 8a, 8b, 9a, or 9b
    id: String,
    /// Monte-Carlo trials per point
    #[arg(long)]
    trials: Option<u64>,
    /// Base seed for the per-trial substreams
    #[arg(long)]
    seed: Option<u64>,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: cannot size the thread pool: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn load_file(path: Option<&PathBuf>) -> Result<FileConfig> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .with_context(|| format!("cannot read config file {}", p.display()))?;
            Ok(parse_config(&text)?)
        }
    }
}

fn emit(document: &str, out: Option<&PathBuf>) -> Result<ExitCode> {
    match out {
        Some(path) => fs::write(path, document)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{document}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn default_range(axis: SweepAxis) -> &'static str {
    match axis {
        SweepAxis::Users => "1:24:1",
        SweepAxis::PowerDb => "-20:20:1",
        SweepAxis::Antennas => "10:100:10",
    }
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Validate(a) => {
            let file = load_file(a.config.as_ref())?;
            let seed = a.seed.or(file.seed).unwrap_or(DEFAULT_SEED);
            let checks = run_validation(seed);
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            if all_passed(&checks) {
                println!("all {} checks passed (seed {seed})", checks.len());
                Ok(ExitCode::SUCCESS)
            } else {
                let failed = checks.iter().filter(|c| !c.passed).count();
                println!("{failed} of {} checks FAILED (seed {seed})", checks.len());
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Thresholds(a) => {
            let file = load_file(a.config.as_ref())?;
            let m = a.m.or(file.m).unwrap_or(DEFAULT_M);
            let k = a.k.or(file.k);
            let pt_db = a.pt_db.or(file.pt_db);
            let pu_db = a.pu_db.or(file.pu_db);
            print!("{}", thresholds_report(m, k, pt_db, pu_db)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(a) => {
            let file = load_file(a.config.as_ref())?;
            let axis_name = a.axis.or(file.axis).context(
                "a sweep needs an axis; pass --axis users|power-db|antennas or set axis in the config file",
            )?;
            let axis: SweepAxis = axis_name.parse()?;
            let range = a.axis_range.unwrap_or_else(|| default_range(axis).to_string());
            let curve_list = a.curves.with_context(|| {
                format!("a sweep needs --curves; known curves: {}", known_names())
            })?;
            let fixed = SystemConfig {
                m: a.m.or(file.m).unwrap_or(DEFAULT_M),
                k: a.k.or(file.k).unwrap_or(DEFAULT_K),
                pt: db_to_linear(a.pt_db.or(file.pt_db).unwrap_or(0.0)),
                pu: db_to_linear(a.pu_db.or(file.pu_db).unwrap_or(0.0)),
                trials: a.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS),
                seed: a.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            };
            let spec = SweepSpec::new(
                axis,
                expand_range(&range)?,
                fixed,
                parse_curve_list(&curve_list)?,
                a.exploratory,
            )?;
            emit(&run_sweep(&spec)?, a.out.as_ref())
        }
        Command::ReproduceFig(a) => {
            let spec = figure_spec(
                &a.id,
                a.trials.unwrap_or(DEFAULT_TRIALS),
                a.seed.unwrap_or(DEFAULT_SEED),
            )?;
            emit(&run_sweep(&spec)?, a.out.as_ref())
        }
    }
}
