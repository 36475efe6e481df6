use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use jspec::config::{CampaignConfig, Suite};
use jspec::{cp_rows_csv, cp_table, replay, run_suite};
use jspec_core::exponent::parse_grid;

#[derive(Parser, Debug)]
#[command(name = "jspec", version, about = "Spectral p-norm interpolation verification campaigns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one suite and write its JSON report; exits non-zero on any failure.
    Run(RunArgs),
    /// Re-run a recorded report and compare results bit-for-bit.
    Replay { report: PathBuf },
    /// Brute-force C_p table.
    CpTable(CpArgs),
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    #[arg(long)]
    suite: Suite,
    #[arg(long, default_value = "sym:3")]
    algebra: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// Comma-separated exponents, e.g. `1,4/3,2,inf`.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, value_delimiter = ',')]
    thetas: Option<Vec<f64>>,
    #[arg(long)]
    constant_scale: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args, Debug)]
struct CpArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
    n: Vec<usize>,
    #[arg(long, default_value = jspec::config::DEFAULT_CP_GRID)]
    grid: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, default_value_t = 200)]
    multistarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> anyhow::Result<CampaignConfig> {
        let mut cfg = CampaignConfig::new(self.suite, &self.algebra, self.trials, self.seed);
        if let Some(g) = &self.grid {
            cfg.exponent_grid = parse_grid(g)?;
        }
        if let Some(t) = &self.thetas {
            cfg.thetas = t.clone();
        }
        if let Some(d) = &self.dims {
            cfg.dims = d.clone();
        }
        if let Some(x) = self.restarts {
            cfg.estimator.restarts = x;
        }
        if let Some(x) = self.max_iters {
            cfg.estimator.max_iters = x;
        }
        if let Some(x) = self.tol {
            cfg.estimator.tol = x;
        }
        if let Some(x) = self.constant_scale {
            cfg.constant_scale = x;
        }
        Ok(cfg)
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> anyhow::Result<ExitCode> {
    match Cli::parse().command {
        Command::Run(args) => {
            let report = run_suite(&args.config()?)?;
            emit(&args.out, &(report.to_json() + "\n"))?;
            for (name, c) in &report.checks {
                eprintln!(
                    "{:<28} {:>7} checks  {:>5} failures  worst margin {:+.3e}",
                    name, c.count, c.failures, c.worst_margin
                );
            }
            eprintln!("{}: {}", report.suite, if report.pass { "PASS" } else { "FAIL" });
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Replay { report } => {
            let outcome = replay(&report)?;
            for (name, a, b) in outcome.margin_differences() {
                eprintln!("{name}: recorded {a:+.6e}, replayed {b:+.6e}");
            }
            let verdict = if outcome.recorded.pass { "pass" } else { "fail" };
            if outcome.identical {
                eprintln!("replay identical ({verdict})");
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("replay differs from the recorded report");
                Ok(ExitCode::FAILURE)
            }
        }
        Command::CpTable(args) => {
            let grid = parse_grid(&args.grid)?;
            let rows = cp_table(&args.n, &grid, args.multistarts, args.seed)?;
            let text = match args.format {
                Format::Csv => cp_rows_csv(&rows)?,
                Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
            };
            emit(&args.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
