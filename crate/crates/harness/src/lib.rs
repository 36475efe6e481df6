//! Randomized verification campaigns with JSON reports that can be replayed
//! bit-for-bit from their recorded configuration.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use jspec_core::appendix::BruteForceConfig;
use jspec_core::random::derive_seed;
use jspec_core::ExtExponent;

pub mod config;
pub mod report;
mod suites;

pub use config::{CampaignConfig, EstimatorSettings, Suite};
pub use report::{cp_rows_csv, CheckSummary, CpRow, SuiteReport, Witness, SCHEMA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] jspec_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("report schema: {0}")]
    Schema(String),
    #[error("checksum mismatch: recorded {recorded}, computed {computed}")]
    Checksum { recorded: String, computed: String },
}

pub type Result<T> = std::result::Result<T, HarnessError>;

/// Witnesses kept per check; counts and worst margins cover every trial.
pub const MAX_WITNESSES_PER_CHECK: usize = 16;

/// Thread pool sized by `JSPEC_THREADS` (rayon's default when unset).
fn pool() -> rayon::ThreadPool {
    let n = std::env::var("JSPEC_THREADS").ok().and_then(|v| v.parse().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool builds")
}

// NaN margins count as failures and are recorded as the most negative finite
// value so the report stays valid JSON.
fn finite_margin(m: f64) -> f64 {
    if m.is_nan() {
        f64::MIN
    } else {
        m.clamp(f64::MIN, f64::MAX)
    }
}

pub fn run_suite(cfg: &CampaignConfig) -> Result<SuiteReport> {
    let alg = cfg.validate()?;
    let start = Instant::now();
    let ctx = suites::Ctx { alg, cfg: cfg.clone() };
    let n = suites::units(cfg);
    let outcomes: Vec<_> = pool().install(|| {
        (0..n)
            .into_par_iter()
            .map(|i| {
                let seed = derive_seed(cfg.seed, i as u64);
                suites::run_unit(&ctx, i, seed).map(|o| (i, seed, o))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
    })?;

    let mut checks: BTreeMap<String, CheckSummary> = BTreeMap::new();
    let mut metrics: BTreeMap<String, f64> = BTreeMap::new();
    let mut witnesses = Vec::new();
    let mut table = Vec::new();
    for (trial, seed, out) in outcomes {
        for c in out.checks {
            let margin = finite_margin(c.margin);
            let failed = c.margin.is_nan() || c.margin < -c.tol;
            let s = checks.entry(c.name.to_string()).or_insert(CheckSummary {
                tolerance: c.tol,
                count: 0,
                failures: 0,
                worst_margin: f64::MAX,
                worst_trial: trial,
                worst_seed: seed,
            });
            s.count += 1;
            if margin < s.worst_margin {
                s.worst_margin = margin;
                s.worst_trial = trial;
                s.worst_seed = seed;
            }
            if failed {
                s.failures += 1;
                if s.failures <= MAX_WITNESSES_PER_CHECK {
                    witnesses.push(Witness { check: c.name.to_string(), trial, seed, margin, detail: c.detail });
                }
            }
        }
        for (name, v, agg) in out.metrics {
            let e = metrics.entry(name.to_string());
            match agg {
                suites::Agg::Max => {
                    let slot = e.or_insert(f64::MIN);
                    *slot = slot.max(v);
                }
                suites::Agg::Sum => *e.or_insert(0.0) += v,
            }
        }
        table.extend(out.rows);
    }
    let pass = !checks.is_empty() && checks.values().all(|c| c.failures == 0);
    Ok(SuiteReport {
        schema_version: SCHEMA_VERSION,
        suite: cfg.suite,
        config: cfg.clone(),
        pass,
        checks,
        metrics,
        witnesses,
        table,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        checksum: String::new(),
    }
    .seal())
}

/// Result of re-running a recorded campaign.
#[derive(Debug, Clone)]
pub struct ReplayOutcome {
    pub recorded: SuiteReport,
    pub rerun: SuiteReport,
    /// Every field except wall time matches bit-for-bit.
    pub identical: bool,
}

impl ReplayOutcome {
    /// Checks whose worst margin differs between the two runs.
    pub fn margin_differences(&self) -> Vec<(String, f64, f64)> {
        let mut out = Vec::new();
        for (name, a) in &self.recorded.checks {
            let b = self.rerun.checks.get(name).map_or(f64::NAN, |c| c.worst_margin);
            if a.worst_margin.to_bits() != b.to_bits() {
                out.push((name.clone(), a.worst_margin, b));
            }
        }
        out
    }
}

pub fn replay_report(recorded: SuiteReport) -> Result<ReplayOutcome> {
    let rerun = run_suite(&recorded.config)?;
    let identical = recorded.same_results(&rerun);
    Ok(ReplayOutcome { recorded, rerun, identical })
}

/// Verifies schema and checksum, then re-runs the recorded configuration.
pub fn replay(path: &Path) -> Result<ReplayOutcome> {
    replay_report(SuiteReport::read(path)?)
}

/// Brute-force maxima against the closed-form C_p for every `(n, p)`.
pub fn cp_table(dims: &[usize], grid: &[ExtExponent], multistarts: usize, seed: u64) -> Result<Vec<CpRow>> {
    let cells: Vec<(usize, ExtExponent)> = dims.iter().flat_map(|&n| grid.iter().map(move |&p| (n, p))).collect();
    let rows = pool().install(|| {
        cells
            .par_iter()
            .enumerate()
            .map(|(i, &(n, p))| {
                let cfg = BruteForceConfig { multistarts, seed: derive_seed(seed, i as u64), ..Default::default() };
                suites::cp_row(n, p, &cfg)
            })
            .collect::<std::result::Result<Vec<_>, _>>()
    })?;
    Ok(rows)
}
