use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use jspec_core::exponent::parse_grid;
use jspec_core::linmap::EstimatorConfig;
use jspec_core::{Algebra, ExtExponent};

use crate::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Ftvn,
    Holder,
    GenHolder,
    LyapunovNorms,
    QuadrepNorms,
    PositiveNorms,
    Theorem1,
    Theorem2,
    Corollary4,
    ThreeLines,
    CpTable,
    Clarkson,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Ftvn,
        Suite::Holder,
        Suite::GenHolder,
        Suite::LyapunovNorms,
        Suite::QuadrepNorms,
        Suite::PositiveNorms,
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Corollary4,
        Suite::ThreeLines,
        Suite::CpTable,
        Suite::Clarkson,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Ftvn => "ftvn",
            Suite::Holder => "holder",
            Suite::GenHolder => "gen-holder",
            Suite::LyapunovNorms => "lyapunov-norms",
            Suite::QuadrepNorms => "quadrep-norms",
            Suite::PositiveNorms => "positive-norms",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Corollary4 => "corollary4",
            Suite::ThreeLines => "three-lines",
            Suite::CpTable => "cp-table",
            Suite::Clarkson => "clarkson",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.id() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown suite '{s}'")))
    }
}

/// Estimator knobs carried through a campaign; per-trial seeds are derived
/// from the campaign seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct EstimatorSettings {
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
}

impl Default for EstimatorSettings {
    fn default() -> Self {
        let d = EstimatorConfig::default();
        EstimatorSettings { restarts: d.restarts, max_iters: d.max_iters, tol: d.tol }
    }
}

impl EstimatorSettings {
    pub fn with_seed(&self, seed: u64) -> EstimatorConfig {
        EstimatorConfig { restarts: self.restarts, max_iters: self.max_iters, tol: self.tol, seed }
    }
}

pub const DEFAULT_GRID: &str = "1,4/3,2,3,4,inf";
pub const DEFAULT_THETAS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];
pub const DEFAULT_CP_GRID: &str = "1,1.25,1.5,2,3,4,8,inf";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct CampaignConfig {
    pub algebra: String,
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub exponent_grid: Vec<ExtExponent>,
    pub thetas: Vec<f64>,
    pub estimator: EstimatorSettings,
    /// Dimensions `n` for the C_p table.
    pub dims: Vec<usize>,
    /// Multiplies every theorem constant before comparison. Values below one
    /// make the bound deliberately false, which is how violation handling is
    /// exercised.
    pub constant_scale: f64,
}

impl CampaignConfig {
    pub fn new(suite: Suite, algebra: &str, trials: usize, seed: u64) -> Self {
        let grid = if suite == Suite::CpTable { DEFAULT_CP_GRID } else { DEFAULT_GRID };
        CampaignConfig {
            algebra: algebra.to_string(),
            suite,
            trials,
            seed,
            exponent_grid: parse_grid(grid).expect("default grid parses"),
            thetas: DEFAULT_THETAS.to_vec(),
            estimator: EstimatorSettings::default(),
            dims: vec![2, 3, 4],
            constant_scale: 1.0,
        }
    }

    pub fn validate(&self) -> Result<Arc<Algebra>, HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::Config("trials must be >= 1".into()));
        }
        if self.exponent_grid.is_empty() {
            return Err(HarnessError::Config("empty exponent grid".into()));
        }
        if self.thetas.is_empty() || self.thetas.iter().any(|t| !(0.0..=1.0).contains(t)) {
            return Err(HarnessError::Config("thetas must be non-empty and lie in [0, 1]".into()));
        }
        if !(self.constant_scale > 0.0 && self.constant_scale.is_finite()) {
            return Err(HarnessError::Config("constant-scale must be positive".into()));
        }
        if self.estimator.restarts == 0 || self.estimator.max_iters == 0 {
            return Err(HarnessError::Config("estimator restarts and max-iters must be >= 1".into()));
        }
        if self.suite == Suite::CpTable && (self.dims.is_empty() || self.dims.iter().any(|&n| n < 2)) {
            return Err(HarnessError::Config("C_p table dimensions must be >= 2".into()));
        }
        Ok(Arc::new(self.algebra.parse()?))
    }
}
