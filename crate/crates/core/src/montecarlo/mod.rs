//! Monte Carlo verification of the limit theorems.
//!
//! Each replicate simulates one trajectory from seed `base_seed + i`, reduces it to a
//! handful of numbers and drops it, so memory stays `O(n)` per worker. Replicates
//! are pooled in index order; summary moments are computed from the sorted pool so
//! that any merge order of partial batches gives the same report.
//!
//! Two views of the statistic are reported. With `v = σ²` (dynamic) or `v = γ₀`
//! (static) and the oracle mean `m`,
//!
//! ```text
//! centred     Z_c = √k (p T_β − v/m^β)      → N(0, V)
//! uncentred   Z_u = Z_c + v/m^β             → N(v/m^β, V)
//! ```
//!
//! where `V = 2σ⁴/m^{2β}` (dynamic) or `Σ₀²/m^{2β}` (static). Moments and the KS
//! distance refer to the uncentred view.

mod cumulant;
mod diagnostics;
mod ks;

pub use cumulant::{cumulant_identity_check, CumulantCheck};
pub use diagnostics::{
    beta_consistency_experiment, bias_rate_experiment, moment_boundedness_diagnostic, BiasRateReport,
    BiasRow, ConsistencyReport, ConsistencyRow, MomentReport, MomentRow,
};
pub use ks::{ks_reference, ks_statistic};

use serde::{Deserialize, Serialize};

use crate::blocks::{plan_blocks, BlockPlan};
use crate::error::{Error, Result};
use crate::inference::{decision_statistic, gof_interval, gof_test, static_gof_interval, ConfidenceInterval};
use crate::parallel::{replicate_seed, run_replicates};
use crate::process::{simulate, theoretical_moments, ProcessSpec};
use crate::statistics::{centred_block_statistic, dynamic_taylor, mean_power, Mode};

/// Default cap on `n · replicates`.
pub const DEFAULT_BUDGET: u64 = 2_000_000_000;
pub const MIN_REPLICATES: usize = 100;

fn default_kappa() -> f64 {
    1.0
}

fn default_zeta() -> f64 {
    0.5
}

fn default_eta() -> f64 {
    0.05
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MCConfig {
    pub spec: ProcessSpec,
    pub n: usize,
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    #[serde(default = "default_zeta")]
    pub zeta: f64,
    pub beta: f64,
    #[serde(default = "default_eta")]
    pub eta: f64,
    pub replicates: usize,
    pub base_seed: u64,
    #[serde(default)]
    pub mode: Mode,
    /// Bartlett bandwidth for the estimated test; default rule when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bandwidth: Option<usize>,
    /// Cap on `n · replicates`; [`DEFAULT_BUDGET`] when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl MCConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replicates < MIN_REPLICATES {
            return Err(Error::Parameter(format!(
                "need at least {MIN_REPLICATES} replicates, got {}",
                self.replicates
            )));
        }
        let budget = self.budget.unwrap_or(DEFAULT_BUDGET);
        let cost = (self.n as u128) * (self.replicates as u128);
        if cost > budget as u128 {
            return Err(Error::Budget(format!(
                "n * replicates = {cost} exceeds the budget {budget}"
            )));
        }
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(Error::Parameter(format!("eta must lie in (0, 1), got {}", self.eta)));
        }
        if !self.beta.is_finite() {
            return Err(Error::Parameter("beta must be finite".into()));
        }
        Ok(())
    }

    pub fn plan(&self) -> Result<BlockPlan> {
        match self.mode {
            Mode::Static => BlockPlan::static_plan(self.n),
            Mode::Dynamic => plan_blocks(self.n, self.kappa, self.zeta),
        }
    }
}

/// Oracle quantities the experiment is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Oracle {
    pub m: f64,
    /// `σ²` (dynamic) or `γ₀` (static): the variance that `p T_β m^β` estimates.
    pub variance: f64,
    /// `2σ⁴` (dynamic) or `Σ₀²` (static).
    pub limit_variance: f64,
    pub target_mean: f64,
    pub target_var: f64,
}

pub fn oracle(spec: &ProcessSpec, mode: Mode, beta: f64) -> Result<Oracle> {
    let th = theoretical_moments(spec);
    let (variance, limit_variance) = match mode {
        Mode::Dynamic => (th.longrun_variance, 2.0 * th.longrun_variance.powi(2)),
        Mode::Static => (
            th.marginal_variance,
            th.longrun_variance_of_squares.ok_or_else(|| {
                Error::NotAvailable("no closed form for the long-run variance of squares".into())
            })?,
        ),
    };
    let mb = mean_power(th.mean, beta);
    Ok(Oracle {
        m: th.mean,
        variance,
        limit_variance,
        target_mean: variance / mb,
        target_var: limit_variance / (mb * mb),
    })
}

fn oracle_interval(o: &Oracle, mode: Mode, k: usize, beta: f64, eta: f64) -> Result<ConfidenceInterval> {
    match mode {
        Mode::Dynamic => gof_interval(o.m, o.variance, k, beta, eta),
        Mode::Static => static_gof_interval(o.m, o.variance, o.limit_variance, k, beta, eta),
    }
}

/// Per-replicate reduction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReplicateRow {
    pub replicate: usize,
    pub seed: u64,
    #[serde(rename = "T")]
    pub t: f64,
    pub centred: f64,
    pub uncentred: f64,
    pub covered: bool,
    pub rejected: bool,
}

/// Replicate outcomes kept sorted, so merged pools do not depend on merge order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ReplicatePool {
    uncentred: Vec<f64>,
    covered: usize,
    rejected: usize,
}

impl ReplicatePool {
    pub fn from_rows(rows: &[ReplicateRow]) -> Self {
        let mut uncentred: Vec<f64> = rows.iter().map(|r| r.uncentred).collect();
        uncentred.sort_by(f64::total_cmp);
        Self {
            uncentred,
            covered: rows.iter().filter(|r| r.covered).count(),
            rejected: rows.iter().filter(|r| r.rejected).count(),
        }
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.uncentred.extend(other.uncentred);
        self.uncentred.sort_by(f64::total_cmp);
        self.covered += other.covered;
        self.rejected += other.rejected;
        self
    }

    pub fn len(&self) -> usize {
        self.uncentred.len()
    }

    pub fn is_empty(&self) -> bool {
        self.uncentred.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.uncentred
    }

    /// Sample mean and unbiased variance.
    pub fn moments(&self) -> (f64, f64) {
        let n = self.len() as f64;
        let mean = self.uncentred.iter().sum::<f64>() / n;
        let var = self.uncentred.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        (mean, var)
    }

    pub fn coverage(&self) -> f64 {
        self.covered as f64 / self.len() as f64
    }

    pub fn rejection_rate(&self) -> f64 {
        self.rejected as f64 / self.len() as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MCReport {
    pub config: MCConfig,
    pub p: usize,
    pub k: usize,
    pub oracle: Oracle,
    /// Moments of the uncentred statistic `Z_u`.
    pub empirical_mean: f64,
    pub empirical_var: f64,
    /// `√(empirical_var / replicates)`.
    pub mean_se: f64,
    pub target_mean: f64,
    pub target_var: f64,
    /// Mean of `Z_c`, to be compared with 0.
    pub centred_mean: f64,
    pub ks_distance: f64,
    /// `1.36/√replicates`, the asymptotic 5% KS line.
    pub ks_reference: f64,
    /// Fraction of replicates inside the interval built from oracle `m` and variances.
    pub ci_coverage: f64,
    /// Rejection frequency of the test with estimated `m̂`, `σ̂²`.
    pub rejection_rate: f64,
    pub first_seed: u64,
    pub last_seed: u64,
}

/// Simulates all replicates and returns the per-replicate rows in index order.
pub fn run_replicate_rows(config: &MCConfig) -> Result<Vec<ReplicateRow>> {
    config.validate()?;
    let plan = config.plan()?;
    let o = oracle(&config.spec, config.mode, config.beta)?;
    let ci = oracle_interval(&o, config.mode, plan.k, config.beta, config.eta)?;
    run_replicates(config.replicates, config.base_seed, |i, seed| {
        let x = simulate(&config.spec, config.n, seed)?;
        let stats = dynamic_taylor(x.values(), &plan, config.beta)?;
        let centred = centred_block_statistic(&stats, o.m, o.variance);
        let test = gof_test(x.values(), &plan, config.beta, config.eta, config.bandwidth)?;
        Ok(ReplicateRow {
            replicate: i,
            seed,
            t: stats.t,
            centred,
            uncentred: centred + o.target_mean,
            covered: ci.contains(decision_statistic(&ci, plan.p as f64 * stats.t)),
            rejected: test.reject,
        })
    })
}

/// Summarises pooled replicates against the oracle.
pub fn summarize(config: &MCConfig, pool: &ReplicatePool) -> Result<MCReport> {
    if pool.len() < 2 {
        return Err(Error::Domain("need at least two replicates to summarise".into()));
    }
    let plan = config.plan()?;
    let o = oracle(&config.spec, config.mode, config.beta)?;
    let (mean, var) = pool.moments();
    let r = pool.len();
    Ok(MCReport {
        config: config.clone(),
        p: plan.p,
        k: plan.k,
        oracle: o,
        empirical_mean: mean,
        empirical_var: var,
        mean_se: (var / r as f64).sqrt(),
        target_mean: o.target_mean,
        target_var: o.target_var,
        centred_mean: mean - o.target_mean,
        ks_distance: ks_statistic(pool.samples(), o.target_mean, o.target_var)?,
        ks_reference: ks_reference(r),
        ci_coverage: pool.coverage(),
        rejection_rate: pool.rejection_rate(),
        first_seed: replicate_seed(config.base_seed, 0),
        last_seed: replicate_seed(config.base_seed, r - 1),
    })
}

/// Central limit experiment for the configured mode.
pub fn run_clt_experiment(config: &MCConfig) -> Result<MCReport> {
    let rows = run_replicate_rows(config)?;
    summarize(config, &ReplicatePool::from_rows(&rows))
}

/// Like [`run_clt_experiment`] but also returns the per-replicate rows.
pub fn run_clt_experiment_with_rows(config: &MCConfig) -> Result<(MCReport, Vec<ReplicateRow>)> {
    let rows = run_replicate_rows(config)?;
    let report = summarize(config, &ReplicatePool::from_rows(&rows))?;
    Ok((report, rows))
}
