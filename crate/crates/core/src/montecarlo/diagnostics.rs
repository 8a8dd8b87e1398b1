//! Deterministic and Monte Carlo diagnostics of the block construction.

use serde::Serialize;

use crate::blocks::plan_blocks;
use crate::error::{Error, Result};
use crate::inference::estimate_beta;
use crate::longrun_variance::analytic_gamma_variance;
use crate::parallel::run_replicates;
use crate::process::{simulate, theoretical_moments, ProcessSpec};
use crate::statistics::dynamic_taylor;

fn check_grid(grid: &[usize], what: &str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Parameter(format!("{what} grid is empty")));
    }
    if grid[0] == 0 || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parameter(format!(
            "{what} grid must be positive and strictly increasing"
        )));
    }
    Ok(())
}

/// Least-squares slope of `ys` against `xs`.
fn ols_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiasRow {
    pub p: usize,
    pub gamma_variance: f64,
    /// `|σ² − E Γ_p²|`.
    pub bias: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiasRateReport {
    pub sigma2: f64,
    pub rows: Vec<BiasRow>,
    /// Log-log slope of `bias` against `p` over rows with nonzero bias.
    pub slope: Option<f64>,
}

/// Exact `E Γ_p²` and its distance from `σ²` over a grid of block lengths.
pub fn bias_rate_experiment(spec: &ProcessSpec, p_grid: &[usize]) -> Result<BiasRateReport> {
    check_grid(p_grid, "block length")?;
    let sigma2 = theoretical_moments(spec).longrun_variance;
    let rows = p_grid
        .iter()
        .map(|&p| {
            let gv = analytic_gamma_variance(spec, p)?;
            Ok(BiasRow {
                p,
                gamma_variance: gv,
                bias: (sigma2 - gv).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter(|r| r.bias > 0.0)
        .map(|r| ((r.p as f64).ln(), r.bias.ln()))
        .unzip();
    Ok(BiasRateReport {
        sigma2,
        slope: ols_slope(&xs, &ys),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentRow {
    pub p: usize,
    /// Monte Carlo mean of `G⁴`, `G = √p (block mean − m)`.
    pub mean_g4: f64,
    pub se: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub rows: Vec<MomentRow>,
    pub max_min_ratio: f64,
    pub replicates: usize,
    pub base_seed: u64,
}

/// `E G⁴` for the first block of length `p`, estimated from independent replicates.
///
/// Replicate `i` uses the same seed for every `p`.
pub fn moment_boundedness_diagnostic(
    spec: &ProcessSpec,
    p_grid: &[usize],
    seed: u64,
    replicates: usize,
) -> Result<MomentReport> {
    check_grid(p_grid, "block length")?;
    if replicates < 2 {
        return Err(Error::Parameter(format!("need at least 2 replicates, got {replicates}")));
    }
    let m = theoretical_moments(spec).mean;
    let rows = p_grid
        .iter()
        .map(|&p| {
            let g4 = run_replicates(replicates, seed, |_, s| {
                let x = simulate(spec, p, s)?;
                let g = (p as f64).sqrt() * (x.values().iter().sum::<f64>() / p as f64 - m);
                Ok(g.powi(4))
            })?;
            let r = replicates as f64;
            let mean = g4.iter().sum::<f64>() / r;
            let var = g4.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (r - 1.0);
            Ok(MomentRow {
                p,
                mean_g4: mean,
                se: (var / r).sqrt(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max = rows.iter().map(|r| r.mean_g4).fold(f64::NEG_INFINITY, f64::max);
    let min = rows.iter().map(|r| r.mean_g4).fold(f64::INFINITY, f64::min);
    Ok(MomentReport {
        rows,
        max_min_ratio: max / min,
        replicates,
        base_seed: seed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConsistencyRow {
    pub n: usize,
    pub p: usize,
    pub median_abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub beta: f64,
    pub rows: Vec<ConsistencyRow>,
    /// Median errors strictly decrease along the grid.
    pub decreasing: bool,
}

/// Median `|β̂ − β|` over replicates for each `n`, with `β̂ = 2 − ln S_β / ln Ȳ`.
///
/// The self-normalised `S_β` converges to `m^{2−β}`, which is what the log-ratio
/// estimator inverts; `T_β` of block means tends to `σ²/(p m^β)` instead.
#[allow(clippy::too_many_arguments)]
pub fn beta_consistency_experiment(
    spec: &ProcessSpec,
    n_grid: &[usize],
    kappa: f64,
    zeta: f64,
    beta: f64,
    replicates: usize,
    seed: u64,
) -> Result<ConsistencyReport> {
    check_grid(n_grid, "sample size")?;
    if replicates == 0 {
        return Err(Error::Parameter("replicates must be positive".into()));
    }
    let rows = n_grid
        .iter()
        .map(|&n| {
            let plan = plan_blocks(n, kappa, zeta)?;
            let mut errs = run_replicates(replicates, seed, |_, s| {
                let x = simulate(spec, n, s)?;
                let st = dynamic_taylor(x.values(), &plan, beta)?;
                Ok((estimate_beta(st.s, st.mean_used)? - beta).abs())
            })?;
            errs.sort_by(f64::total_cmp);
            let mid = errs.len() / 2;
            let median = if errs.len() % 2 == 1 {
                errs[mid]
            } else {
                0.5 * (errs[mid - 1] + errs[mid])
            };
            Ok(ConsistencyRow {
                n,
                p: plan.p,
                median_abs_error: median,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let decreasing = rows
        .windows(2)
        .all(|w| w[1].median_abs_error < w[0].median_abs_error);
    Ok(ConsistencyReport {
        beta,
        rows,
        decreasing,
    })
}
