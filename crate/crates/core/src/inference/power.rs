//! Empirical power against alternatives `β = β₀ + δ`.

use serde::Serialize;

use super::{decide, interval_for};
use crate::blocks::plan_blocks;
use crate::error::{Error, Result};
use crate::longrun_variance;
use crate::parallel::run_replicates;
use crate::process::{simulate, ProcessSpec};
use crate::statistics::{dynamic_taylor, mean_power};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerRow {
    pub delta: f64,
    pub rejection_rate: f64,
    /// Binomial standard error of `rejection_rate`.
    pub se: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerReport {
    pub beta0: f64,
    pub eta: f64,
    pub n: usize,
    pub p: usize,
    pub k: usize,
    pub replicates: usize,
    pub base_seed: u64,
    pub rows: Vec<PowerRow>,
    /// Rejection rates are nondecreasing in `δ` (grid taken in the given order).
    pub monotone: bool,
}

/// Rejection frequency of the test of `β₀` when the statistic is evaluated at `β₀ + δ`.
///
/// Every replicate trajectory is shared across the `δ` grid, so the rates are coupled
/// and differences between them are not diluted by independent noise.
#[allow(clippy::too_many_arguments)]
pub fn power_experiment(
    spec: &ProcessSpec,
    n: usize,
    kappa: f64,
    zeta: f64,
    beta0: f64,
    deltas: &[f64],
    eta: f64,
    replicates: usize,
    seed: u64,
) -> Result<PowerReport> {
    if replicates < 100 {
        return Err(Error::Parameter(format!("need at least 100 replicates, got {replicates}")));
    }
    if deltas.is_empty() || deltas.iter().any(|d| !(*d >= 0.0 && d.is_finite())) {
        return Err(Error::Parameter("deltas must be a nonempty list of values >= 0".into()));
    }
    let plan = plan_blocks(n, kappa, zeta)?;
    let hits = run_replicates(replicates, seed, |_, s| {
        let x = simulate(spec, n, s)?;
        let stats = dynamic_taylor(x.values(), &plan, beta0)?;
        let used = &x.values()[..plan.used_len()];
        let lrv = longrun_variance::estimate(used, None, plan.is_static())?;
        let interval = interval_for(&plan, &lrv, beta0, eta)?;
        Ok(deltas
            .iter()
            .map(|d| {
                // T_{β₀+δ} = T_{β₀} / Ȳ^δ
                let t = stats.t / mean_power(stats.mean_used, *d);
                decide(interval, t, &plan, &lrv).reject
            })
            .collect::<Vec<bool>>())
    })?;
    let r = replicates as f64;
    let rows: Vec<PowerRow> = deltas
        .iter()
        .enumerate()
        .map(|(j, &delta)| {
            let rate = hits.iter().filter(|h| h[j]).count() as f64 / r;
            PowerRow {
                delta,
                rejection_rate: rate,
                se: (rate * (1.0 - rate) / r).sqrt(),
            }
        })
        .collect();
    let monotone = rows.windows(2).all(|w| w[1].rejection_rate >= w[0].rejection_rate);
    Ok(PowerReport {
        beta0,
        eta,
        n,
        p: plan.p,
        k: plan.k,
        replicates,
        base_seed: seed,
        rows,
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_inputs() {
        let spec = ProcessSpec::shifted_ar1(10.0, 0.5, 1.0).unwrap();
        assert!(power_experiment(&spec, 1000, 1.0, 0.5, 2.0, &[0.0], 0.05, 0, 1).is_err());
        assert!(power_experiment(&spec, 1000, 1.0, 0.5, 2.0, &[], 0.05, 100, 1).is_err());
        assert!(power_experiment(&spec, 1000, 1.0, 0.5, 2.0, &[-0.1], 0.05, 100, 1).is_err());
    }

    #[test]
    fn power_grows_with_delta() {
        let spec = ProcessSpec::shifted_ar1(10.0, 0.5, 1.0).unwrap();
        let rep = power_experiment(&spec, 20_000, 1.0, 0.5, 2.0, &[0.0, 0.5, 1.0], 0.05, 200, 3).unwrap();
        assert!(rep.monotone);
        assert!(rep.rows[0].rejection_rate < 0.15);
        assert!(rep.rows[2].rejection_rate > 0.9);
    }
}
