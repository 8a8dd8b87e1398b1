//! Goodness-of-fit test for the Taylor exponent and estimators of `β`.
//!
//! # Interval
//!
//! For level `η`, `τ = √2 · Φ⁻¹(1 − η/2)` is the two-sided `N(0, 2)` quantile and
//!
//! ```text
//! a = m̂^{2−β} + (1 − τ) σ̂² / (√k m̂^β),   b = m̂^{2−β} + (1 + τ) σ̂² / (√k m̂^β).
//! ```
//!
//! # Decision statistic
//!
//! Block means of length `p` have variance close to `σ²/p`, so `T_β` itself sits near
//! `σ²/(p m^β)` and is never inside `[a, b]` once `p > 1`. The quantity the central
//! limit theorem controls is `√k (p T_β − σ²/m^β) → N(0, 2σ⁴/m^{2β})`. The test
//! therefore compares
//!
//! ```text
//! W = m̂^{2−β} + p T_β − (1 − 1/√k) σ̂²/m̂^β
//! ```
//!
//! with `[a, b]`. `W ∈ [a, b]` is the same event as `|√k (p T_β − σ̂²/m̂^β)| ≤ τ σ̂²/m̂^β`,
//! and with `p = 1` the construction is unchanged apart from the spread.
//!
//! # Static mode
//!
//! With `p = 1` the spread `√2 σ̂²` is replaced by `Σ̂₀ = √Σ̂₀²`, the estimated
//! long-run standard deviation of the squared deviations, and `τ = Φ⁻¹(1 − η/2)`:
//!
//! ```text
//! a, b = m̂^{2−β} + (σ̂² ∓ τ Σ̂₀) / (√k m̂^β).
//! ```

mod normal;
mod power;

pub use normal::{normal_cdf, normal_quantile};
pub use power::{power_experiment, PowerReport, PowerRow};

use serde::Serialize;

use crate::blocks::BlockPlan;
use crate::error::{Error, Result};
use crate::longrun_variance::{self, LongRunVarianceEstimate};
use crate::statistics::{dynamic_taylor, mean_power, Mode};

/// Acceptance region `[a, b]` for `β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfidenceInterval {
    pub a: f64,
    pub b: f64,
    pub beta: f64,
    pub eta: f64,
    /// Quantile multiplying `spread`.
    pub tau: f64,
    /// `σ̂²` in the dynamic interval, `Σ̂₀` in the static one.
    pub spread: f64,
    pub k: usize,
    pub m_hat: f64,
    pub sigma2_hat: f64,
}

impl ConfidenceInterval {
    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }
}

fn check_level(eta: f64) -> Result<()> {
    if eta > 0.0 && eta < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("level eta must lie in (0, 1), got {eta}")))
    }
}

fn build_interval(
    m_hat: f64,
    sigma2_hat: f64,
    spread: f64,
    tau: f64,
    k: usize,
    beta: f64,
    eta: f64,
) -> Result<ConfidenceInterval> {
    if k < 2 {
        return Err(Error::Domain(format!("need k >= 2 blocks, got {k}")));
    }
    if !(m_hat > 0.0 && m_hat.is_finite()) {
        return Err(Error::Domain(format!("m_hat must be positive, got {m_hat}")));
    }
    if !(sigma2_hat >= 0.0 && spread >= 0.0) {
        return Err(Error::Domain(format!(
            "variance estimates must be nonnegative, got {sigma2_hat} and {spread}"
        )));
    }
    let base = mean_power(m_hat, 2.0 - beta);
    let scale = (k as f64).sqrt() * mean_power(m_hat, beta);
    let half = tau * spread / scale;
    let centre = base + sigma2_hat / scale;
    Ok(ConfidenceInterval {
        a: centre - half,
        b: centre + half,
        beta,
        eta,
        tau,
        spread,
        k,
        m_hat,
        sigma2_hat,
    })
}

/// `τ` with `P(|N(0, 2)| > τ) = η`.
pub fn dynamic_tau(eta: f64) -> Result<f64> {
    check_level(eta)?;
    Ok(std::f64::consts::SQRT_2 * normal_quantile(1.0 - 0.5 * eta)?)
}

/// Dynamic interval `m̂^{2−β} + (1 ∓ τ) σ̂²/(√k m̂^β)`.
pub fn gof_interval(m_hat: f64, sigma2_hat: f64, k: usize, beta: f64, eta: f64) -> Result<ConfidenceInterval> {
    let tau = dynamic_tau(eta)?;
    build_interval(m_hat, sigma2_hat, sigma2_hat, tau, k, beta, eta)
}

/// Static interval `m̂^{2−β} + (σ̂² ∓ z Σ̂₀)/(√k m̂^β)` with `z = Φ⁻¹(1 − η/2)`.
pub fn static_gof_interval(
    m_hat: f64,
    sigma2_hat: f64,
    sigma0_sq_hat: f64,
    k: usize,
    beta: f64,
    eta: f64,
) -> Result<ConfidenceInterval> {
    check_level(eta)?;
    if sigma0_sq_hat.is_nan() || sigma0_sq_hat < 0.0 {
        return Err(Error::Domain(format!("Σ₀² estimate must be nonnegative, got {sigma0_sq_hat}")));
    }
    let z = normal_quantile(1.0 - 0.5 * eta)?;
    build_interval(m_hat, sigma2_hat, sigma0_sq_hat.sqrt(), z, k, beta, eta)
}

/// Maps `p T_β` onto the scale of the interval (see the module docs).
pub fn decision_statistic(interval: &ConfidenceInterval, block_stat: f64) -> f64 {
    let m = interval.m_hat;
    let beta = interval.beta;
    let rk = (interval.k as f64).sqrt();
    mean_power(m, 2.0 - beta) + block_stat - (1.0 - 1.0 / rk) * interval.sigma2_hat / mean_power(m, beta)
}

/// Outcome of [`gof_test`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GofTestResult {
    pub interval: ConfidenceInterval,
    /// `W`, compared against `[a, b]`.
    pub statistic: f64,
    /// Raw `T_β₀` of the block means.
    pub taylor_t: f64,
    pub p: usize,
    pub reject: bool,
    pub mode: Mode,
    pub bandwidth: usize,
    pub sigma0_sq_hat: Option<f64>,
}

/// Tests `β = β₀` on the used prefix `X_1, …, X_{pk}`.
///
/// `m̂`, `σ̂²` (Bartlett, bandwidth `lrv_bandwidth` or the default rule) and `T_β₀` are
/// all computed on the same `p·k` observations. A plan with `p = 1` selects the static
/// interval.
pub fn gof_test(
    values: &[f64],
    plan: &BlockPlan,
    beta0: f64,
    eta: f64,
    lrv_bandwidth: Option<usize>,
) -> Result<GofTestResult> {
    let stats = dynamic_taylor(values, plan, beta0)?;
    let used = &values[..plan.used_len()];
    let lrv = longrun_variance::estimate(used, lrv_bandwidth, plan.is_static())?;
    let interval = interval_for(plan, &lrv, beta0, eta)?;
    Ok(decide(interval, stats.t, plan, &lrv))
}

fn interval_for(
    plan: &BlockPlan,
    lrv: &LongRunVarianceEstimate,
    beta: f64,
    eta: f64,
) -> Result<ConfidenceInterval> {
    match lrv.sigma0_sq_hat {
        Some(s0) if plan.is_static() => static_gof_interval(lrv.m_hat, lrv.sigma2_hat, s0, plan.k, beta, eta),
        _ => gof_interval(lrv.m_hat, lrv.sigma2_hat, plan.k, beta, eta),
    }
}

fn decide(interval: ConfidenceInterval, t: f64, plan: &BlockPlan, lrv: &LongRunVarianceEstimate) -> GofTestResult {
    let statistic = decision_statistic(&interval, plan.p as f64 * t);
    GofTestResult {
        interval,
        statistic,
        taylor_t: t,
        p: plan.p,
        reject: !interval.contains(statistic),
        mode: if plan.is_static() { Mode::Static } else { Mode::Dynamic },
        bandwidth: lrv.bandwidth,
        sigma0_sq_hat: lrv.sigma0_sq_hat,
    }
}

const LN_M_FLOOR: f64 = 1e-6;

/// `β̂ = 2 − ln T / ln m̂`.
///
/// Fails when `|ln m̂| ≤ 10⁻⁶`: near `m = 1` the estimator is undefined.
pub fn estimate_beta(t_value: f64, m_hat: f64) -> Result<f64> {
    if !(t_value > 0.0 && t_value.is_finite()) {
        return Err(Error::Domain(format!("T must be positive, got {t_value}")));
    }
    if !(m_hat > 0.0 && m_hat.is_finite()) {
        return Err(Error::Domain(format!("m_hat must be positive, got {m_hat}")));
    }
    let ln_m = m_hat.ln();
    if ln_m.abs() <= LN_M_FLOOR {
        return Err(Error::IllConditioned(format!(
            "|ln m_hat| = {:.3e} is too close to 0 to estimate beta",
            ln_m.abs()
        )));
    }
    Ok(2.0 - t_value.ln() / ln_m)
}

/// `2 − ln T`, the form without the `ln m̂` divisor. It coincides with
/// [`estimate_beta`] only when `m̂ = e`.
pub fn estimate_beta_unit_log(t_value: f64) -> Result<f64> {
    if !(t_value > 0.0 && t_value.is_finite()) {
        return Err(Error::Domain(format!("T must be positive, got {t_value}")));
    }
    Ok(2.0 - t_value.ln())
}
