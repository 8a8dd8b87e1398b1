//! Taylor statistics and self-normalised sums.
//!
//! For positive values `Y_1, …, Y_k` with mean `Ȳ`:
//!
//! ```text
//! T_β = Σ (Y_j − Ȳ)² / (k − 1) / Ȳ^β
//! S_β = Σ Y_j² / k / Ȳ^β  =  ((k − 1)/k · T_2 + 1) · Ȳ^{2−β}
//! ```
//!
//! Applied to block means these are the dynamic statistics; with `p = 1` they reduce
//! to the static ones computed from the raw series.

use serde::{Deserialize, Serialize};

use crate::blocks::{block_means, BlockPlan};
use crate::error::{Error, Result};

/// Static (`p = 1`) or dynamic (`p > 1`) Taylor's law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Static,
    #[default]
    Dynamic,
}

/// `x^β`, by repeated multiplication for integral `β` and `exp(β ln x)` otherwise.
pub fn mean_power(x: f64, beta: f64) -> f64 {
    if beta.fract() == 0.0 && beta.abs() <= i32::MAX as f64 {
        x.powi(beta as i32)
    } else {
        (beta * x.ln()).exp()
    }
}

fn check_positive(values: &[f64], min_len: usize) -> Result<()> {
    if values.len() < min_len {
        return Err(Error::Domain(format!(
            "need at least {min_len} values, got {}",
            values.len()
        )));
    }
    if let Some(v) = values.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::Domain(format!("values must be positive, found {v}")));
    }
    Ok(())
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Two-pass sample variance with denominator `k − 1`.
fn sample_variance(values: &[f64], mean: f64) -> f64 {
    values.iter().map(|y| (y - mean) * (y - mean)).sum::<f64>() / (values.len() - 1) as f64
}

pub fn taylor_t(values: &[f64], beta: f64) -> Result<f64> {
    check_positive(values, 2)?;
    let m = mean(values);
    Ok(sample_variance(values, m) / mean_power(m, beta))
}

pub fn selfnorm_s(values: &[f64], beta: f64) -> Result<f64> {
    check_positive(values, 1)?;
    let m = mean(values);
    let sq = values.iter().map(|y| y * y).sum::<f64>() / values.len() as f64;
    Ok(sq / mean_power(m, beta))
}

/// `T_β` and `S_β` of a sample, with the inputs that produced them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TaylorStatistics {
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "S")]
    pub s: f64,
    pub beta: f64,
    /// Number of blocks (or observations in the static case).
    pub k: usize,
    /// Block length.
    pub p: usize,
    /// `Ȳ`, the mean of the used prefix of length `p·k`.
    #[serde(rename = "mean")]
    pub mean_used: f64,
    pub mode: Mode,
}

/// Dynamic Taylor statistics of a trajectory cut by `plan`.
///
/// The denominator mean `Ȳ` is the sample mean over the `p·k` observations that enter
/// the blocks. With `p = 1` the result is the static statistic.
pub fn dynamic_taylor(values: &[f64], plan: &BlockPlan, beta: f64) -> Result<TaylorStatistics> {
    let bm = block_means(values, plan)?;
    check_positive(&bm.means, 2)?;
    let y = &bm.means;
    let ybar = mean(y);
    let denom = mean_power(ybar, beta);
    let t = sample_variance(y, ybar) / denom;
    let s = y.iter().map(|v| v * v).sum::<f64>() / y.len() as f64 / denom;
    Ok(TaylorStatistics {
        t,
        s,
        beta,
        k: plan.k,
        p: plan.p,
        mean_used: ybar,
        mode: if plan.is_static() {
            Mode::Static
        } else {
            Mode::Dynamic
        },
    })
}

/// `√k (T − m^{2−β})`.
///
/// This is the raw centring around `m^{2−β}`. It is only informative in the static
/// case: for block means `T` concentrates at `σ²/(p m^β)`, so this quantity drifts
/// like `−√k · m^{2−β}` as `p` grows. Use [`centred_block_statistic`] for the dynamic
/// central limit theorem.
pub fn scaled_statistic(stats: &TaylorStatistics, m_ref: f64) -> f64 {
    (stats.k as f64).sqrt() * (stats.t - mean_power(m_ref, 2.0 - stats.beta))
}

/// `p · T_β`, the block-variance-to-mean-power ratio; it estimates `σ²/m^β` (dynamic)
/// or `γ₀/m^β` (static).
pub fn block_statistic(stats: &TaylorStatistics) -> f64 {
    stats.p as f64 * stats.t
}

/// `√k (p T_β − v/m^β)` for a reference variance `v`.
///
/// With `v = σ²` this converges to `N(0, 2σ⁴/m^{2β})` when `p → ∞` and `√k/p → 0`;
/// with `p = 1` and `v = γ₀` it converges to `N(0, Σ₀²/m^{2β})`.
pub fn centred_block_statistic(stats: &TaylorStatistics, m_ref: f64, variance_ref: f64) -> f64 {
    (stats.k as f64).sqrt() * (block_statistic(stats) - variance_ref / mean_power(m_ref, stats.beta))
}
