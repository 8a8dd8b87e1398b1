//! Long-run variance estimation.
//!
//! `σ² = Σ_j γ_j` is estimated with the Bartlett (Newey–West) lag window
//!
//! ```text
//! σ̂² = γ̂₀ + 2 Σ_{j=1}^{b} (1 − j/(b+1)) γ̂_j,   γ̂_j = n⁻¹ Σ_t (x_t − x̄)(x_{t+j} − x̄)
//! ```
//!
//! The denominator `n` keeps the autocovariance sequence positive semidefinite, and
//! with Bartlett weights the estimate is then nonnegative. The same estimator applied
//! to `(x_t − m̂)²` estimates `Σ₀²`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::process::{autocovariance, ProcessSpec};

/// Default bandwidth `⌊1.3 n^{1/3}⌋`, capped at `n − 1`.
pub fn default_bandwidth(n: usize) -> usize {
    let b = (1.3 * (n as f64).cbrt()).floor() as usize;
    b.min(n.saturating_sub(1))
}

pub fn sample_mean(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Domain("empty sample".into()));
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// Sample autocovariances `γ̂_0, …, γ̂_max_lag` around `center`, denominator `n`.
pub fn autocovariances(values: &[f64], center: f64, max_lag: usize) -> Vec<f64> {
    let n = values.len();
    let dev: Vec<f64> = values.iter().map(|x| x - center).collect();
    (0..=max_lag.min(n.saturating_sub(1)))
        .map(|j| {
            dev[..n - j]
                .iter()
                .zip(&dev[j..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / n as f64
        })
        .collect()
}

fn bartlett_around(values: &[f64], center: f64, bandwidth: usize) -> Result<f64> {
    let n = values.len();
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 values, got {n}")));
    }
    if bandwidth >= n {
        return Err(Error::Domain(format!(
            "bandwidth {bandwidth} must be smaller than the sample length {n}"
        )));
    }
    let g = autocovariances(values, center, bandwidth);
    let b1 = (bandwidth + 1) as f64;
    let tail: f64 = g[1..]
        .iter()
        .enumerate()
        .map(|(i, gj)| (1.0 - (i + 1) as f64 / b1) * gj)
        .sum();
    Ok(g[0] + 2.0 * tail)
}

/// Bartlett-kernel long-run variance of `values` around their sample mean.
pub fn bartlett_lrv(values: &[f64], bandwidth: usize) -> Result<f64> {
    let m = sample_mean(values)?;
    // nonnegative in exact arithmetic; clear rounding residue only
    Ok(bartlett_around(values, m, bandwidth)?.max(0.0))
}

/// Bartlett long-run variance of the squared deviations `(x_t − m̂)²`.
pub fn lrv_of_squares(values: &[f64], m_hat: f64, bandwidth: usize) -> Result<f64> {
    let sq: Vec<f64> = values.iter().map(|x| (x - m_hat) * (x - m_hat)).collect();
    bartlett_lrv(&sq, bandwidth)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    Bartlett,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LongRunVarianceEstimate {
    pub m_hat: f64,
    pub sigma2_hat: f64,
    pub sigma0_sq_hat: Option<f64>,
    pub bandwidth: usize,
    pub kernel: Kernel,
    pub n: usize,
}

/// `m̂`, `σ̂²` and optionally `Σ̂₀²` with one bandwidth (default rule when `None`).
pub fn estimate(values: &[f64], bandwidth: Option<usize>, squares: bool) -> Result<LongRunVarianceEstimate> {
    let n = values.len();
    let b = bandwidth.unwrap_or_else(|| default_bandwidth(n));
    let m_hat = sample_mean(values)?;
    let sigma2_hat = bartlett_around(values, m_hat, b)?.max(0.0);
    let sigma0_sq_hat = if squares {
        Some(lrv_of_squares(values, m_hat, b)?)
    } else {
        None
    };
    Ok(LongRunVarianceEstimate {
        m_hat,
        sigma2_hat,
        sigma0_sq_hat,
        bandwidth: b,
        kernel: Kernel::Bartlett,
        n,
    })
}

/// `E Γ_p² = γ₀ + 2 Σ_{j=1}^{p−1} (1 − j/p) γ_j`, the variance of `p^{-1/2}` times a
/// block sum, from closed-form autocovariances.
pub fn analytic_gamma_variance(spec: &ProcessSpec, p: usize) -> Result<f64> {
    if p == 0 {
        return Err(Error::Domain("block length must be >= 1".into()));
    }
    let pf = p as f64;
    let mut acc = 0.0;
    for j in 1..p {
        acc += (1.0 - j as f64 / pf) * autocovariance(spec, j)?;
    }
    Ok(autocovariance(spec, 0)? + 2.0 * acc)
}
