//! Empirical check of the fourth-order cumulant decomposition
//!
//! ```text
//! Cov(XY, ZT) = κ(X, Y, Z, T) + Cov(X, Z) Cov(Y, T) + Cov(X, T) Cov(Y, Z)
//! ```
//!
//! for `X = X̃₀`, `Y = X̃_i`, `Z = X̃_j`, `T = X̃_k` (centred values). The pairing used is
//! the standard one; κ vanishes for Gaussian processes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::longrun_variance::{autocovariances, sample_mean};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CumulantCheck {
    pub lags: (usize, usize, usize),
    pub n: usize,
    /// `Cov(X̃₀X̃_i, X̃_jX̃_k)`.
    pub lhs: f64,
    /// `Cov(X̃₀, X̃_j) Cov(X̃_i, X̃_k) + Cov(X̃₀, X̃_k) Cov(X̃_i, X̃_j)`.
    pub rhs: f64,
    pub kappa_hat: f64,
    /// Batch-means standard error of `kappa_hat`.
    pub kappa_se: f64,
    pub batches: usize,
}

const MAX_BATCHES: usize = 100;

fn cross_cov(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / n
}

pub fn cumulant_identity_check(values: &[f64], lags: (usize, usize, usize)) -> Result<CumulantCheck> {
    let n = values.len();
    let (i, j, k) = lags;
    let max_lag = i.max(j).max(k);
    if 2 * max_lag >= n {
        return Err(Error::Parameter(format!(
            "lags {lags:?} must be smaller than n/2 = {}",
            n / 2
        )));
    }
    let m = sample_mean(values)?;
    let dev: Vec<f64> = values.iter().map(|x| x - m).collect();
    let len = n - max_lag;
    let xy: Vec<f64> = (0..len).map(|t| dev[t] * dev[t + i]).collect();
    let zt: Vec<f64> = (0..len).map(|t| dev[t + j] * dev[t + k]).collect();

    let g = autocovariances(values, m, max_lag);
    let gam = |h: usize| g[h];
    let rhs = gam(j) * gam(i.abs_diff(k)) + gam(k) * gam(i.abs_diff(j));
    let lhs = cross_cov(&xy, &zt);

    let batches = (len / 50).clamp(2, MAX_BATCHES);
    let size = len / batches;
    let kappas: Vec<f64> = (0..batches)
        .map(|b| {
            let r = b * size..(b + 1) * size;
            cross_cov(&xy[r.clone()], &zt[r]) - rhs
        })
        .collect();
    let bm = kappas.iter().sum::<f64>() / batches as f64;
    let bvar = kappas.iter().map(|x| (x - bm) * (x - bm)).sum::<f64>() / (batches - 1) as f64;

    Ok(CumulantCheck {
        lags,
        n,
        lhs,
        rhs,
        kappa_hat: lhs - rhs,
        kappa_se: (bvar / batches as f64).sqrt(),
        batches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{simulate, ProcessSpec};

    #[test]
    fn gaussian_cumulant_vanishes() {
        let spec = ProcessSpec::shifted_ar1(10.0, 0.5, 1.0).unwrap();
        let x = simulate(&spec, 200_000, 4).unwrap();
        let c = cumulant_identity_check(x.values(), (1, 2, 3)).unwrap();
        assert!(c.kappa_se > 0.0);
        assert!(c.kappa_hat.abs() < 5.0 * c.kappa_se, "{c:?}");
        // lhs itself is far from zero: the pairing carries the covariance
        assert!(c.lhs > 10.0 * c.kappa_se);
    }

    #[test]
    fn lognormal_fourth_cumulant() {
        let (mu, s) = (0.0, 0.25);
        let spec = ProcessSpec::iid_lognormal(mu, s).unwrap();
        let x = simulate(&spec, 400_000, 8).unwrap();
        let c = cumulant_identity_check(x.values(), (0, 0, 0)).unwrap();
        let w: f64 = (s * s).exp();
        let var = w * (w - 1.0);
        // μ₄ − 3σ⁴ = σ⁴ (w⁴ + 2w³ + 3w² − 6)
        let target = var * var * (w.powi(4) + 2.0 * w.powi(3) + 3.0 * w * w - 6.0);
        assert!((c.kappa_hat - target).abs() < 5.0 * c.kappa_se, "{} vs {target} ± {}", c.kappa_hat, c.kappa_se);
    }

    #[test]
    fn lag_bounds() {
        let x: Vec<f64> = (0..10).map(f64::from).collect();
        assert!(cumulant_identity_check(&x, (5, 0, 0)).is_err());
        assert!(cumulant_identity_check(&x, (4, 1, 2)).is_ok());
    }
}
