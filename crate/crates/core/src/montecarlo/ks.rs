use crate::error::{Error, Result};
use crate::inference::normal_cdf;

/// Two-sided Kolmogorov–Smirnov distance between the empirical distribution of
/// `samples` and `N(mean, variance)`.
pub fn ks_statistic(samples: &[f64], mean: f64, variance: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Domain("KS distance of an empty sample".into()));
    }
    if !(variance > 0.0 && variance.is_finite()) {
        return Err(Error::Domain(format!("variance must be positive, got {variance}")));
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(Error::Domain("sample contains NaN".into()));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let sd = variance.sqrt();
    let n = xs.len() as f64;
    let d = xs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let f = normal_cdf((x - mean) / sd);
            ((i + 1) as f64 / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max);
    Ok(d.clamp(0.0, 1.0))
}

/// Asymptotic 5% critical value `1.36/√N`, reported as a reference line only.
pub fn ks_reference(n: usize) -> f64 {
    1.36 / (n as f64).sqrt()
}
