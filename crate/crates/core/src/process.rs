//! Positive stationary processes with analytic second-order moments.
//!
//! Four families are supported, all driven by Gaussian innovations:
//!
//! | kind            | definition                                             |
//! |-----------------|--------------------------------------------------------|
//! | `iid_lognormal` | `X_t = exp(mu + s ξ_t)`                                |
//! | `shifted_ar1`   | `X_t = shift + Z_t`, `Z_t = φ Z_{t−1} + sd ξ_t`        |
//! | `shifted_ma`    | `X_t = shift + sd Σ_j θ_j ξ_{t−j}`                     |
//! | `exp_ar1`       | `X_t = exp(Z_t)`, `Z_t − mu = φ (Z_{t−1} − mu) + sd ξ_t` |
//!
//! Trajectories are generated with ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded through
//! `SeedableRng::seed_from_u64`, and standard normal variates from
//! `rand_distr::StandardNormal` (ziggurat). Replicate `i` of a run with base seed `s`
//! uses seed `s + i` (wrapping); `seed_from_u64` expands each seed through PCG32, which
//! decorrelates neighbouring seeds well enough for Monte Carlo replication.
//!
//! # JSON
//!
//! A [`ProcessSpec`] is a flat object with a `kind` discriminator:
//!
//! ```json
//! {"kind": "shifted_ar1", "shift": 10.0, "phi": 0.5, "noise_sd": 1.0}
//! {"kind": "shifted_ma", "shift": 10.0, "coeffs": [1.0, 0.5], "noise_sd": 1.0}
//! {"kind": "iid_lognormal", "mu": 0.0, "s": 1.0, "alpha_exponent": 4.0}
//! ```
//!
//! The optional `alpha_exponent` / `theta_exponent` record the declared polynomial
//! decay rate of the dependence coefficients; they are metadata only.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Warm-up steps discarded for the autoregressive kinds.
pub const AR_BURN_IN: usize = 1000;

/// Minimum shift, in stationary standard deviations, for the Gaussian shifted kinds.
pub const MIN_SHIFT_SDS: f64 = 6.0;

/// Parametric family of a stationary process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProcessKind {
    IidLognormal { mu: f64, s: f64 },
    ShiftedAr1 { shift: f64, phi: f64, noise_sd: f64 },
    ShiftedMa { shift: f64, coeffs: Vec<f64>, noise_sd: f64 },
    ExpAr1 { mu: f64, phi: f64, noise_sd: f64 },
}

/// Declared polynomial decay `O(q^{-a})` of the mixing or weak-dependence coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayMeta {
    Alpha(f64),
    Theta(f64),
}

/// A validated process description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct ProcessSpec {
    kind: ProcessKind,
    decay: Option<DecayMeta>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    #[serde(flatten)]
    kind: ProcessKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha_exponent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta_exponent: Option<f64>,
}

impl TryFrom<RawSpec> for ProcessSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        let decay = match (raw.alpha_exponent, raw.theta_exponent) {
            (None, None) => None,
            (Some(a), None) => Some(DecayMeta::Alpha(a)),
            (None, Some(t)) => Some(DecayMeta::Theta(t)),
            (Some(_), Some(_)) => {
                return Err(Error::Parameter(
                    "give at most one of alpha_exponent and theta_exponent".into(),
                ))
            }
        };
        ProcessSpec::new(raw.kind)?.with_decay(decay)
    }
}

impl From<ProcessSpec> for RawSpec {
    fn from(spec: ProcessSpec) -> Self {
        let (alpha_exponent, theta_exponent) = match spec.decay {
            None => (None, None),
            Some(DecayMeta::Alpha(a)) => (Some(a), None),
            Some(DecayMeta::Theta(t)) => (None, Some(t)),
        };
        RawSpec {
            kind: spec.kind,
            alpha_exponent,
            theta_exponent,
        }
    }
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} must be finite, got {v}")))
    }
}

fn check_phi(phi: f64) -> Result<()> {
    check_finite("phi", phi)?;
    if phi.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("|phi| must be < 1, got {phi}")))
    }
}

fn check_sd(name: &str, sd: f64) -> Result<()> {
    check_finite(name, sd)?;
    if sd > 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} must be > 0, got {sd}")))
    }
}

fn check_shift(shift: f64, stationary_sd: f64) -> Result<()> {
    check_finite("shift", shift)?;
    if shift >= MIN_SHIFT_SDS * stationary_sd {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "shift {shift} is below {MIN_SHIFT_SDS} stationary standard deviations ({})",
            MIN_SHIFT_SDS * stationary_sd
        )))
    }
}

impl ProcessSpec {
    pub fn new(kind: ProcessKind) -> Result<Self> {
        match &kind {
            ProcessKind::IidLognormal { mu, s } => {
                check_finite("mu", *mu)?;
                check_sd("s", *s)?;
            }
            ProcessKind::ShiftedAr1 {
                shift,
                phi,
                noise_sd,
            } => {
                check_phi(*phi)?;
                check_sd("noise_sd", *noise_sd)?;
                check_shift(*shift, noise_sd / (1.0 - phi * phi).sqrt())?;
            }
            ProcessKind::ShiftedMa {
                shift,
                coeffs,
                noise_sd,
            } => {
                if coeffs.is_empty() {
                    return Err(Error::Parameter("MA coefficient list is empty".into()));
                }
                for c in coeffs {
                    check_finite("MA coefficient", *c)?;
                }
                check_sd("noise_sd", *noise_sd)?;
                let energy: f64 = coeffs.iter().map(|c| c * c).sum();
                if energy == 0.0 {
                    return Err(Error::Parameter("MA coefficients are all zero".into()));
                }
                check_shift(*shift, noise_sd * energy.sqrt())?;
            }
            ProcessKind::ExpAr1 { mu, phi, noise_sd } => {
                check_finite("mu", *mu)?;
                check_phi(*phi)?;
                check_sd("noise_sd", *noise_sd)?;
            }
        }
        Ok(Self { kind, decay: None })
    }

    pub fn iid_lognormal(mu: f64, s: f64) -> Result<Self> {
        Self::new(ProcessKind::IidLognormal { mu, s })
    }

    pub fn shifted_ar1(shift: f64, phi: f64, noise_sd: f64) -> Result<Self> {
        Self::new(ProcessKind::ShiftedAr1 {
            shift,
            phi,
            noise_sd,
        })
    }

    pub fn shifted_ma(shift: f64, coeffs: Vec<f64>, noise_sd: f64) -> Result<Self> {
        Self::new(ProcessKind::ShiftedMa {
            shift,
            coeffs,
            noise_sd,
        })
    }

    pub fn exp_ar1(mu: f64, phi: f64, noise_sd: f64) -> Result<Self> {
        Self::new(ProcessKind::ExpAr1 { mu, phi, noise_sd })
    }

    /// Attaches decay-rate metadata; the exponent must be positive.
    pub fn with_decay(mut self, decay: Option<DecayMeta>) -> Result<Self> {
        if let Some(DecayMeta::Alpha(a) | DecayMeta::Theta(a)) = decay {
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::Parameter(format!(
                    "decay exponent must be positive, got {a}"
                )));
            }
        }
        self.decay = decay;
        Ok(self)
    }

    pub fn kind(&self) -> &ProcessKind {
        &self.kind
    }

    pub fn decay(&self) -> Option<DecayMeta> {
        self.decay
    }

    /// Number of discarded warm-up steps used by [`simulate`].
    pub fn burn_in(&self) -> usize {
        match self.kind {
            ProcessKind::ShiftedAr1 { .. } | ProcessKind::ExpAr1 { .. } => AR_BURN_IN,
            ProcessKind::IidLognormal { .. } | ProcessKind::ShiftedMa { .. } => 0,
        }
    }

    pub fn is_iid(&self) -> bool {
        match &self.kind {
            ProcessKind::IidLognormal { .. } => true,
            ProcessKind::ShiftedMa { coeffs, .. } => {
                coeffs.iter().filter(|c| **c != 0.0).count() <= 1
            }
            _ => false,
        }
    }
}

/// An observed path `X_1, …, X_n` together with what produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    values: Vec<f64>,
    spec: ProcessSpec,
    seed: u64,
    burn_in: usize,
}

impl Trajectory {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn spec(&self) -> &ProcessSpec {
        &self.spec
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn burn_in(&self) -> usize {
        self.burn_in
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl AsRef<[f64]> for Trajectory {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// The generator used for every trajectory.
pub fn rng_for_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ar1_path(
    rng: &mut ChaCha8Rng,
    n: usize,
    phi: f64,
    noise_sd: f64,
    mut emit: impl FnMut(f64) -> f64,
) -> Vec<f64> {
    let mut z = 0.0;
    for _ in 0..AR_BURN_IN {
        let e: f64 = StandardNormal.sample(rng);
        z = phi * z + noise_sd * e;
    }
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let e: f64 = StandardNormal.sample(rng);
        z = phi * z + noise_sd * e;
        out.push(emit(z));
    }
    out
}

/// Simulates `n` observations of `spec` deterministically from `seed`.
///
/// Fails if any generated value is not strictly positive; for the shifted Gaussian
/// kinds this has probability of order `1e-9` per point.
pub fn simulate(spec: &ProcessSpec, n: usize, seed: u64) -> Result<Trajectory> {
    if n == 0 {
        return Err(Error::Domain("trajectory length must be >= 1".into()));
    }
    let mut rng = rng_for_seed(seed);
    let values = match &spec.kind {
        ProcessKind::IidLognormal { mu, s } => (0..n)
            .map(|_| {
                let e: f64 = StandardNormal.sample(&mut rng);
                (mu + s * e).exp()
            })
            .collect(),
        ProcessKind::ShiftedAr1 {
            shift,
            phi,
            noise_sd,
        } => ar1_path(&mut rng, n, *phi, *noise_sd, |z| shift + z),
        ProcessKind::ExpAr1 { mu, phi, noise_sd } => {
            ar1_path(&mut rng, n, *phi, *noise_sd, |z| (mu + z).exp())
        }
        ProcessKind::ShiftedMa {
            shift,
            coeffs,
            noise_sd,
        } => {
            let q = coeffs.len();
            let eps: Vec<f64> = (0..n + q - 1)
                .map(|_| StandardNormal.sample(&mut rng))
                .collect();
            // eps[t + q - 1] is the innovation at time t
            (0..n)
                .map(|t| {
                    let acc: f64 = coeffs
                        .iter()
                        .enumerate()
                        .map(|(j, c)| c * eps[t + q - 1 - j])
                        .sum();
                    shift + noise_sd * acc
                })
                .collect()
        }
    };
    if let Some(i) = values.iter().position(|v: &f64| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::Domain(format!(
            "generated value {} at index {i} is not strictly positive",
            values[i]
        )));
    }
    Ok(Trajectory {
        values,
        spec: spec.clone(),
        seed,
        burn_in: spec.burn_in(),
    })
}

/// Closed-form moments of a [`ProcessSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoreticalMoments {
    pub mean: f64,
    pub marginal_variance: f64,
    /// `σ² = Σ_j Cov(X_0, X_j)`.
    pub longrun_variance: f64,
    /// `Σ₀² = Σ_j Cov((X_0 − m)², (X_j − m)²)` where a closed form is known.
    pub longrun_variance_of_squares: Option<f64>,
    pub autocovariance_closed_form: bool,
}

fn lognormal_mean_var(mu: f64, s2: f64) -> (f64, f64) {
    let m = (mu + 0.5 * s2).exp();
    (m, m * m * s2.exp_m1())
}

fn ma_autocov(coeffs: &[f64], noise_sd: f64, lag: usize) -> f64 {
    if lag >= coeffs.len() {
        return 0.0;
    }
    let s: f64 = coeffs
        .iter()
        .zip(&coeffs[lag..])
        .map(|(a, b)| a * b)
        .sum();
    noise_sd * noise_sd * s
}

const SERIES_TOL: f64 = 1e-12;
const SERIES_MAX_TERMS: usize = 10_000_000;

pub fn theoretical_moments(spec: &ProcessSpec) -> TheoreticalMoments {
    match &spec.kind {
        ProcessKind::IidLognormal { mu, s } => {
            let s2 = s * s;
            let (m, var) = lognormal_mean_var(*mu, s2);
            let w = s2.exp();
            // central fourth moment is var² (w⁴ + 2w³ + 3w² − 3)
            let excess = w * w * (w * w + 2.0 * w + 3.0) - 4.0;
            TheoreticalMoments {
                mean: m,
                marginal_variance: var,
                longrun_variance: var,
                longrun_variance_of_squares: Some(var * var * excess),
                autocovariance_closed_form: true,
            }
        }
        ProcessKind::ShiftedAr1 {
            shift,
            phi,
            noise_sd,
        } => {
            let v = noise_sd * noise_sd;
            let g0 = v / (1.0 - phi * phi);
            TheoreticalMoments {
                mean: *shift,
                marginal_variance: g0,
                longrun_variance: v / ((1.0 - phi) * (1.0 - phi)),
                longrun_variance_of_squares: Some(
                    2.0 * g0 * g0 * (1.0 + phi * phi) / (1.0 - phi * phi),
                ),
                autocovariance_closed_form: true,
            }
        }
        ProcessKind::ShiftedMa {
            shift,
            coeffs,
            noise_sd,
        } => {
            let total: f64 = coeffs.iter().sum();
            let g0 = ma_autocov(coeffs, *noise_sd, 0);
            let tail: f64 = (1..coeffs.len())
                .map(|j| ma_autocov(coeffs, *noise_sd, j).powi(2))
                .sum();
            TheoreticalMoments {
                mean: *shift,
                marginal_variance: g0,
                longrun_variance: noise_sd * noise_sd * total * total,
                // Isserlis: Cov((X_0 − m)², (X_j − m)²) = 2 γ_j²
                longrun_variance_of_squares: Some(2.0 * (g0 * g0 + 2.0 * tail)),
                autocovariance_closed_form: true,
            }
        }
        ProcessKind::ExpAr1 { mu, phi, noise_sd } => {
            let gauss0 = noise_sd * noise_sd / (1.0 - phi * phi);
            let (m, var) = lognormal_mean_var(*mu, gauss0);
            let mut lrv = var;
            let mut gauss = gauss0;
            for _ in 0..SERIES_MAX_TERMS {
                gauss *= phi;
                let term = m * m * gauss.exp_m1();
                lrv += 2.0 * term;
                if term.abs() < SERIES_TOL {
                    break;
                }
            }
            TheoreticalMoments {
                mean: m,
                marginal_variance: var,
                longrun_variance: lrv,
                longrun_variance_of_squares: None,
                autocovariance_closed_form: true,
            }
        }
    }
}

/// Exact autocovariance `γ_lag = Cov(X_0, X_lag)`.
pub fn autocovariance(spec: &ProcessSpec, lag: usize) -> Result<f64> {
    let g = match &spec.kind {
        ProcessKind::IidLognormal { mu, s } => {
            if lag == 0 {
                lognormal_mean_var(*mu, s * s).1
            } else {
                0.0
            }
        }
        ProcessKind::ShiftedAr1 { phi, noise_sd, .. } => {
            noise_sd * noise_sd / (1.0 - phi * phi) * phi.powi(exponent(lag)?)
        }
        ProcessKind::ShiftedMa {
            coeffs, noise_sd, ..
        } => ma_autocov(coeffs, *noise_sd, lag),
        ProcessKind::ExpAr1 { mu, phi, noise_sd } => {
            let gauss0 = noise_sd * noise_sd / (1.0 - phi * phi);
            let m = (mu + 0.5 * gauss0).exp();
            m * m * (gauss0 * phi.powi(exponent(lag)?)).exp_m1()
        }
    };
    Ok(g)
}

fn exponent(lag: usize) -> Result<i32> {
    i32::try_from(lag).map_err(|_| Error::Domain(format!("lag {lag} too large")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ar() -> ProcessSpec {
        ProcessSpec::shifted_ar1(10.0, 0.5, 1.0).unwrap()
    }

    #[test]
    fn simulate_is_deterministic() {
        let spec = ProcessSpec::iid_lognormal(0.0, 1.0).unwrap();
        let a = simulate(&spec, 5, 42).unwrap();
        let b = simulate(&spec, 5, 42).unwrap();
        assert_eq!(a.len(), 5);
        assert!(a.values().iter().all(|v| *v > 0.0));
        assert_eq!(
            a.values().iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
            b.values().iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
        assert_ne!(a.values(), simulate(&spec, 5, 43).unwrap().values());
    }

    #[test]
    fn zero_length_is_domain_error() {
        assert!(matches!(simulate(&ar(), 0, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ProcessSpec::shifted_ar1(10.0, 1.0, 1.0).is_err());
        assert!(ProcessSpec::shifted_ar1(10.0, 0.5, 0.0).is_err());
        // stationary sd is 1/√0.75 ≈ 1.155, so 6 sds ≈ 6.93
        assert!(ProcessSpec::shifted_ar1(6.5, 0.5, 1.0).is_err());
        assert!(ProcessSpec::shifted_ar1(7.0, 0.5, 1.0).is_ok());
        assert!(ProcessSpec::shifted_ma(10.0, vec![], 1.0).is_err());
        assert!(ProcessSpec::shifted_ma(10.0, vec![0.0, 0.0], 1.0).is_err());
        assert!(ProcessSpec::iid_lognormal(0.0, -1.0).is_err());
        assert!(ProcessSpec::exp_ar1(0.0, -1.2, 0.3).is_err());
        assert!(ar().with_decay(Some(DecayMeta::Alpha(-1.0))).is_err());
    }

    #[test]
    fn ar1_closed_forms() {
        let tm = theoretical_moments(&ar());
        assert_eq!(tm.mean, 10.0);
        assert_relative_eq!(tm.marginal_variance, 4.0 / 3.0, epsilon = 1e-14);
        assert_relative_eq!(tm.longrun_variance, 4.0, epsilon = 1e-14);
        assert_relative_eq!(
            tm.longrun_variance_of_squares.unwrap(),
            160.0 / 27.0,
            epsilon = 1e-13
        );
        assert_relative_eq!(autocovariance(&ar(), 0).unwrap(), 4.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(autocovariance(&ar(), 3).unwrap(), 1.0 / 6.0, epsilon = 1e-15);
    }

    #[test]
    fn brute_force_covariance_sums_match() {
        // truncated sums to lag 200; the geometric tail is far below 1e-10
        let spec = ar();
        let tm = theoretical_moments(&spec);
        let g: Vec<f64> = (0..=200).map(|j| autocovariance(&spec, j).unwrap()).collect();
        let lrv = g[0] + 2.0 * g[1..].iter().sum::<f64>();
        let lrv_sq = 2.0 * (g[0] * g[0] + 2.0 * g[1..].iter().map(|x| x * x).sum::<f64>());
        assert!((tm.longrun_variance - lrv).abs() < 1e-8);
        assert!((tm.longrun_variance_of_squares.unwrap() - lrv_sq).abs() < 1e-8);

        let spec = ProcessSpec::exp_ar1(0.0, 0.6, 0.3).unwrap();
        let tm = theoretical_moments(&spec);
        let lrv = autocovariance(&spec, 0).unwrap()
            + 2.0 * (1..400).map(|j| autocovariance(&spec, j).unwrap()).sum::<f64>();
        assert!((tm.longrun_variance - lrv).abs() < 1e-8);
        assert!(tm.longrun_variance_of_squares.is_none());
    }

    #[test]
    fn iid_kinds_have_lrv_equal_to_marginal_variance() {
        let spec = ProcessSpec::iid_lognormal(0.0, 1.0).unwrap();
        let tm = theoretical_moments(&spec);
        let e = std::f64::consts::E;
        assert_relative_eq!(tm.marginal_variance, (e - 1.0) * e, epsilon = 1e-13);
        assert_eq!(tm.longrun_variance, tm.marginal_variance);
        assert_eq!(autocovariance(&spec, 5).unwrap(), 0.0);

        let spec = ProcessSpec::shifted_ma(10.0, vec![1.0], 1.0).unwrap();
        let tm = theoretical_moments(&spec);
        assert_eq!(tm.longrun_variance, 1.0);
        assert_eq!(tm.marginal_variance, 1.0);
        assert!(spec.is_iid());
    }

    #[test]
    fn lognormal_moments_match_quadrature() {
        // Simpson's rule on the Gaussian layer, independent of the closed forms
        let (mu, s) = (0.0_f64, 1.0_f64);
        let n = 20_000;
        let (lo, hi) = (-12.0_f64, 12.0_f64);
        let h = (hi - lo) / n as f64;
        let mut raw = [0.0_f64; 5];
        for i in 0..=n {
            let z = lo + h * i as f64;
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let dens = (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
            let x = (mu + s * z).exp();
            for (k, r) in raw.iter_mut().enumerate() {
                *r += w * dens * x.powi(k as i32);
            }
        }
        for r in raw.iter_mut() {
            *r *= h / 3.0;
        }
        let m = raw[1];
        let var = raw[2] - m * m;
        let mu4 = raw[4] - 4.0 * m * raw[3] + 6.0 * m * m * raw[2] - 3.0 * m.powi(4);
        let tm = theoretical_moments(&ProcessSpec::iid_lognormal(mu, s).unwrap());
        assert_relative_eq!(tm.mean, m, max_relative = 1e-9);
        assert_relative_eq!(tm.marginal_variance, var, max_relative = 1e-9);
        assert_relative_eq!(
            tm.longrun_variance_of_squares.unwrap(),
            mu4 - var * var,
            max_relative = 1e-7
        );
    }

    #[test]
    fn ar1_sample_moments() {
        let t = simulate(&ar(), 100_000, 1).unwrap();
        let x = t.values();
        let n = x.len() as f64;
        let mean = x.iter().sum::<f64>() / n;
        assert!((mean - 10.0).abs() < 0.05, "mean {mean}");
        let g1 = x
            .windows(2)
            .map(|w| (w[0] - mean) * (w[1] - mean))
            .sum::<f64>()
            / n;
        assert!((g1 - 2.0 / 3.0).abs() < 0.1 * 2.0 / 3.0, "gamma1 {g1}");
    }

    #[test]
    fn json_round_trip() {
        let spec = ProcessSpec::shifted_ma(10.0, vec![1.0, 0.5], 1.0)
            .unwrap()
            .with_decay(Some(DecayMeta::Theta(3.0)))
            .unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"shifted_ma","shift":10.0,"coeffs":[1.0,0.5],"noise_sd":1.0,"theta_exponent":3.0}"#
        );
        let back: ProcessSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);

        let bad = r#"{"kind":"shifted_ar1","shift":10.0,"phi":1.5,"noise_sd":1.0}"#;
        assert!(serde_json::from_str::<ProcessSpec>(bad).is_err());
        let both = r#"{"kind":"iid_lognormal","mu":0,"s":1,"alpha_exponent":2,"theta_exponent":2}"#;
        assert!(serde_json::from_str::<ProcessSpec>(both).is_err());
    }
}
