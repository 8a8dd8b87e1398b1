//! Contiguous (Bernstein) blocks of a trajectory.
//!
//! A sample `X_1, …, X_n` is cut into `k = ⌊n/p⌋` consecutive disjoint blocks of
//! length `p = max(1, ⌊κ n^ζ⌋)`. The trailing `n − pk < p` observations are dropped
//! unless [`Remainder::Append`] is requested.

use serde::Serialize;

use crate::error::{Error, Result};

/// Which of the asymptotic rate conditions a plan satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RateFlags {
    /// `ζ > 1/3`, needed for the dynamic central limit theorem.
    pub zeta_ok: bool,
    /// `ζ > 2/3` and, if a gap `q = n^v` is set, `v < 3ζ − 2`.
    pub corollary_ok: bool,
}

/// Blocking parameters for a sample of length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockPlan {
    pub n: usize,
    pub p: usize,
    pub k: usize,
    pub kappa: f64,
    pub zeta: f64,
    /// Diagnostic gap `q_n`; it never removes data from the statistics.
    pub gap: usize,
    pub rate_flags: RateFlags,
}

fn rate_flags(n: usize, zeta: f64, gap: usize) -> RateFlags {
    let gap_ok = gap == 0 || {
        let v = (gap as f64).ln() / (n as f64).ln();
        v < 3.0 * zeta - 2.0
    };
    RateFlags {
        zeta_ok: zeta > 1.0 / 3.0,
        corollary_ok: zeta > 2.0 / 3.0 && gap_ok,
    }
}

/// Builds the plan `p = max(1, ⌊κ n^ζ⌋)`, `k = ⌊n/p⌋`.
///
/// `ζ ≤ 1/3` is allowed and only clears `zeta_ok`; a plan with fewer than two blocks
/// is an error.
pub fn plan_blocks(n: usize, kappa: f64, zeta: f64) -> Result<BlockPlan> {
    if n < 4 {
        return Err(Error::Parameter(format!("need n >= 4, got {n}")));
    }
    if !(kappa.is_finite() && kappa > 0.0) {
        return Err(Error::Parameter(format!("kappa must be > 0, got {kappa}")));
    }
    if !(zeta > 0.0 && zeta < 1.0) {
        return Err(Error::Parameter(format!("zeta must lie in (0, 1), got {zeta}")));
    }
    let raw = kappa * (n as f64).powf(zeta);
    // absorb pow() rounding just below an exact integer
    let p = ((raw * (1.0 + 1e-12)).floor() as usize).clamp(1, n);
    let k = n / p;
    if k < 2 {
        return Err(Error::Plan(format!(
            "block length {p} leaves {k} block(s) for n = {n}; at least 2 are required"
        )));
    }
    Ok(BlockPlan {
        n,
        p,
        k,
        kappa,
        zeta,
        gap: 0,
        rate_flags: rate_flags(n, zeta, 0),
    })
}

impl BlockPlan {
    /// A plan with an explicit block length. `kappa` is set to `p` and `zeta` to 0, so
    /// the rate flags are cleared.
    pub fn with_block_len(n: usize, p: usize) -> Result<Self> {
        if p == 0 || n == 0 {
            return Err(Error::Parameter("n and p must be >= 1".into()));
        }
        let k = n / p;
        if k < 2 {
            return Err(Error::Plan(format!(
                "block length {p} leaves {k} block(s) for n = {n}; at least 2 are required"
            )));
        }
        Ok(Self {
            n,
            p,
            k,
            kappa: p as f64,
            zeta: 0.0,
            gap: 0,
            rate_flags: rate_flags(n, 0.0, 0),
        })
    }

    /// The static plan `p = 1`, `k = n`.
    pub fn static_plan(n: usize) -> Result<Self> {
        Self::with_block_len(n, 1)
    }

    pub fn with_gap(mut self, gap: usize) -> Result<Self> {
        if gap >= self.p.max(1) && gap != 0 {
            return Err(Error::Parameter(format!(
                "gap {gap} must be smaller than the block length {}",
                self.p
            )));
        }
        self.gap = gap;
        self.rate_flags = rate_flags(self.n, self.zeta, gap);
        Ok(self)
    }

    pub fn used_len(&self) -> usize {
        self.p * self.k
    }

    pub fn remainder(&self) -> usize {
        self.n - self.used_len()
    }

    pub fn is_static(&self) -> bool {
        self.p == 1
    }

    /// Zero-based index range of block `i` (`0 ≤ i < k`).
    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        i * self.p..(i + 1) * self.p
    }
}

/// Treatment of the trailing partial block.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Remainder {
    #[default]
    Discard,
    /// Append the mean of the `n − pk` leftover observations as an extra block.
    Append,
}

/// Block means `Y_i = p⁻¹ Σ_{j∈B_i} X_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMeans {
    pub means: Vec<f64>,
    pub plan: BlockPlan,
    /// Number of observations that entered `means`.
    pub used_length: usize,
}

impl BlockMeans {
    pub fn block_len(&self) -> usize {
        self.plan.p
    }
}

pub fn block_means(values: &[f64], plan: &BlockPlan) -> Result<BlockMeans> {
    block_means_with(values, plan, Remainder::Discard)
}

pub fn block_means_with(values: &[f64], plan: &BlockPlan, remainder: Remainder) -> Result<BlockMeans> {
    if values.len() != plan.n {
        return Err(Error::Domain(format!(
            "trajectory has length {}, plan expects {}",
            values.len(),
            plan.n
        )));
    }
    let used = plan.used_len();
    let inv_p = 1.0 / plan.p as f64;
    let mut means: Vec<f64> = values[..used]
        .chunks_exact(plan.p)
        .map(|b| b.iter().sum::<f64>() * inv_p)
        .collect();
    let mut used_length = used;
    if remainder == Remainder::Append && plan.remainder() > 0 {
        let tail = &values[used..];
        means.push(tail.iter().sum::<f64>() / tail.len() as f64);
        used_length = plan.n;
    }
    Ok(BlockMeans {
        means,
        plan: *plan,
        used_length,
    })
}

/// How the subtracted second moment `E G²` in `U_i = G_i² − E G²` was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SecondMomentRef {
    /// A known value, typically the theoretical `σ²`.
    Oracle(f64),
    /// The empirical mean of the `G_i²`.
    PlugIn,
}

/// Normalised block sums `G_i = √p (Y_i − m)` and centred squares `U_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedBlocks {
    pub g: Vec<f64>,
    pub u: Vec<f64>,
    pub m_ref: f64,
    pub second_moment_ref: f64,
    pub mode: SecondMomentRef,
}

impl NormalizedBlocks {
    pub fn mean_u(&self) -> f64 {
        self.u.iter().sum::<f64>() / self.u.len() as f64
    }
}

pub fn normalize_blocks(
    bm: &BlockMeans,
    m_ref: f64,
    second_moment: SecondMomentRef,
) -> Result<NormalizedBlocks> {
    if !(m_ref > 0.0 && m_ref.is_finite()) {
        return Err(Error::Domain(format!("m_ref must be > 0, got {m_ref}")));
    }
    let scale = (bm.block_len() as f64).sqrt();
    let g: Vec<f64> = bm.means.iter().map(|y| scale * (y - m_ref)).collect();
    let reference = match second_moment {
        SecondMomentRef::Oracle(v) => v,
        SecondMomentRef::PlugIn => g.iter().map(|x| x * x).sum::<f64>() / g.len() as f64,
    };
    let u = g.iter().map(|x| x * x - reference).collect();
    Ok(NormalizedBlocks {
        g,
        u,
        m_ref,
        second_moment_ref: reference,
        mode: second_moment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn one_to(n: usize) -> Vec<f64> {
        (1..=n).map(|v| v as f64).collect()
    }

    #[test]
    fn plan_examples() {
        let plan = plan_blocks(10_000, 1.0, 0.5).unwrap();
        assert_eq!((plan.p, plan.k), (100, 100));
        assert!(plan.rate_flags.zeta_ok);
        assert!(!plan.rate_flags.corollary_ok);

        let plan = plan_blocks(100, 2.0, 0.4).unwrap();
        assert_eq!((plan.p, plan.k), (12, 8));

        assert!(matches!(plan_blocks(10, 1.0, 0.99), Err(Error::Plan(_))));

        let plan = plan_blocks(100_000, 1.0, 0.5).unwrap();
        assert_eq!((plan.p, plan.k), (316, 316));
    }

    #[test]
    fn plan_flags_and_validation() {
        let low = plan_blocks(10_000, 1.0, 0.3).unwrap();
        assert!(!low.rate_flags.zeta_ok);
        let high = plan_blocks(1_000_000, 1.0, 0.75).unwrap();
        assert!(high.rate_flags.corollary_ok);
        // v = ln 5000 / ln 1e6 ≈ 0.62 > 3·0.75 − 2 = 0.25
        assert!(!high.with_gap(5000).unwrap().rate_flags.corollary_ok);
        assert!(high.with_gap(20).unwrap().rate_flags.corollary_ok);
        assert!(plan_blocks(3, 1.0, 0.5).is_err());
        assert!(plan_blocks(100, 0.0, 0.5).is_err());
        assert!(plan_blocks(100, 1.0, 1.0).is_err());
    }

    #[test]
    fn block_mean_examples() {
        let plan = BlockPlan::with_block_len(10, 3).unwrap();
        let bm = block_means(&one_to(10), &plan).unwrap();
        assert_eq!(bm.means, vec![2.0, 5.0, 8.0]);
        assert_eq!(bm.used_length, 9);

        let bm = block_means_with(&one_to(10), &plan, Remainder::Append).unwrap();
        assert_eq!(bm.means, vec![2.0, 5.0, 8.0, 10.0]);

        let plan = BlockPlan::static_plan(10).unwrap();
        assert_eq!(block_means(&one_to(10), &plan).unwrap().means, one_to(10));

        let c = vec![3.5; 100];
        let plan = plan_blocks(100, 1.0, 0.5).unwrap();
        assert!(block_means(&c, &plan).unwrap().means.iter().all(|m| *m == 3.5));

        assert!(matches!(block_means(&c[..50], &plan), Err(Error::Domain(_))));
    }

    #[test]
    fn normalize_examples() {
        let plan = BlockPlan::with_block_len(10, 3).unwrap();
        let bm = block_means(&one_to(10), &plan).unwrap();
        let nb = normalize_blocks(&bm, 5.0, SecondMomentRef::Oracle(0.0)).unwrap();
        let r = 3.0 * 3f64.sqrt();
        assert!((nb.g[0] + r).abs() < 1e-12 && nb.g[1] == 0.0 && (nb.g[2] - r).abs() < 1e-12);
        assert!((nb.u[0] - 27.0).abs() < 1e-12 && nb.u[1] == 0.0 && (nb.u[2] - 27.0).abs() < 1e-12);

        let flat = BlockMeans {
            means: vec![4.0; 5],
            plan: BlockPlan::with_block_len(10, 2).unwrap(),
            used_length: 10,
        };
        let nb = normalize_blocks(&flat, 4.0, SecondMomentRef::Oracle(1.5)).unwrap();
        assert!(nb.g.iter().all(|g| *g == 0.0) && nb.u.iter().all(|u| *u == -1.5));

        let plan = BlockPlan::static_plan(4).unwrap();
        let x = [1.0, 2.0, 4.0, 5.0];
        let nb = normalize_blocks(&block_means(&x, &plan).unwrap(), 3.0, SecondMomentRef::PlugIn)
            .unwrap();
        assert_eq!(nb.g, vec![-2.0, -1.0, 1.0, 2.0]);
        assert_eq!(nb.second_moment_ref, 2.5);
        assert_eq!(nb.mean_u(), 0.0);

        assert!(normalize_blocks(&bm, 0.0, SecondMomentRef::PlugIn).is_err());
    }

    proptest! {
        #[test]
        fn partition_and_mean_consistency(
            xs in prop::collection::vec(0.1f64..100.0, 4..400),
            p in 1usize..40,
            c in 0.01f64..100.0,
        ) {
            let n = xs.len();
            prop_assume!(n / p >= 2);
            let plan = BlockPlan::with_block_len(n, p).unwrap();
            let covered: Vec<usize> = (0..plan.k).flat_map(|i| plan.block_range(i)).collect();
            prop_assert_eq!(covered, (0..plan.used_len()).collect::<Vec<_>>());
            prop_assert!(plan.remainder() < p);

            let bm = block_means(&xs, &plan).unwrap();
            let mean_of_means = bm.means.iter().sum::<f64>() / plan.k as f64;
            let prefix = xs[..plan.used_len()].iter().sum::<f64>() / plan.used_len() as f64;
            prop_assert!((mean_of_means - prefix).abs() <= 1e-12 * prefix);

            let scaled: Vec<f64> = xs.iter().map(|x| c * x).collect();
            let bs = block_means(&scaled, &plan).unwrap();
            for (a, b) in bm.means.iter().zip(&bs.means) {
                prop_assert!((c * a - b).abs() <= 1e-12 * b.abs());
            }
        }
    }
}
