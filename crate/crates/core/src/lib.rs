//! Static and dynamic Taylor's-law statistics for stationary time series.
//!
//! The crate is organised bottom-up:
//!
//! * [`process`]: reproducible positive stationary processes with analytic moments,
//! * [`blocks`]: contiguous block partitions, block means and normalised block sums,
//! * [`statistics`]: the Taylor statistic `T` and the self-normalised sum `S`,
//! * [`longrun_variance`]: Bartlett long-run variance estimators and the finite-block
//!   variance `E Γ_p²`,
//! * [`inference`]: the goodness-of-fit interval, the test, and exponent estimators,
//! * [`montecarlo`]: the replicate harness checking the limit theorems,
//! * [`cli`]: the `dyntaylor` command line.
//!
//! # Normalisation of the dynamic statistic
//!
//! Block means over blocks of length `p` have variance close to `σ²/p`, so the raw
//! Taylor statistic `T_β` built from them concentrates at `σ²/(p m^β)`. The quantity
//! with a non-degenerate Gaussian limit is therefore the block-rescaled statistic
//!
//! ```text
//! √k · (p·T_β − σ²/m^β)  →  N(0, 2σ⁴/m^{2β})
//! ```
//!
//! and the harness reports it both centred and shifted by the bias term `σ²/m^β`,
//! the latter being the `N(σ²/m^β, 2σ⁴/m^{2β})` representation used throughout the
//! goodness-of-fit construction. See [`statistics::centred_block_statistic`].

pub mod blocks;
pub mod cli;
pub mod error;
pub mod inference;
pub mod longrun_variance;
pub mod montecarlo;
pub mod process;
pub mod statistics;

mod parallel;

pub use error::{Error, Result};
