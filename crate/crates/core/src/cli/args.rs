use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "dyntaylor", version, about = "Dynamic Taylor's law: statistics, tests and Monte Carlo checks")]
pub struct Cli {
    /// Worker threads (default: available parallelism). Output does not depend on it.
    #[arg(long, global = true, env = "DYNTAYLOR_THREADS")]
    pub threads: Option<usize>,

    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate a trajectory and write it as CSV (index,value).
    Simulate {
        /// ProcessSpec JSON file.
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cut a trajectory into blocks and report the block means.
    Blocks {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        blocking: Blocking,
    },
    /// Taylor statistics T and S of the block means.
    Stats {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        blocking: Blocking,
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        beta: f64,
    },
    /// Bartlett long-run variance of the series (and of its squared deviations).
    Lrv {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        bandwidth: Option<usize>,
        /// Also estimate the long-run variance of the squared deviations.
        #[arg(long)]
        squares: bool,
    },
    /// Goodness-of-fit test of beta = beta0.
    Test {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        blocking: Blocking,
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        beta0: f64,
        #[arg(long, default_value_t = 0.05)]
        eta: f64,
        #[arg(long)]
        bandwidth: Option<usize>,
    },
    /// Estimate beta as 2 - ln(statistic)/ln(m_hat).
    EstimateBeta {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        blocking: Blocking,
        /// Exponent used inside the statistic.
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, value_enum, default_value_t = Statistic::S)]
        statistic: Statistic,
        #[arg(long, value_enum, default_value_t = Form::LogRatio)]
        form: Form,
    },
    /// Monte Carlo central limit experiment from an MCConfig JSON file.
    Mc {
        #[arg(long)]
        config: PathBuf,
        /// Override the config's base_seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Also write per-replicate statistics as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Exact block-variance bias table, or the Monte Carlo fourth-moment table.
    DiagVariance {
        #[arg(long)]
        spec: PathBuf,
        /// Comma-separated block lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        p_grid: Vec<usize>,
        /// Report E G^4 by simulation instead of the exact bias.
        #[arg(long)]
        moments: bool,
        #[arg(long, default_value_t = 2000)]
        replicates: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Empirical fourth-cumulant decomposition at lag triples.
    CumulantCheck {
        #[command(flatten)]
        source: Source,
        /// Lag triple i,j,k; repeat for several.
        #[arg(long = "lags", value_parser = parse_triple, required = true)]
        lags: Vec<(usize, usize, usize)>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

/// A trajectory from a CSV file or simulated from a spec.
#[derive(Debug, Args)]
pub struct Source {
    /// CSV with a `value` column (or values in the first column).
    #[arg(long, conflicts_with = "spec")]
    pub input: Option<PathBuf>,
    /// ProcessSpec JSON file to simulate from.
    #[arg(long, requires = "n")]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct Blocking {
    #[arg(long, default_value_t = 1.0)]
    pub kappa: f64,
    #[arg(long, default_value_t = 0.5)]
    pub zeta: f64,
    /// Explicit block length, overriding kappa and zeta.
    #[arg(long, conflicts_with = "static_mode")]
    pub block_len: Option<usize>,
    /// Static mode, p = 1.
    #[arg(long = "static")]
    pub static_mode: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Statistic {
    T,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Form {
    /// 2 - ln(stat)/ln(m_hat)
    LogRatio,
    /// 2 - ln(stat)
    UnitLog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn parse_triple(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected i,j,k, got {s:?}"));
    }
    let p = |x: &str| x.parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(parts[0])?, p(parts[1])?, p(parts[2])?))
}
