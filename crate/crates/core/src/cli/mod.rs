//! Command-line front end.
//!
//! Exit codes: `0` success, `1` numeric failure reported by a module, `2` usage or
//! configuration error. Diagnostics are a single line on stderr.

mod args;
mod io;

use std::ffi::OsString;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;

use crate::blocks::{block_means, plan_blocks, BlockPlan};
use crate::error::Error;
use crate::inference::{estimate_beta, estimate_beta_unit_log, gof_test};
use crate::longrun_variance;
use crate::montecarlo::{
    bias_rate_experiment, cumulant_identity_check, moment_boundedness_diagnostic, run_clt_experiment_with_rows,
    MCConfig,
};
use crate::process::{simulate, ProcessSpec};
use crate::statistics::{dynamic_taylor, mean_power, TaylorStatistics};

pub use args::Cli;
use args::{Blocking, Command, Form, Format, Source, Statistic};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Module(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Module(Error::Parameter(_) | Error::Plan(_) | Error::Budget(_)) => 2,
            CliError::Module(_) | CliError::Io(_) => 1,
        }
    }
}

/// Parses `args` (including the program name), runs the command and maps the outcome
/// to an exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    let msg = e.to_string();
                    let line = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("usage error");
                    eprintln!("dyntaylor: {}", line.trim_start_matches("error: "));
                    ExitCode::from(2)
                }
            };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dyntaylor: {}", e.to_string().replace('\n', " "));
            ExitCode::from(e.exit_code())
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let out = cli.out.as_deref();
    pool.install(|| dispatch(cli.command, out))
}

fn load_series(src: &Source) -> Result<Vec<f64>, CliError> {
    match (&src.input, &src.spec) {
        (Some(path), _) => io::read_series(path),
        (None, Some(spec)) => {
            let spec: ProcessSpec = io::read_json(spec)?;
            let n = src.n.ok_or_else(|| CliError::Usage("--spec needs --n".into()))?;
            Ok(simulate(&spec, n, src.seed)?.into_values())
        }
        (None, None) => Err(CliError::Usage("give --input or --spec with --n".into())),
    }
}

fn make_plan(n: usize, b: &Blocking) -> Result<BlockPlan, CliError> {
    Ok(if b.static_mode {
        BlockPlan::static_plan(n)?
    } else if let Some(p) = b.block_len {
        BlockPlan::with_block_len(n, p)?
    } else {
        plan_blocks(n, b.kappa, b.zeta)?
    })
}

#[derive(Serialize)]
struct SeriesRow {
    index: usize,
    value: f64,
}

#[derive(Serialize)]
struct BlocksOutput {
    plan: BlockPlan,
    used_length: usize,
    means: Vec<f64>,
}

#[derive(Serialize)]
struct StatsOutput {
    #[serde(flatten)]
    stats: TaylorStatistics,
    /// `S − ((k−1)/k · T₂ + 1) Ȳ^{2−β}`, zero up to rounding.
    identity_residual: f64,
    plan: BlockPlan,
}

#[derive(Serialize)]
struct EstimateOutput {
    beta_hat: f64,
    statistic: &'static str,
    form: &'static str,
    value: f64,
    #[serde(rename = "T")]
    t: f64,
    #[serde(rename = "S")]
    s: f64,
    m_hat: f64,
    beta: f64,
    p: usize,
    k: usize,
}

#[derive(Serialize)]
struct CumulantRow {
    i: usize,
    j: usize,
    k: usize,
    n: usize,
    lhs: f64,
    rhs: f64,
    kappa_hat: f64,
    kappa_se: f64,
}

fn dispatch(command: Command, out: Option<&Path>) -> Result<(), CliError> {
    match command {
        Command::Simulate { spec, n, seed } => {
            let spec: ProcessSpec = io::read_json(&spec)?;
            let traj = simulate(&spec, n, seed)?;
            let rows: Vec<SeriesRow> = traj
                .values()
                .iter()
                .enumerate()
                .map(|(index, &value)| SeriesRow { index, value })
                .collect();
            io::write_csv(&rows, out)
        }
        Command::Blocks { source, blocking } => {
            let x = load_series(&source)?;
            let plan = make_plan(x.len(), &blocking)?;
            let bm = block_means(&x, &plan)?;
            io::write_json(
                &BlocksOutput {
                    plan,
                    used_length: bm.used_length,
                    means: bm.means,
                },
                out,
            )
        }
        Command::Stats {
            source,
            blocking,
            beta,
        } => {
            let x = load_series(&source)?;
            let plan = make_plan(x.len(), &blocking)?;
            let stats = dynamic_taylor(&x, &plan, beta)?;
            let t2 = dynamic_taylor(&x, &plan, 2.0)?.t;
            let k = stats.k as f64;
            let identity_residual = stats.s - ((k - 1.0) / k * t2 + 1.0) * mean_power(stats.mean_used, 2.0 - beta);
            io::write_json(
                &StatsOutput {
                    stats,
                    identity_residual,
                    plan,
                },
                out,
            )
        }
        Command::Lrv {
            source,
            bandwidth,
            squares,
        } => {
            let x = load_series(&source)?;
            io::write_json(&longrun_variance::estimate(&x, bandwidth, squares)?, out)
        }
        Command::Test {
            source,
            blocking,
            beta0,
            eta,
            bandwidth,
        } => {
            let x = load_series(&source)?;
            let plan = make_plan(x.len(), &blocking)?;
            io::write_json(&gof_test(&x, &plan, beta0, eta, bandwidth)?, out)
        }
        Command::EstimateBeta {
            source,
            blocking,
            beta,
            statistic,
            form,
        } => {
            let x = load_series(&source)?;
            let plan = make_plan(x.len(), &blocking)?;
            let st = dynamic_taylor(&x, &plan, beta)?;
            let (name, value) = match statistic {
                Statistic::T => ("T", st.t),
                Statistic::S => ("S", st.s),
            };
            let (form_name, beta_hat) = match form {
                Form::LogRatio => ("log_ratio", estimate_beta(value, st.mean_used)?),
                Form::UnitLog => ("unit_log", estimate_beta_unit_log(value)?),
            };
            io::write_json(
                &EstimateOutput {
                    beta_hat,
                    statistic: name,
                    form: form_name,
                    value,
                    t: st.t,
                    s: st.s,
                    m_hat: st.mean_used,
                    beta,
                    p: st.p,
                    k: st.k,
                },
                out,
            )
        }
        Command::Mc { config, seed, csv } => {
            let mut cfg: MCConfig = io::read_json(&config)?;
            if let Some(s) = seed {
                cfg.base_seed = s;
            }
            let start = Instant::now();
            let (report, rows) = run_clt_experiment_with_rows(&cfg)?;
            // timing stays out of the report so reruns are byte-identical
            eprintln!(
                "dyntaylor: {} replicates in {:.1}s",
                cfg.replicates,
                start.elapsed().as_secs_f64()
            );
            if let Some(path) = csv {
                io::write_csv(&rows, Some(&path))?;
            }
            io::write_json(&report, out)
        }
        Command::DiagVariance {
            spec,
            p_grid,
            moments,
            replicates,
            seed,
            format,
        } => {
            let spec: ProcessSpec = io::read_json(&spec)?;
            if moments {
                let r = moment_boundedness_diagnostic(&spec, &p_grid, seed, replicates)?;
                match format {
                    Format::Csv => io::write_csv(&r.rows, out),
                    Format::Json => io::write_json(&r, out),
                }
            } else {
                let r = bias_rate_experiment(&spec, &p_grid)?;
                match format {
                    Format::Csv => io::write_csv(&r.rows, out),
                    Format::Json => io::write_json(&r, out),
                }
            }
        }
        Command::CumulantCheck { source, lags, format } => {
            let x = load_series(&source)?;
            let checks = lags
                .iter()
                .map(|&l| cumulant_identity_check(&x, l))
                .collect::<Result<Vec<_>, _>>()?;
            match format {
                Format::Json => io::write_json(&checks, out),
                Format::Csv => {
                    let rows: Vec<CumulantRow> = checks
                        .iter()
                        .map(|c| CumulantRow {
                            i: c.lags.0,
                            j: c.lags.1,
                            k: c.lags.2,
                            n: c.n,
                            lhs: c.lhs,
                            rhs: c.rhs,
                            kappa_hat: c.kappa_hat,
                            kappa_se: c.kappa_se,
                        })
                        .collect();
                    io::write_csv(&rows, out)
                }
            }
        }
    }
}
