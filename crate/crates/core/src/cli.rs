//! Command-line front end. Exit codes: 0 success, 1 usage or config
//! error, 2 runtime or I/O error.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::Parser;
use thiserror::Error;

use crate::config::{parse_config, AlgorithmChoice, CliConfig, ParseError, TraceMode};
use crate::export::{write_metrics, write_qtables, write_trace};
use crate::harness::{run_batch, run_single, BatchResult};

#[derive(Debug, Parser)]
#[command(name = "antijam", about = "Sweep-jammer anti-jamming experiments")]
struct Args {
    /// Flat `key = value` experiment file.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// cmaa, iql, sensing or all.
    #[arg(long, value_name = "ALGO")]
    algo: Option<AlgorithmChoice>,
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,
    #[arg(long, value_name = "INT")]
    runs: Option<usize>,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// none, first-run or all.
    #[arg(long, value_name = "MODE")]
    trace: Option<TraceMode>,
    /// Write the Q-tables of run 0.
    #[arg(long)]
    dump_q: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read config {path}: {source}")]
    ConfigRead { path: PathBuf, source: io::Error },
    #[error("config: {0}")]
    Config(#[from] ParseError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::ConfigRead { .. } | CliError::Config(_) => 1,
            CliError::Io { .. } => 2,
        }
    }
}

/// Parses arguments, runs the experiments and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match resolve(args).and_then(|cfg| execute(&cfg)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn resolve(args: Args) -> Result<CliConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::ConfigRead {
                path: path.clone(),
                source,
            })?;
            parse_config(&text)?
        }
        None => CliConfig::default(),
    };
    if let Some(a) = args.algo {
        cfg.algorithms = a;
    }
    if let Some(seed) = args.seed {
        cfg.experiment.master_seed = seed;
    }
    if let Some(runs) = args.runs {
        cfg.experiment.num_runs = runs;
    }
    if let Some(out) = args.out {
        cfg.out_dir = out;
    }
    if let Some(trace) = args.trace {
        cfg.trace = trace;
    }
    cfg.dump_q |= args.dump_q;
    cfg.experiment
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(cfg)
}

/// Runs every requested algorithm and writes its files. Metrics for all
/// algorithms are aggregated before anything touches the disk; on failure
/// every file written so far is removed.
pub fn execute(cfg: &CliConfig) -> Result<(), CliError> {
    let algorithms = cfg.algorithms.algorithms();
    let batches: Vec<BatchResult> = algorithms
        .iter()
        .map(|&a| run_batch(&cfg.experiment.clone().with_algorithm(a)))
        .collect();
    for b in &batches {
        println!(
            "{:<8} final rho {:.4} (stderr {:.5}, {} runs)",
            b.algorithm.name(),
            b.final_mean,
            b.final_stderr,
            b.runs.len()
        );
    }

    let mut written = Vec::new();
    let result = write_outputs(cfg, &batches, &mut written);
    if result.is_err() {
        for path in &written {
            let _ = fs::remove_file(path);
        }
    }
    result
}

fn write_outputs(
    cfg: &CliConfig,
    batches: &[BatchResult],
    written: &mut Vec<PathBuf>,
) -> Result<(), CliError> {
    let dir = &cfg.out_dir;
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.clone(),
        source,
    })?;
    for batch in batches {
        let name = batch.algorithm.name();
        let exp = cfg.experiment.clone().with_algorithm(batch.algorithm);
        write_file(&dir.join(format!("metrics_{name}.csv")), written, |w| {
            write_metrics(w, batch)
        })?;

        let trace_runs = match cfg.trace {
            TraceMode::None => 0,
            TraceMode::FirstRun => 1,
            TraceMode::All => exp.num_runs,
        };
        let needs_q = cfg.dump_q && batch.algorithm != crate::harness::Algorithm::Sensing;
        for k in 0..trace_runs.max(usize::from(needs_q)) {
            let out = run_single(&exp, k);
            if k < trace_runs {
                write_file(&dir.join(format!("trace_{name}_run{k}.csv")), written, |w| {
                    write_trace(w, &out.records, &exp.timing)
                })?;
            }
            if k == 0 && needs_q {
                write_file(&dir.join(format!("qtable_{name}.csv")), written, |w| {
                    write_qtables(w, &out.q_tables)
                })?;
            }
        }
    }
    Ok(())
}

fn write_file<F>(path: &Path, written: &mut Vec<PathBuf>, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut BufWriter<File>) -> io::Result<()>,
{
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    written.push(path.to_path_buf());
    let mut w = BufWriter::new(file);
    body(&mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}
