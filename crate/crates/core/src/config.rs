//! Flat `key = value` experiment files.
//!
//! One assignment per line, `#` starts a comment, blank lines are ignored.
//! Durations are milliseconds, rates are decimals. Every key is optional;
//! missing keys take the defaults below.
//!
//! | key            | default     | meaning                                   |
//! |----------------|-------------|-------------------------------------------|
//! | `num_users`    | 2           | N                                         |
//! | `num_channels` | 5           | M (also the number of swept channels)     |
//! | `learning_rate`| 0.8         | λ in (0, 1]                               |
//! | `discount`     | 0.6         | γ in [0, 1)                               |
//! | `epsilon`      | 0.2         | ε in (0, 1)                               |
//! | `num_slots`    | 10000       | K                                         |
//! | `window`       | 20          | packets per statistics window             |
//! | `t_rx`         | 0.98        | transmission sub-slot                     |
//! | `t_overhead`   | 0.2         | sensing + ACK + learning sub-slots        |
//! | `t_dwell`      | 2.28        | jammer dwell per channel                  |
//! | `jam_start`    | 0.2         | time the jammer switches on               |
//! | `sweep_order`  | 1,2,...,M   | comma-separated channel permutation       |
//! | `runs`         | 200         | replications                              |
//! | `seed`         | 0           | master seed                               |
//! | `algorithm`    | all         | `cmaa`, `iql`, `sensing` or `all`         |
//! | `exploration`  | joint       | `joint` or `per-user` (CMAA only)         |
//! | `accounting`   | system      | `system` or `per-user` packet windows     |
//! | `pairing`      | paired      | `paired` or `unpaired` seeds across algos |
//! | `out`          | results     | output directory                          |
//! | `trace`        | none        | `none`, `first-run` or `all`              |
//! | `dump_q`       | false       | write Q-table snapshots of run 0          |

use std::collections::HashSet;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::domain::{ChannelId, ConfigError, GameConfig};
use crate::harness::{Accounting, Algorithm, ExperimentConfig, Pairing};
use crate::jammer::{ascending_sweep, TimingConfig};
use crate::learners::ExplorationMode;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: expected `key = value`, found `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given twice")]
    DuplicateKey { line: usize, key: String },
    #[error("`{key}`: cannot parse `{value}` as {expected}")]
    Malformed {
        key: &'static str,
        value: String,
        expected: &'static str,
    },
    #[error(transparent)]
    Invalid(#[from] ConfigError),
}

/// Which algorithms a CLI invocation runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmChoice {
    One(Algorithm),
    All,
}

impl AlgorithmChoice {
    pub fn algorithms(self) -> Vec<Algorithm> {
        match self {
            AlgorithmChoice::One(a) => vec![a],
            AlgorithmChoice::All => Algorithm::ALL.to_vec(),
        }
    }
}

impl FromStr for AlgorithmChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            Ok(AlgorithmChoice::All)
        } else {
            s.parse().map(AlgorithmChoice::One)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceMode {
    #[default]
    None,
    FirstRun,
    All,
}

impl FromStr for TraceMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(TraceMode::None),
            "first-run" => Ok(TraceMode::FirstRun),
            "all" => Ok(TraceMode::All),
            other => Err(format!("unknown trace mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    /// Experiment template; its `algorithm` is replaced per run of `algorithms`.
    pub experiment: ExperimentConfig,
    pub algorithms: AlgorithmChoice,
    pub out_dir: PathBuf,
    pub trace: TraceMode,
    pub dump_q: bool,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            experiment: ExperimentConfig::defaults(Algorithm::Cmaa, 0),
            algorithms: AlgorithmChoice::All,
            out_dir: PathBuf::from("results"),
            trace: TraceMode::None,
            dump_q: false,
        }
    }
}

const KEYS: &[&str] = &[
    "num_users",
    "num_channels",
    "learning_rate",
    "discount",
    "epsilon",
    "num_slots",
    "window",
    "t_rx",
    "t_overhead",
    "t_dwell",
    "jam_start",
    "sweep_order",
    "runs",
    "seed",
    "algorithm",
    "exploration",
    "accounting",
    "pairing",
    "out",
    "trace",
    "dump_q",
];

struct Raw(Vec<(&'static str, String)>);

impl Raw {
    fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| v.as_str())
    }

    fn parse_or<T: FromStr>(
        &self,
        key: &'static str,
        default: T,
        expected: &'static str,
    ) -> Result<T, ParseError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| ParseError::Malformed {
                key,
                value: v.to_string(),
                expected,
            }),
        }
    }
}

pub fn parse_config(text: &str) -> Result<CliConfig, ParseError> {
    let mut raw = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ParseError::Syntax {
            line: line_no,
            text: content.to_string(),
        })?;
        let key = key.trim();
        let key = *KEYS.iter().find(|k| **k == key).ok_or_else(|| ParseError::UnknownKey {
            line: line_no,
            key: key.to_string(),
        })?;
        if !seen.insert(key) {
            return Err(ParseError::DuplicateKey {
                line: line_no,
                key: key.to_string(),
            });
        }
        let value = value.trim();
        let value = value
            .strip_prefix('"')
            .and_then(|v| v.strip_suffix('"'))
            .unwrap_or(value);
        raw.push((key, value.to_string()));
    }
    build(&Raw(raw))
}

fn build(raw: &Raw) -> Result<CliConfig, ParseError> {
    let defaults = CliConfig::default();
    let d = &defaults.experiment;
    let g = &d.game;
    let t = &d.timing;
    const INT: &str = "a non-negative integer";
    const DEC: &str = "a decimal number";

    let num_channels = raw.parse_or("num_channels", g.num_channels(), INT)?;
    let game = GameConfig::new(
        raw.parse_or("num_users", g.num_users(), INT)?,
        num_channels,
        raw.parse_or("learning_rate", g.learning_rate(), DEC)?,
        raw.parse_or("discount", g.discount(), DEC)?,
        raw.parse_or("epsilon", g.exploration(), DEC)?,
        raw.parse_or("num_slots", g.num_slots(), INT)?,
        raw.parse_or("window", g.window(), INT)?,
    )?;
    let sweep_order = match raw.get("sweep_order") {
        None => ascending_sweep(num_channels),
        Some(v) => parse_sweep(v, num_channels)?,
    };
    let timing = TimingConfig::new(
        raw.parse_or("t_rx", t.t_rx(), DEC)?,
        raw.parse_or("t_overhead", t.t_overhead(), DEC)?,
        raw.parse_or("t_dwell", t.t_dwell(), DEC)?,
        raw.parse_or("jam_start", t.jam_start(), DEC)?,
        sweep_order,
    )?;
    let exploration_mode = match raw.get("exploration") {
        None | Some("joint") => ExplorationMode::Joint,
        Some("per-user") => ExplorationMode::PerUser,
        Some(v) => return Err(malformed("exploration", v, "`joint` or `per-user`")),
    };
    let accounting = match raw.get("accounting") {
        None | Some("system") => Accounting::System,
        Some("per-user") => Accounting::PerUser,
        Some(v) => return Err(malformed("accounting", v, "`system` or `per-user`")),
    };
    let pairing = match raw.get("pairing") {
        None | Some("paired") => Pairing::Paired,
        Some("unpaired") => Pairing::Unpaired,
        Some(v) => return Err(malformed("pairing", v, "`paired` or `unpaired`")),
    };
    let algorithms = raw.parse_or(
        "algorithm",
        defaults.algorithms,
        "`cmaa`, `iql`, `sensing` or `all`",
    )?;
    let first = algorithms.algorithms()[0];
    let experiment = ExperimentConfig::new(
        game,
        timing,
        first,
        raw.parse_or("runs", d.num_runs, INT)?,
        raw.parse_or("seed", d.master_seed, "an unsigned 64-bit integer")?,
    )?
    .with_exploration_mode(exploration_mode)
    .with_accounting(accounting)
    .with_pairing(pairing);
    experiment.validate()?;

    Ok(CliConfig {
        experiment,
        algorithms,
        out_dir: raw.get("out").map(PathBuf::from).unwrap_or(defaults.out_dir),
        trace: raw.parse_or("trace", defaults.trace, "`none`, `first-run` or `all`")?,
        dump_q: raw.parse_or("dump_q", defaults.dump_q, "`true` or `false`")?,
    })
}

fn malformed(key: &'static str, value: &str, expected: &'static str) -> ParseError {
    ParseError::Malformed {
        key,
        value: value.to_string(),
        expected,
    }
}

fn parse_sweep(value: &str, num_channels: usize) -> Result<Vec<ChannelId>, ParseError> {
    value
        .split(',')
        .map(|part| {
            let c: usize = part
                .trim()
                .parse()
                .map_err(|_| malformed("sweep_order", value, "a comma-separated channel list"))?;
            ChannelId::new(c, num_channels).map_err(|_| {
                ParseError::Invalid(ConfigError::BadSweepOrder {
                    order: Vec::new(),
                    channels: num_channels,
                })
            })
        })
        .collect()
}
