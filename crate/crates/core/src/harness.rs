//! Experiment orchestration: single runs, replicated batches and the
//! windowed normalized rate `rho = successes / window`.
//!
//! Packets are counted system-wide by default: each slot carries one
//! packet per user, ordered slot-major then user-minor, and the stream is
//! cut into tumbling windows of `window` packets.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::domain::{ConfigError, GameConfig, State};
use crate::jammer::{evaluate_slot, initial_state, next_state, SlotRecord, TimingConfig};
use crate::learners::{CmaaTeam, ExplorationMode, IqlTeam, Policy, QTable, SensingBaseline};
use crate::seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Cmaa,
    Iql,
    Sensing,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Cmaa, Algorithm::Iql, Algorithm::Sensing];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cmaa => "cmaa",
            Algorithm::Iql => "iql",
            Algorithm::Sensing => "sensing",
        }
    }

    fn tag(self) -> u64 {
        match self {
            Algorithm::Cmaa => 1,
            Algorithm::Iql => 2,
            Algorithm::Sensing => 3,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cmaa" => Ok(Algorithm::Cmaa),
            "iql" => Ok(Algorithm::Iql),
            "sensing" => Ok(Algorithm::Sensing),
            other => Err(format!("unknown algorithm `{other}` (expected cmaa, iql or sensing)")),
        }
    }
}

/// How packets are grouped into statistics windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Accounting {
    /// One stream of N packets per slot; a window holds `window` packets.
    #[default]
    System,
    /// Each user's own stream is windowed with `window` packets; windows
    /// with the same index are pooled across users.
    PerUser,
}

/// Whether different algorithms reuse the same per-run seeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pairing {
    #[default]
    Paired,
    Unpaired,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub game: GameConfig,
    pub timing: TimingConfig,
    pub algorithm: Algorithm,
    pub num_runs: usize,
    pub master_seed: u64,
    pub exploration_mode: ExplorationMode,
    pub accounting: Accounting,
    pub pairing: Pairing,
}

impl ExperimentConfig {
    pub fn new(
        game: GameConfig,
        timing: TimingConfig,
        algorithm: Algorithm,
        num_runs: usize,
        master_seed: u64,
    ) -> Result<Self, ConfigError> {
        let cfg = ExperimentConfig {
            game,
            timing,
            algorithm,
            num_runs,
            master_seed,
            exploration_mode: ExplorationMode::Joint,
            accounting: Accounting::System,
            pairing: Pairing::Paired,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Default parameters with 200 runs.
    pub fn defaults(algorithm: Algorithm, master_seed: u64) -> Self {
        let game = GameConfig::defaults();
        let timing = TimingConfig::defaults(game.num_channels());
        ExperimentConfig::new(game, timing, algorithm, 200, master_seed).expect("defaults are valid")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.num_runs == 0 {
            return Err(ConfigError::OutOfRange {
                key: "runs",
                value: "0".into(),
                expected: "an integer >= 1",
            });
        }
        if self.timing.num_jam_channels() != self.game.num_channels() {
            return Err(ConfigError::BadSweepOrder {
                order: self.timing.sweep_order().iter().map(|c| c.get()).collect(),
                channels: self.game.num_channels(),
            });
        }
        let packets = self.packets_per_stream();
        if self.game.window() > packets {
            return Err(ConfigError::WindowTooLarge {
                window: self.game.window(),
                packets,
            });
        }
        Ok(())
    }

    fn packets_per_stream(&self) -> usize {
        match self.accounting {
            Accounting::System => self.game.num_slots() * self.game.num_users(),
            Accounting::PerUser => self.game.num_slots(),
        }
    }

    pub fn with_algorithm(mut self, algorithm: Algorithm) -> Self {
        self.algorithm = algorithm;
        self
    }

    pub fn with_runs(mut self, num_runs: usize) -> Self {
        self.num_runs = num_runs;
        self
    }

    pub fn with_exploration_mode(mut self, mode: ExplorationMode) -> Self {
        self.exploration_mode = mode;
        self
    }

    pub fn with_accounting(mut self, accounting: Accounting) -> Self {
        self.accounting = accounting;
        self
    }

    pub fn with_pairing(mut self, pairing: Pairing) -> Self {
        self.pairing = pairing;
        self
    }
}

/// Seed of replication `run_index`: `split(master, run_index)` when runs are
/// paired across algorithms, `split(split(master, tag), run_index)` otherwise.
pub fn run_seed(cfg: &ExperimentConfig, run_index: usize) -> u64 {
    let base = match cfg.pairing {
        Pairing::Paired => cfg.master_seed,
        Pairing::Unpaired => seed::split(cfg.master_seed, cfg.algorithm.tag()),
    };
    seed::split(base, run_index as u64)
}

/// Fresh policy for one replication.
pub fn make_policy(cfg: &ExperimentConfig, run_seed: u64) -> Box<dyn Policy + Send> {
    match cfg.algorithm {
        Algorithm::Cmaa => Box::new(
            CmaaTeam::new(&cfg.game, seed::stream(run_seed, seed::TEAM_STREAM))
                .with_exploration_mode(cfg.exploration_mode),
        ),
        Algorithm::Iql => Box::new(IqlTeam::new(&cfg.game, run_seed)),
        Algorithm::Sensing => Box::new(SensingBaseline::new(&cfg.game)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunMetrics {
    pub rho_series: Vec<f64>,
    pub success_counts: Vec<usize>,
    /// Mean of the last 10% of windows (at least one).
    pub final_rho: f64,
}

impl RunMetrics {
    fn from_counts(success_counts: Vec<usize>, packets_per_window: usize) -> Self {
        let rho_series: Vec<f64> = success_counts
            .iter()
            .map(|&c| c as f64 / packets_per_window as f64)
            .collect();
        let final_rho = tail_mean(&rho_series);
        RunMetrics {
            rho_series,
            success_counts,
            final_rho,
        }
    }
}

/// Mean over the last `ceil(len / 10)` entries; 0 for an empty series.
pub fn tail_mean(series: &[f64]) -> f64 {
    if series.is_empty() {
        return 0.0;
    }
    let tail = series.len().div_ceil(10);
    series[series.len() - tail..].iter().sum::<f64>() / tail as f64
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub metrics: RunMetrics,
    /// Full slot trace; empty unless requested.
    pub records: Vec<SlotRecord>,
    /// Per slot, whether the selection involved exploration.
    pub explored: Vec<bool>,
    /// Q-tables at the end of the run.
    pub q_tables: Vec<QTable>,
}

/// Drives `policy` for `game.num_slots()` slots: observe, select, evaluate,
/// learn, advance.
pub fn simulate(
    game: &GameConfig,
    timing: &TimingConfig,
    policy: &mut dyn Policy,
    accounting: Accounting,
    keep_trace: bool,
) -> RunOutput {
    let n = game.num_users();
    let slots = game.num_slots();
    let mut outcomes: Vec<u8> = Vec::with_capacity(slots * n);
    let mut explored = Vec::with_capacity(slots);
    let mut records = Vec::new();
    let mut state: State = initial_state(timing, game);
    for slot in 0..slots {
        let selection = policy.select(&state);
        let record = evaluate_slot(slot, &selection.action, timing, game);
        let next = next_state(&record);
        policy.observe(&state, &record, &next);
        outcomes.extend_from_slice(&record.per_user_reward);
        explored.push(selection.explored);
        if keep_trace {
            records.push(record);
        }
        state = next;
    }
    let counts = match accounting {
        Accounting::System => window_counts(&outcomes, game.window()),
        Accounting::PerUser => per_user_window_counts(&outcomes, n, game.window()),
    };
    let per_window = match accounting {
        Accounting::System => game.window(),
        Accounting::PerUser => game.window() * n,
    };
    RunOutput {
        metrics: RunMetrics::from_counts(counts, per_window),
        records,
        explored,
        q_tables: policy.q_tables().into_iter().cloned().collect(),
    }
}

/// One replication with its full trace.
pub fn run_single(cfg: &ExperimentConfig, run_index: usize) -> RunOutput {
    let mut policy = make_policy(cfg, run_seed(cfg, run_index));
    simulate(&cfg.game, &cfg.timing, policy.as_mut(), cfg.accounting, true)
}

fn run_metrics(cfg: &ExperimentConfig, run_index: usize) -> RunMetrics {
    let mut policy = make_policy(cfg, run_seed(cfg, run_index));
    simulate(&cfg.game, &cfg.timing, policy.as_mut(), cfg.accounting, false).metrics
}

/// Successes per tumbling window of `window` packets; a trailing partial window is dropped.
pub fn window_counts(outcomes: &[u8], window: usize) -> Vec<usize> {
    assert!(window >= 1, "window must be >= 1");
    outcomes
        .chunks_exact(window)
        .map(|w| w.iter().map(|&r| r as usize).sum())
        .collect()
}

fn per_user_window_counts(outcomes: &[u8], num_users: usize, window: usize) -> Vec<usize> {
    let mut total: Vec<usize> = Vec::new();
    for user in 0..num_users {
        let own: Vec<u8> = outcomes.iter().skip(user).step_by(num_users).copied().collect();
        let counts = window_counts(&own, window);
        if total.is_empty() {
            total = counts;
        } else {
            total.iter_mut().zip(counts).for_each(|(t, c)| *t += c);
        }
    }
    total
}

/// Normalized-rate series of a trace under system-wide packet accounting.
pub fn normalized_rate(records: &[SlotRecord], window: usize, num_users: usize) -> Vec<f64> {
    assert!(window >= 1, "window must be >= 1");
    let outcomes: Vec<u8> = records
        .iter()
        .flat_map(|r| {
            debug_assert_eq!(r.per_user_reward.len(), num_users);
            r.per_user_reward.iter().copied()
        })
        .collect();
    window_counts(&outcomes, window)
        .into_iter()
        .map(|c| c as f64 / window as f64)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult {
    pub algorithm: Algorithm,
    /// Per-window mean of rho across runs.
    pub mean: Vec<f64>,
    /// Per-window standard error of the mean (0 for a single run).
    pub stderr: Vec<f64>,
    /// Run-level metrics in run-index order.
    pub runs: Vec<RunMetrics>,
    pub final_mean: f64,
    pub final_stderr: f64,
}

/// Runs every replication (in parallel) and reduces in run-index order.
pub fn run_batch(cfg: &ExperimentConfig) -> BatchResult {
    let runs: Vec<RunMetrics> = (0..cfg.num_runs)
        .into_par_iter()
        .map(|i| run_metrics(cfg, i))
        .collect();
    let windows = runs[0].rho_series.len();
    let (mean, stderr): (Vec<f64>, Vec<f64>) = (0..windows)
        .map(|w| mean_stderr(runs.iter().map(|r| r.rho_series[w])))
        .unzip();
    let (final_mean, final_stderr) = mean_stderr(runs.iter().map(|r| r.final_rho));
    BatchResult {
        algorithm: cfg.algorithm,
        mean,
        stderr,
        runs,
        final_mean,
        final_stderr,
    }
}

/// Sample mean and standard error (n - 1 denominator).
pub fn mean_stderr(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = values.clone().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}
