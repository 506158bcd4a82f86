//! Collaborative anti-jamming channel selection against a sweep jammer.
//!
//! `N` users share `M` channels with one jammer that sweeps across them.
//! Each slot every user picks a channel; a transmission succeeds when its
//! channel stays clear of the jammer for the whole transmission and no
//! other user picked it. The crate provides
//!
//! * [`domain`]: channels, joint actions, states and their dense indices,
//! * [`jammer`]: the sweep timeline, slot evaluation and state transitions,
//! * [`learners`]: the collaborative joint-action Q-learner ([`learners::CmaaTeam`]),
//!   independent Q-learning and a sensing-based baseline,
//! * [`harness`]: replicated experiments and the normalized rate,
//! * [`export`]: CSV writers for metrics, time-frequency traces and Q-tables,
//! * [`config`] and [`cli`]: the flat config format and the command-line front end.

pub mod cli;
pub mod config;
pub mod domain;
pub mod export;
pub mod harness;
pub mod jammer;
pub mod learners;
pub mod seed;

pub use domain::{ChannelId, ConfigError, GameConfig, JointAction, SensedJam, State};
pub use harness::{run_batch, run_single, Algorithm, BatchResult, ExperimentConfig, RunMetrics};
pub use jammer::{evaluate_slot, SlotRecord, TimingConfig};
