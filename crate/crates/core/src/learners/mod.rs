//! Channel-selection policies and the tabular machinery they share.

mod cmaa;
mod iql;
mod qtable;
mod sensing;

pub use cmaa::{CmaaTeam, ExplorationMode};
pub use iql::{IndependentLearner, IqlTeam, OwnState};
pub use qtable::{argmax_random_ties, QTable};
pub use sensing::{sensing_select, SensingBaseline};

use crate::domain::{JointAction, State};
use crate::jammer::SlotRecord;

/// A selected joint action and whether any part of it came from exploration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub action: JointAction,
    pub explored: bool,
}

/// A team-level policy driven slot by slot by the harness.
pub trait Policy {
    fn select(&mut self, state: &State) -> Selection;

    /// Feedback after the slot: `record` holds the executed action and rewards.
    fn observe(&mut self, state: &State, record: &SlotRecord, next: &State);

    /// Per-user Q-tables, empty for non-learning policies.
    fn q_tables(&self) -> Vec<&QTable>;
}
