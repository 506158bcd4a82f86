//! Sensing-based ordered selection. Users cannot predict the sweep; they
//! only avoid the channel sensed at the end of the previous slot. User 1
//! announces first and every later user takes the lowest free channel
//! after hearing the announcements of the users before it.

use super::qtable::QTable;
use super::{Policy, Selection};
use crate::domain::{GameConfig, JointAction, SensedJam, State};
use crate::jammer::SlotRecord;

pub fn sensing_select(sensed: SensedJam, cfg: &GameConfig) -> JointAction {
    let jammed = sensed.channel();
    let mut taken = Vec::with_capacity(cfg.num_users());
    for _ in 0..cfg.num_users() {
        let free = cfg
            .channel_ids()
            .find(|c| Some(*c) != jammed && !taken.contains(c))
            .expect("N < M leaves a free channel for every user");
        taken.push(free);
    }
    JointAction::new(taken, cfg).expect("channels in range")
}

#[derive(Debug, Clone)]
pub struct SensingBaseline {
    cfg: GameConfig,
}

impl SensingBaseline {
    pub fn new(cfg: &GameConfig) -> Self {
        SensingBaseline { cfg: cfg.clone() }
    }
}

impl Policy for SensingBaseline {
    fn select(&mut self, state: &State) -> Selection {
        Selection {
            action: sensing_select(state.jam, &self.cfg),
            explored: false,
        }
    }

    fn observe(&mut self, _state: &State, _record: &SlotRecord, _next: &State) {}

    fn q_tables(&self) -> Vec<&QTable> {
        Vec::new()
    }
}
