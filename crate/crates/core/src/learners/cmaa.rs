//! Collaborative multi-agent anti-jamming learner.
//!
//! Every user keeps its own table `Q_n(s, a)` over joint states and joint
//! actions and learns from its own reward. Users share their tables, so
//! each one can evaluate the common-payoff table `Q(s, a) = sum_n Q_n(s, a)`;
//! both action selection and the bootstrap target use its joint argmax.
//! The shared random stream stands in for the broadcast channel: every
//! user reads the same draws, so all of them arrive at the same joint action.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::qtable::{argmax_random_ties, QTable};
use super::{Policy, Selection};
use crate::domain::{ChannelId, GameConfig, JointAction, State};
use crate::jammer::SlotRecord;

/// How exploration is decided within a team.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExplorationMode {
    /// One draw per slot; when it fires the whole profile is drawn uniformly from `A`.
    #[default]
    Joint,
    /// Each user independently replaces its greedy channel with a uniform one.
    PerUser,
}

#[derive(Debug, Clone)]
pub struct CmaaTeam {
    cfg: GameConfig,
    tables: Vec<QTable>,
    rng: ChaCha8Rng,
    epsilon: f64,
    mode: ExplorationMode,
}

impl CmaaTeam {
    pub fn new(cfg: &GameConfig, rng: ChaCha8Rng) -> Self {
        let tables = (0..cfg.num_users())
            .map(|_| QTable::zeros(cfg.num_states(), cfg.num_joint_actions()))
            .collect();
        CmaaTeam {
            cfg: cfg.clone(),
            tables,
            rng,
            epsilon: cfg.exploration(),
            mode: ExplorationMode::Joint,
        }
    }

    /// Overrides the exploration rate. Unlike the game config this accepts
    /// the closed interval, so 0 gives a purely greedy team.
    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        assert!((0.0..=1.0).contains(&epsilon), "epsilon {epsilon} not in [0, 1]");
        self.epsilon = epsilon;
        self
    }

    pub fn with_exploration_mode(mut self, mode: ExplorationMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn config(&self) -> &GameConfig {
        &self.cfg
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn table(&self, user: usize) -> &QTable {
        &self.tables[user]
    }

    pub fn table_mut(&mut self, user: usize) -> &mut QTable {
        &mut self.tables[user]
    }

    pub fn tables(&self) -> &[QTable] {
        &self.tables
    }

    pub fn rng(&self) -> &ChaCha8Rng {
        &self.rng
    }

    /// Common-payoff row `sum_n Q_n(s, .)`, one entry per joint action index.
    pub fn q_sum(&self, s: &State) -> Vec<f64> {
        self.q_sum_at(s.to_index(&self.cfg))
    }

    fn q_sum_at(&self, state: usize) -> Vec<f64> {
        let mut sum = self.tables[0].row(state).to_vec();
        for table in &self.tables[1..] {
            for (acc, v) in sum.iter_mut().zip(table.row(state)) {
                *acc += v;
            }
        }
        sum
    }

    fn argmax_at(&mut self, state: usize) -> usize {
        let sums = self.q_sum_at(state);
        argmax_random_ties(&sums, &mut self.rng)
    }

    /// A joint action maximizing the summed table at `s`.
    pub fn joint_argmax(&mut self, s: &State) -> JointAction {
        let idx = self.argmax_at(s.to_index(&self.cfg));
        JointAction::decode(idx, &self.cfg)
    }

    /// Epsilon-greedy joint selection.
    pub fn select(&mut self, s: &State) -> Selection {
        match self.mode {
            ExplorationMode::Joint => {
                if self.rng.random::<f64>() < self.epsilon {
                    let idx = self.rng.random_range(0..self.cfg.num_joint_actions());
                    Selection {
                        action: JointAction::decode(idx, &self.cfg),
                        explored: true,
                    }
                } else {
                    Selection {
                        action: self.joint_argmax(s),
                        explored: false,
                    }
                }
            }
            ExplorationMode::PerUser => {
                let m = self.cfg.num_channels();
                let picks: Vec<Option<ChannelId>> = (0..self.cfg.num_users())
                    .map(|_| {
                        if self.rng.random::<f64>() < self.epsilon {
                            Some(ChannelId::from_offset(self.rng.random_range(0..m)))
                        } else {
                            None
                        }
                    })
                    .collect();
                let explored = picks.iter().any(Option::is_some);
                let greedy = if picks.iter().any(Option::is_none) {
                    Some(self.joint_argmax(s))
                } else {
                    None
                };
                let channels = picks
                    .iter()
                    .enumerate()
                    .map(|(n, p)| p.unwrap_or_else(|| greedy.as_ref().unwrap().channel(n)))
                    .collect();
                Selection {
                    action: JointAction::new(channels, &self.cfg).expect("channels in range"),
                    explored,
                }
            }
        }
    }

    /// One learning step after executing `a` in `s`:
    /// `Q_n(s,a) <- (1-λ) Q_n(s,a) + λ (r_n + γ Q_n(s', a*))` with a single
    /// `a*` taken from the summed table at `s'` and shared by every user.
    pub fn update(&mut self, s: &State, a: &JointAction, rewards: &[u8], s_next: &State) {
        assert_eq!(rewards.len(), self.tables.len(), "one reward per user");
        let state = s.to_index(&self.cfg);
        let action = a.to_index(&self.cfg);
        let next = s_next.to_index(&self.cfg);
        let best = self.argmax_at(next);
        let (lr, discount) = (self.cfg.learning_rate(), self.cfg.discount());
        for (table, &r) in self.tables.iter_mut().zip(rewards) {
            let target = r as f64 + discount * table.get(next, best);
            table.blend(state, action, lr, target);
        }
    }
}

impl Policy for CmaaTeam {
    fn select(&mut self, state: &State) -> Selection {
        CmaaTeam::select(self, state)
    }

    fn observe(&mut self, state: &State, record: &SlotRecord, next: &State) {
        self.update(state, &record.actions, &record.per_user_reward, next);
    }

    fn q_tables(&self) -> Vec<&QTable> {
        self.tables.iter().collect()
    }
}
