//! Independent Q-learning baseline. Each user sees only its own previous
//! channel and the sensed jammer channel, picks among its own `M` channels
//! and bootstraps with the max over its own actions. Other users are part
//! of the environment.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::qtable::{argmax_random_ties, QTable};
use super::{Policy, Selection};
use crate::domain::{ChannelId, GameConfig, JointAction, SensedJam, State};
use crate::jammer::SlotRecord;
use crate::seed;

/// Local observation of one user.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OwnState {
    pub prev_channel: ChannelId,
    pub jam: SensedJam,
}

impl OwnState {
    pub fn new(prev_channel: ChannelId, jam: SensedJam) -> Self {
        OwnState { prev_channel, jam }
    }

    /// `(prev - 1) * (M + 1) + jam code`
    pub fn to_index(self, num_channels: usize) -> usize {
        self.prev_channel.offset() * (num_channels + 1) + self.jam.code()
    }

    /// User `user`'s view of a joint state.
    pub fn of_user(state: &State, user: usize) -> Self {
        OwnState::new(state.prev_action.channel(user), state.jam)
    }
}

#[derive(Debug, Clone)]
pub struct IndependentLearner {
    q: QTable,
    rng: ChaCha8Rng,
    num_channels: usize,
    learning_rate: f64,
    discount: f64,
}

impl IndependentLearner {
    pub fn new(cfg: &GameConfig, rng: ChaCha8Rng) -> Self {
        let m = cfg.num_channels();
        IndependentLearner {
            q: QTable::zeros(m * (m + 1), m),
            rng,
            num_channels: m,
            learning_rate: cfg.learning_rate(),
            discount: cfg.discount(),
        }
    }

    pub fn table(&self) -> &QTable {
        &self.q
    }

    pub fn table_mut(&mut self) -> &mut QTable {
        &mut self.q
    }

    /// Epsilon-greedy over the learner's own channels. Returns the channel
    /// and whether it came from exploration.
    pub fn select(&mut self, own: OwnState, epsilon: f64) -> (ChannelId, bool) {
        if self.rng.random::<f64>() < epsilon {
            let c = self.rng.random_range(0..self.num_channels);
            (ChannelId::from_offset(c), true)
        } else {
            let row = self.q.row(own.to_index(self.num_channels));
            let c = argmax_random_ties(row, &mut self.rng);
            (ChannelId::from_offset(c), false)
        }
    }

    /// `Q(s,a) <- (1-λ) Q(s,a) + λ (r + γ max_a' Q(s',a'))`
    pub fn update(&mut self, own: OwnState, action: ChannelId, reward: u8, own_next: OwnState) {
        let m = self.num_channels;
        let best = self
            .q
            .row(own_next.to_index(m))
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        let target = reward as f64 + self.discount * best;
        self.q.blend(own.to_index(m), action.offset(), self.learning_rate, target);
    }
}

/// N independent learners driven side by side.
#[derive(Debug, Clone)]
pub struct IqlTeam {
    cfg: GameConfig,
    learners: Vec<IndependentLearner>,
    epsilon: f64,
}

impl IqlTeam {
    /// User `n` draws from stream `seed::user_stream(n)` of `run_seed`.
    pub fn new(cfg: &GameConfig, run_seed: u64) -> Self {
        let learners = (0..cfg.num_users())
            .map(|n| IndependentLearner::new(cfg, seed::stream(run_seed, seed::user_stream(n))))
            .collect();
        Self::from_learners(cfg, learners)
    }

    pub fn from_learners(cfg: &GameConfig, learners: Vec<IndependentLearner>) -> Self {
        assert_eq!(learners.len(), cfg.num_users());
        IqlTeam {
            cfg: cfg.clone(),
            learners,
            epsilon: cfg.exploration(),
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        assert!((0.0..=1.0).contains(&epsilon), "epsilon {epsilon} not in [0, 1]");
        self.epsilon = epsilon;
        self
    }

    pub fn learner(&self, user: usize) -> &IndependentLearner {
        &self.learners[user]
    }

    pub fn learner_mut(&mut self, user: usize) -> &mut IndependentLearner {
        &mut self.learners[user]
    }
}

impl Policy for IqlTeam {
    fn select(&mut self, state: &State) -> Selection {
        let mut explored = false;
        let channels = self
            .learners
            .iter_mut()
            .enumerate()
            .map(|(n, l)| {
                let (c, e) = l.select(OwnState::of_user(state, n), self.epsilon);
                explored |= e;
                c
            })
            .collect();
        Selection {
            action: JointAction::new(channels, &self.cfg).expect("channels in range"),
            explored,
        }
    }

    fn observe(&mut self, state: &State, record: &SlotRecord, next: &State) {
        for (n, l) in self.learners.iter_mut().enumerate() {
            l.update(
                OwnState::of_user(state, n),
                record.actions.channel(n),
                record.per_user_reward[n],
                OwnState::of_user(next, n),
            );
        }
    }

    fn q_tables(&self) -> Vec<&QTable> {
        self.learners.iter().map(|l| &l.q).collect()
    }
}
