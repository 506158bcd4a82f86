//! Value types for the anti-jamming Markov game: channels, joint action
//! profiles, states and the game parameters, plus the dense index
//! arithmetic used to address Q-tables.
//!
//! Index layout is row-major with user 1 as the slowest-varying digit.
//! For states the jam code is the fastest digit, with `Absent` encoded as
//! 0 and `Channel(c)` as `c`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("`{key}` = {value} is out of range: expected {expected}")]
    OutOfRange {
        key: &'static str,
        value: String,
        expected: &'static str,
    },
    #[error("num_users ({users}) must be strictly less than num_channels ({channels}) (N < M)")]
    TooManyUsers { users: usize, channels: usize },
    #[error("joint state space M^N * (M + 1) is too large to tabulate for N = {users}, M = {channels}")]
    StateSpaceTooLarge { users: usize, channels: usize },
    #[error("channel {channel} is outside 1..={channels}")]
    ChannelOutOfRange { channel: usize, channels: usize },
    #[error("joint action has {got} entries, expected {expected}")]
    WrongArity { got: usize, expected: usize },
    #[error("index {index} is outside 0..{size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("sweep_order must be a permutation of 1..={channels}, got {order:?}")]
    BadSweepOrder { order: Vec<usize>, channels: usize },
    #[error("window ({window} packets) exceeds the {packets} packets of a run")]
    WindowTooLarge { window: usize, packets: usize },
}

/// Upper bound on the number of tabulated joint states.
pub const MAX_STATE_SPACE: usize = 1 << 24;

/// A channel number in `1..=M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChannelId(u16);

impl ChannelId {
    pub fn new(id: usize, num_channels: usize) -> Result<Self, ConfigError> {
        if id == 0 || id > num_channels || id > u16::MAX as usize {
            return Err(ConfigError::ChannelOutOfRange {
                channel: id,
                channels: num_channels,
            });
        }
        Ok(ChannelId(id as u16))
    }

    /// Channel from a zero-based offset, `offset + 1`.
    pub(crate) fn from_offset(offset: usize) -> Self {
        ChannelId(offset as u16 + 1)
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn offset(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for ChannelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The jammer channel as seen by the sensing sub-slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SensedJam {
    /// The jammer has not started yet.
    Absent,
    Channel(ChannelId),
}

impl SensedJam {
    /// Jam code used in state indexing: 0 for `Absent`, `c` for `Channel(c)`.
    pub fn code(self) -> usize {
        match self {
            SensedJam::Absent => 0,
            SensedJam::Channel(c) => c.get(),
        }
    }

    pub fn from_code(code: usize, num_channels: usize) -> Result<Self, ConfigError> {
        match code {
            0 => Ok(SensedJam::Absent),
            c => ChannelId::new(c, num_channels).map(SensedJam::Channel),
        }
    }

    pub fn channel(self) -> Option<ChannelId> {
        match self {
            SensedJam::Absent => None,
            SensedJam::Channel(c) => Some(c),
        }
    }
}

/// Ordered channel choices of all users for one slot; entry `n` belongs to user `n + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JointAction(Vec<ChannelId>);

impl JointAction {
    pub fn new(channels: Vec<ChannelId>, cfg: &GameConfig) -> Result<Self, ConfigError> {
        if channels.len() != cfg.num_users() {
            return Err(ConfigError::WrongArity {
                got: channels.len(),
                expected: cfg.num_users(),
            });
        }
        if let Some(bad) = channels.iter().find(|c| c.get() > cfg.num_channels()) {
            return Err(ConfigError::ChannelOutOfRange {
                channel: bad.get(),
                channels: cfg.num_channels(),
            });
        }
        Ok(JointAction(channels))
    }

    /// Builds a profile from plain channel numbers, e.g. `&[3, 4]`.
    pub fn from_channels(channels: &[usize], cfg: &GameConfig) -> Result<Self, ConfigError> {
        let ids = channels
            .iter()
            .map(|&c| ChannelId::new(c, cfg.num_channels()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ids, cfg)
    }

    pub fn channels(&self) -> &[ChannelId] {
        &self.0
    }

    pub fn channel(&self, user: usize) -> ChannelId {
        self.0[user]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_index(&self, cfg: &GameConfig) -> usize {
        let m = cfg.num_channels();
        self.0.iter().fold(0, |acc, c| acc * m + c.offset())
    }

    pub fn from_index(index: usize, cfg: &GameConfig) -> Result<Self, ConfigError> {
        let size = cfg.num_joint_actions();
        if index >= size {
            return Err(ConfigError::IndexOutOfRange { index, size });
        }
        Ok(Self::decode(index, cfg))
    }

    /// Decodes an index already known to be in range.
    pub(crate) fn decode(mut index: usize, cfg: &GameConfig) -> Self {
        let m = cfg.num_channels();
        let mut channels = vec![ChannelId(1); cfg.num_users()];
        for slot in channels.iter_mut().rev() {
            *slot = ChannelId::from_offset(index % m);
            index /= m;
        }
        JointAction(channels)
    }
}

impl fmt::Display for JointAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Markov-game state: the previous slot's joint action and the sensed jammer channel.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct State {
    pub prev_action: JointAction,
    pub jam: SensedJam,
}

impl State {
    pub fn new(prev_action: JointAction, jam: SensedJam) -> Self {
        State { prev_action, jam }
    }

    pub fn to_index(&self, cfg: &GameConfig) -> usize {
        self.prev_action.to_index(cfg) * (cfg.num_channels() + 1) + self.jam.code()
    }

    pub fn from_index(index: usize, cfg: &GameConfig) -> Result<Self, ConfigError> {
        let size = cfg.num_states();
        if index >= size {
            return Err(ConfigError::IndexOutOfRange { index, size });
        }
        let codes = cfg.num_channels() + 1;
        let jam = SensedJam::from_code(index % codes, cfg.num_channels())?;
        Ok(State {
            prev_action: JointAction::decode(index / codes, cfg),
            jam,
        })
    }
}

/// Game parameters. Construct with [`GameConfig::new`] or [`GameConfig::defaults`].
#[derive(Debug, Clone, PartialEq)]
pub struct GameConfig {
    num_users: usize,
    num_channels: usize,
    learning_rate: f64,
    discount: f64,
    exploration: f64,
    num_slots: usize,
    window: usize,
}

impl GameConfig {
    pub fn new(
        num_users: usize,
        num_channels: usize,
        learning_rate: f64,
        discount: f64,
        exploration: f64,
        num_slots: usize,
        window: usize,
    ) -> Result<Self, ConfigError> {
        if num_users == 0 {
            return Err(out_of_range("num_users", num_users, "an integer >= 1"));
        }
        if num_users >= num_channels {
            return Err(ConfigError::TooManyUsers {
                users: num_users,
                channels: num_channels,
            });
        }
        if num_channels > u16::MAX as usize {
            return Err(out_of_range("num_channels", num_channels, "at most 65535"));
        }
        let joint = (num_channels as u128).checked_pow(num_users as u32);
        match joint {
            Some(j) if j * (num_channels as u128 + 1) <= MAX_STATE_SPACE as u128 => {}
            _ => {
                return Err(ConfigError::StateSpaceTooLarge {
                    users: num_users,
                    channels: num_channels,
                })
            }
        }
        if !(learning_rate > 0.0 && learning_rate <= 1.0) {
            return Err(out_of_range("learning_rate", learning_rate, "a value in (0, 1]"));
        }
        if !(0.0..1.0).contains(&discount) {
            return Err(out_of_range("discount", discount, "a value in [0, 1)"));
        }
        if !(exploration > 0.0 && exploration < 1.0) {
            return Err(out_of_range("epsilon", exploration, "a value in (0, 1)"));
        }
        if num_slots == 0 {
            return Err(out_of_range("num_slots", num_slots, "an integer >= 1"));
        }
        if window == 0 {
            return Err(out_of_range("window", window, "an integer >= 1"));
        }
        Ok(GameConfig {
            num_users,
            num_channels,
            learning_rate,
            discount,
            exploration,
            num_slots,
            window,
        })
    }

    /// N = 2, M = 5, λ = 0.8, γ = 0.6, ε = 0.2, K = 10000, PN_0 = 20.
    pub fn defaults() -> Self {
        GameConfig::new(2, 5, 0.8, 0.6, 0.2, 10_000, 20).expect("defaults are valid")
    }

    pub fn num_users(&self) -> usize {
        self.num_users
    }

    pub fn num_channels(&self) -> usize {
        self.num_channels
    }

    pub fn learning_rate(&self) -> f64 {
        self.learning_rate
    }

    pub fn discount(&self) -> f64 {
        self.discount
    }

    pub fn exploration(&self) -> f64 {
        self.exploration
    }

    pub fn num_slots(&self) -> usize {
        self.num_slots
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// `M^N`
    pub fn num_joint_actions(&self) -> usize {
        self.num_channels.pow(self.num_users as u32)
    }

    /// `M^N * (M + 1)`
    pub fn num_states(&self) -> usize {
        self.num_joint_actions() * (self.num_channels + 1)
    }

    /// Largest value any Q entry can reach with {0,1} rewards, `1 / (1 - γ)`.
    pub fn q_bound(&self) -> f64 {
        1.0 / (1.0 - self.discount)
    }

    pub fn channel_ids(&self) -> impl Iterator<Item = ChannelId> {
        (0..self.num_channels).map(ChannelId::from_offset)
    }
}

fn out_of_range(key: &'static str, value: impl fmt::Display, expected: &'static str) -> ConfigError {
    ConfigError::OutOfRange {
        key,
        value: value.to_string(),
        expected,
    }
}
