//! Sweep jammer timeline, slotted transmission schedule and per-slot
//! reward evaluation.
//!
//! A slot is `t_rx` of transmission followed by `t_overhead` of sensing,
//! acknowledgement and learning. Slot 0 starts at t = 0. The jammer is
//! silent before `jam_start` and then visits `sweep_order` cyclically,
//! staying `t_dwell` on each channel. Because the dwell time is not a
//! multiple of the slot length, the jammer can switch in the middle of a
//! transmission; a packet only succeeds when its channel is clear for the
//! whole transmission window.
//!
//! Times are given in milliseconds but all boundary arithmetic runs on
//! integer nanosecond ticks so that coincident boundaries compare exactly.

use crate::domain::{ChannelId, ConfigError, GameConfig, JointAction, SensedJam, State};

const TICKS_PER_MS: f64 = 1e6;

fn to_ticks(ms: f64) -> u64 {
    (ms * TICKS_PER_MS).round() as u64
}

fn to_ms(ticks: u64) -> f64 {
    ticks as f64 / TICKS_PER_MS
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimingConfig {
    t_rx: f64,
    t_overhead: f64,
    t_dwell: f64,
    jam_start: f64,
    sweep_order: Vec<ChannelId>,
    rx_ticks: u64,
    slot_ticks: u64,
    dwell_ticks: u64,
    start_ticks: u64,
}

impl TimingConfig {
    /// `t_overhead` lumps the sensing, ACK and learning sub-slots together.
    pub fn new(
        t_rx: f64,
        t_overhead: f64,
        t_dwell: f64,
        jam_start: f64,
        sweep_order: Vec<ChannelId>,
    ) -> Result<Self, ConfigError> {
        check_duration("t_rx", t_rx)?;
        check_duration("t_overhead", t_overhead)?;
        check_duration("t_dwell", t_dwell)?;
        if !(jam_start.is_finite() && jam_start >= 0.0) {
            return Err(ConfigError::OutOfRange {
                key: "jam_start",
                value: jam_start.to_string(),
                expected: "a finite time >= 0 ms",
            });
        }
        let channels = sweep_order.len();
        let mut seen = vec![false; channels];
        for c in &sweep_order {
            match seen.get_mut(c.offset()) {
                Some(flag) if !*flag => *flag = true,
                _ => {
                    return Err(ConfigError::BadSweepOrder {
                        order: sweep_order.iter().map(|c| c.get()).collect(),
                        channels,
                    })
                }
            }
        }
        if channels == 0 {
            return Err(ConfigError::BadSweepOrder {
                order: Vec::new(),
                channels,
            });
        }
        let rx_ticks = to_ticks(t_rx);
        Ok(TimingConfig {
            t_rx,
            t_overhead,
            t_dwell,
            jam_start,
            sweep_order,
            rx_ticks,
            slot_ticks: rx_ticks + to_ticks(t_overhead),
            dwell_ticks: to_ticks(t_dwell),
            start_ticks: to_ticks(jam_start),
        })
    }

    /// t_rx = 0.98 ms, overhead 0.2 ms, dwell 2.28 ms, jamming from 0.2 ms,
    /// ascending sweep over `num_channels` channels.
    pub fn defaults(num_channels: usize) -> Self {
        TimingConfig::new(0.98, 0.2, 2.28, 0.2, ascending_sweep(num_channels))
            .expect("defaults are valid")
    }

    /// Same timing with a different sweep order.
    pub fn with_sweep_order(&self, sweep_order: Vec<ChannelId>) -> Result<Self, ConfigError> {
        TimingConfig::new(
            self.t_rx,
            self.t_overhead,
            self.t_dwell,
            self.jam_start,
            sweep_order,
        )
    }

    pub fn t_rx(&self) -> f64 {
        self.t_rx
    }

    pub fn t_overhead(&self) -> f64 {
        self.t_overhead
    }

    pub fn t_dwell(&self) -> f64 {
        self.t_dwell
    }

    pub fn jam_start(&self) -> f64 {
        self.jam_start
    }

    pub fn sweep_order(&self) -> &[ChannelId] {
        &self.sweep_order
    }

    pub fn num_jam_channels(&self) -> usize {
        self.sweep_order.len()
    }

    pub fn slot_length(&self) -> f64 {
        to_ms(self.slot_ticks)
    }

    /// Start of slot `k` in ms.
    pub fn slot_start(&self, slot_index: usize) -> f64 {
        to_ms(self.slot_start_ticks(slot_index))
    }

    /// Sweep period `C * t_dwell` in ms.
    pub fn sweep_period(&self) -> f64 {
        to_ms(self.dwell_ticks * self.sweep_order.len() as u64)
    }

    fn slot_start_ticks(&self, slot_index: usize) -> u64 {
        slot_index as u64 * self.slot_ticks
    }

    fn channel_for_dwell(&self, dwell_index: u64) -> ChannelId {
        self.sweep_order[(dwell_index % self.sweep_order.len() as u64) as usize]
    }

    fn channel_at_ticks(&self, t: u64) -> SensedJam {
        if t < self.start_ticks {
            SensedJam::Absent
        } else {
            SensedJam::Channel(self.channel_for_dwell((t - self.start_ticks) / self.dwell_ticks))
        }
    }

    fn intervals_ticks(&self, start: u64, end: u64) -> Vec<JamInterval> {
        let mut out = Vec::new();
        let mut t = start.max(self.start_ticks);
        while t < end {
            let dwell = (t - self.start_ticks) / self.dwell_ticks;
            let boundary = self.start_ticks + (dwell + 1) * self.dwell_ticks;
            let stop = boundary.min(end);
            out.push(JamInterval {
                channel: self.channel_for_dwell(dwell),
                start_ms: to_ms(t),
                end_ms: to_ms(stop),
            });
            t = stop;
        }
        out
    }
}

fn check_duration(key: &'static str, value: f64) -> Result<(), ConfigError> {
    if value.is_finite() && to_ticks(value) > 0 {
        Ok(())
    } else {
        Err(ConfigError::OutOfRange {
            key,
            value: value.to_string(),
            expected: "a finite duration > 0 ms (1 ns resolution)",
        })
    }
}

/// `1, 2, ..., C`
pub fn ascending_sweep(num_channels: usize) -> Vec<ChannelId> {
    (0..num_channels).map(ChannelId::from_offset).collect()
}

/// A maximal stretch of time during which the jammer sits on one channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JamInterval {
    pub channel: ChannelId,
    pub start_ms: f64,
    pub end_ms: f64,
}

/// Outcome of one transmission slot.
#[derive(Debug, Clone, PartialEq)]
pub struct SlotRecord {
    pub slot_index: usize,
    pub actions: JointAction,
    /// Jammer intervals overlapping the transmission window, in time order.
    pub jam_intervals: Vec<JamInterval>,
    pub per_user_reward: Vec<u8>,
    pub global_reward: usize,
    /// Jammer channel read at the start of the sensing sub-slot.
    pub sensed: SensedJam,
}

impl SlotRecord {
    pub fn successes(&self) -> usize {
        self.global_reward
    }
}

/// Jammer channel at time `t` (ms).
pub fn jammer_channel_at(t: f64, timing: &TimingConfig) -> SensedJam {
    timing.channel_at_ticks(to_ticks(t.max(0.0)))
}

/// Constant-channel jammer intervals restricted to `[window_start, window_end)`.
pub fn jam_intervals_in(window_start: f64, window_end: f64, timing: &TimingConfig) -> Vec<JamInterval> {
    timing.intervals_ticks(to_ticks(window_start.max(0.0)), to_ticks(window_end.max(0.0)))
}

/// Transmission window `[start, end)` of a slot, in ms.
pub fn transmission_window(slot_index: usize, timing: &TimingConfig) -> (f64, f64) {
    let start = timing.slot_start_ticks(slot_index);
    (to_ms(start), to_ms(start + timing.rx_ticks))
}

/// Per-user rewards for `actions`: user `n` scores 1 when no jammer
/// interval in the transmission window sits on its channel and no other
/// user picked the same channel.
pub fn evaluate_slot(
    slot_index: usize,
    actions: &JointAction,
    timing: &TimingConfig,
    cfg: &GameConfig,
) -> SlotRecord {
    debug_assert_eq!(actions.len(), cfg.num_users());
    let start = timing.slot_start_ticks(slot_index);
    let end = start + timing.rx_ticks;
    let jam_intervals = timing.intervals_ticks(start, end);
    let channels = actions.channels();
    let per_user_reward: Vec<u8> = channels
        .iter()
        .enumerate()
        .map(|(n, &c)| {
            let jammed = jam_intervals.iter().any(|iv| iv.channel == c);
            let collided = channels
                .iter()
                .enumerate()
                .any(|(m, &other)| m != n && other == c);
            u8::from(!jammed && !collided)
        })
        .collect();
    let global_reward = per_user_reward.iter().map(|&r| r as usize).sum();
    SlotRecord {
        slot_index,
        actions: actions.clone(),
        jam_intervals,
        per_user_reward,
        global_reward,
        sensed: timing.channel_at_ticks(end),
    }
}

pub fn next_state(record: &SlotRecord) -> State {
    State::new(record.actions.clone(), record.sensed)
}

/// The state observed before slot 0: every user on channel 1 and the
/// jammer as sensed at t = 0.
pub fn initial_state(timing: &TimingConfig, cfg: &GameConfig) -> State {
    State::new(
        JointAction::decode(0, cfg),
        timing.channel_at_ticks(0),
    )
}
