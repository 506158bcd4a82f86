//! Deterministic seed derivation for replications and per-agent streams.
//!
//! `split(parent, index)` mixes a child index into a parent seed with the
//! SplitMix64 finalizer:
//!
//! ```text
//! mix64(x) = let x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9;
//!            let x = (x ^ (x >> 27)) * 0x94D049BB133111EB;
//!            x ^ (x >> 31)                       (wrapping u64 arithmetic)
//! split(parent, index) = mix64(parent ^ mix64(index + 0x9E3779B97F4A7C15))
//! ```
//!
//! A run seed is `split(master_seed, run_index)`; stream `k` of a run is
//! seeded with `split(run_seed, k)` and expanded by ChaCha8
//! (`rand_chacha::ChaCha8Rng::seed_from_u64`).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stream id of the team coordination stream.
pub const TEAM_STREAM: u64 = 0;

/// Stream id for user `n` (zero-based) private streams.
pub fn user_stream(user: usize) -> u64 {
    1 + user as u64
}

pub fn mix64(mut x: u64) -> u64 {
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

pub fn split(parent: u64, index: u64) -> u64 {
    mix64(parent ^ mix64(index.wrapping_add(GOLDEN_GAMMA)))
}

pub fn stream(run_seed: u64, stream_id: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(split(run_seed, stream_id))
}
