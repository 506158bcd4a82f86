// Per-user rewards for a handful of joint actions in one slot: jammed
// channels, collisions and clean picks.

use antijam::{evaluate_slot, GameConfig, JointAction, TimingConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = GameConfig::defaults();
    let timing = TimingConfig::defaults(5);
    let slot = 2;
    for chans in [[2, 4], [1, 2], [3, 3], [4, 5]] {
        let a = JointAction::from_channels(&chans, &cfg)?;
        let rec = evaluate_slot(slot, &a, &timing, &cfg);
        let jammed: Vec<String> = rec.jam_intervals.iter().map(|iv| iv.channel.to_string()).collect();
        println!(
            "slot {slot} action {a}: jammed [{}] rewards {:?} total {}",
            jammed.join(","),
            rec.per_user_reward,
            rec.global_reward
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
