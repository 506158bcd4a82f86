// Sweep jammer timeline: where the jammer sits over the first few slots,
// which intervals overlap each transmission window, and what the users
// sense at the end of it.

use antijam::jammer::{jam_intervals_in, jammer_channel_at, transmission_window};
use antijam::{SensedJam, TimingConfig};

fn show(jam: SensedJam) -> String {
    match jam {
        SensedJam::Absent => "none".into(),
        SensedJam::Channel(c) => format!("ch{c}"),
    }
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let timing = TimingConfig::defaults(5);
    println!(
        "slot {} ms, dwell {} ms, sweep period {} ms",
        timing.slot_length(),
        timing.t_dwell(),
        timing.sweep_period()
    );
    for slot in 0..6 {
        let (start, end) = transmission_window(slot, &timing);
        let pieces: Vec<String> = jam_intervals_in(start, end, &timing)
            .iter()
            .map(|iv| format!("ch{} [{:.2}, {:.2})", iv.channel, iv.start_ms, iv.end_ms))
            .collect();
        println!(
            "slot {slot}: tx [{start:.2}, {end:.2})  jam {}  sensed {}",
            pieces.join(" + "),
            show(jammer_channel_at(end, &timing))
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
