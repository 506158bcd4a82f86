// Learned CMAA values for one state, and the full table snapshot as CSV
// on stdout when run with `--csv`.

use std::io;

use antijam::export::write_qtables;
use antijam::harness::{run_single, Algorithm, ExperimentConfig};
use antijam::jammer::next_state;
use antijam::JointAction;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig::defaults(Algorithm::Cmaa, 5).with_runs(1);
    let out = run_single(&cfg, 0);
    if std::env::args().any(|a| a == "--csv") {
        write_qtables(io::stdout().lock(), &out.q_tables)?;
        return Ok(());
    }
    let state = next_state(out.records.last().expect("non-empty run"));
    let s = state.to_index(&cfg.game);
    let mut ranked: Vec<(usize, f64)> = (0..cfg.game.num_joint_actions())
        .map(|a| (a, out.q_tables.iter().map(|t| t.get(s, a)).sum()))
        .collect();
    ranked.sort_by(|x, y| y.1.total_cmp(&x.1));
    let sensed = state.jam.channel().map_or("none".to_string(), |c| c.to_string());
    println!("state {s} (prev {}, sensed {sensed}), per-user bound {:.2}", state.prev_action, cfg.game.q_bound());
    for (a, q) in ranked.iter().take(5) {
        println!("  {} Q-sum {q:.3}", JointAction::from_index(*a, &cfg.game)?);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
