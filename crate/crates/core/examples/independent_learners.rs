// Independent Q-learning: each user learns over its own channel and the
// sensed jammer. Alone it matches the coordinated team; with a second
// user the learners have no way to agree on who moves where.

use antijam::harness::{run_batch, Algorithm, ExperimentConfig};
use antijam::{GameConfig, TimingConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for users in [1, 2] {
        let game = GameConfig::new(users, 5, 0.8, 0.6, 0.2, 10_000, 20)?;
        for algo in Algorithm::ALL {
            let cfg = ExperimentConfig::new(game.clone(), TimingConfig::defaults(5), algo, 10, 11)?;
            let batch = run_batch(&cfg);
            println!("N={users} {:8} final rho {:.4}", algo.name(), batch.final_mean);
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
