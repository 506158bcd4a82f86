// Reproducible randomness: run seeds derive from the master seed, and each
// run owns one stream for the team and one per user.

use antijam::harness::{run_seed, Algorithm, ExperimentConfig};
use antijam::seed::{stream, user_stream, TEAM_STREAM};
use rand::Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cmaa = ExperimentConfig::defaults(Algorithm::Cmaa, 2024);
    let iql = cmaa.clone().with_algorithm(Algorithm::Iql);
    for run in 0..3 {
        let seed = run_seed(&cmaa, run);
        assert_eq!(seed, run_seed(&iql, run), "paired seeds");
        let team: u32 = stream(seed, TEAM_STREAM).random();
        let user1: u32 = stream(seed, user_stream(0)).random();
        println!("run {run}: seed {seed:#018x} team draw {team:#010x} user1 draw {user1:#010x}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
