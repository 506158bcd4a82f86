// CMAA against independent Q-learning and the sensing baseline on paired
// seeds. Pass a run count as the first argument (default 20).

use antijam::harness::{run_batch, Algorithm, ExperimentConfig};

pub fn compare(runs: usize) -> Vec<(Algorithm, f64, f64)> {
    Algorithm::ALL
        .iter()
        .map(|&algo| {
            let batch = run_batch(&ExperimentConfig::defaults(algo, 2024).with_runs(runs));
            (algo, batch.final_mean, batch.final_stderr)
        })
        .collect()
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let runs = match std::env::args().nth(1) {
        Some(arg) => arg.parse()?,
        None => 20,
    };
    for (algo, mean, se) in compare(runs) {
        println!("{:8} final rho {mean:.4} ± {se:.4} ({runs} runs)", algo.name());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
