// Parsing an experiment file and running what it describes.

use antijam::config::parse_config;
use antijam::harness::run_batch;

const EXPERIMENT: &str = "
# three users, six channels, reverse sweep
num_users = 3
num_channels = 6
sweep_order = 6,5,4,3,2,1
num_slots = 4000
runs = 8
seed = 42
algorithm = cmaa
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cli = parse_config(EXPERIMENT)?;
    for algo in cli.algorithms.algorithms() {
        let batch = run_batch(&cli.experiment.clone().with_algorithm(algo));
        println!("{}: {} windows, final rho {:.4}", algo.name(), batch.mean.len(), batch.final_mean);
    }
    match parse_config("num_users = 6\nnum_channels = 6\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
