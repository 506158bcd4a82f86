// One CMAA replication with the default parameters: the normalized rate
// climbs from roughly random selection towards the jammer-avoiding
// schedule.

use antijam::harness::{run_single, Algorithm, ExperimentConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig::defaults(Algorithm::Cmaa, 7).with_runs(1);
    let out = run_single(&cfg, 0);
    let rho = &out.metrics.rho_series;
    for k in (0..rho.len()).step_by(100) {
        let chunk = &rho[k..(k + 100).min(rho.len())];
        let avg = chunk.iter().sum::<f64>() / chunk.len() as f64;
        println!("windows {k:4}..{:4}  rho {avg:.3}", k + chunk.len());
    }
    let explored = out.explored.iter().filter(|&&e| e).count();
    println!("final rho {:.4}, {explored} exploring slots", out.metrics.final_rho);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
