// Time-frequency trace of the first and last slots of a CMAA run, written
// as CSV (entity, channel, start_ms, end_ms, reward) next to a printed
// summary. The output directory is the first argument, or the system
// temp directory.

use std::fs::File;
use std::path::PathBuf;

use antijam::export::write_trace;
use antijam::harness::{run_single, Algorithm, ExperimentConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let cfg = ExperimentConfig::defaults(Algorithm::Cmaa, 3).with_runs(1);
    let out = run_single(&cfg, 0);
    let n = out.records.len();
    for (name, range) in [("initial", 0..20), ("converged", n - 20..n)] {
        let path = dir.join(format!("trace_{name}.csv"));
        write_trace(File::create(&path)?, &out.records[range.clone()], &cfg.timing)?;
        let hits = out.records[range].iter().map(|r| r.global_reward).sum::<usize>();
        println!("{name}: {hits}/40 packets delivered -> {}", path.display());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
