use std::fs;
use std::path::Path;
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_antijam");

fn antijam(args: &[&str]) -> std::process::Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn listing(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .map(|rd| rd.map(|e| e.unwrap().file_name().into_string().unwrap()).collect())
        .unwrap_or_default();
    names.sort();
    names
}

#[test]
fn repeated_invocations_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("short.cfg");
    fs::write(&cfg, "num_slots = 400\n").unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        let out = antijam(&[
            "--config", cfg.to_str().unwrap(),
            "--algo", "sensing", "--runs", "1", "--seed", "7",
            "--out", dir.to_str().unwrap(), "--trace", "first-run",
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(listing(&a), vec!["metrics_sensing.csv", "trace_sensing_run0.csv"]);
    for name in listing(&a) {
        assert_eq!(fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap());
    }
}

#[test]
fn all_algorithms_with_dumps() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("exp.cfg");
    fs::write(&cfg, "# quick\nnum_slots = 600\nruns = 3\n").unwrap();
    let out_dir = tmp.path().join("out");
    let out = antijam(&[
        "--config", cfg.to_str().unwrap(), "--algo", "all",
        "--out", out_dir.to_str().unwrap(), "--dump-q", "--trace", "all",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let names = listing(&out_dir);
    for algo in ["cmaa", "iql", "sensing"] {
        assert!(names.contains(&format!("metrics_{algo}.csv")));
        for k in 0..3 {
            assert!(names.contains(&format!("trace_{algo}_run{k}.csv")));
        }
    }
    assert!(names.contains(&"qtable_cmaa.csv".to_string()));
    assert!(names.contains(&"qtable_iql.csv".to_string()));
    assert!(!names.contains(&"qtable_sensing.csv".to_string()));

    let metrics = fs::read_to_string(out_dir.join("metrics_cmaa.csv")).unwrap();
    let mut lines = metrics.lines();
    assert_eq!(lines.next(), Some("algorithm,run,window_index,rho,stderr"));
    // 600 slots * 2 packets / 20 = 60 windows, mean rows then 3 * 60 run rows.
    assert_eq!(metrics.lines().count(), 1 + 60 + 180);
    let first = lines.next().unwrap();
    assert!(first.starts_with("cmaa,mean,0,"));
    assert!(metrics.lines().any(|l| l.starts_with("cmaa,2,59,") && l.ends_with(',')));

    let q = fs::read_to_string(out_dir.join("qtable_cmaa.csv")).unwrap();
    assert_eq!(q.lines().next(), Some("state_index,action_index,user,value"));
    assert_eq!(q.lines().count(), 1 + 150 * 25 * 2);
    let q = fs::read_to_string(out_dir.join("qtable_iql.csv")).unwrap();
    assert_eq!(q.lines().count(), 1 + 30 * 5 * 2);

    let trace = fs::read_to_string(out_dir.join("trace_iql_run1.csv")).unwrap();
    assert_eq!(trace.lines().next(), Some("entity,channel,start_ms,end_ms,reward"));
    let users = trace.lines().filter(|l| l.starts_with("user")).count();
    assert_eq!(users, 1200);
}

#[test]
fn missing_config_fails_without_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("out");
    let out = antijam(&[
        "--config", tmp.path().join("missing.toml").to_str().unwrap(),
        "--out", out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out_dir.exists());
}

#[test]
fn config_errors_name_the_key() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("bad.cfg");
    fs::write(&cfg, "epsilon = 1.5\n").unwrap();
    let out = antijam(&["--config", cfg.to_str().unwrap(), "--out", tmp.path().join("o").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("epsilon"));

    fs::write(&cfg, "num_users = 5\nnum_channels = 5\n").unwrap();
    let out = antijam(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("N < M"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(antijam(&["--algo", "dqn"]).status.code(), Some(1));
    assert_eq!(antijam(&["--bogus"]).status.code(), Some(1));
    assert_eq!(antijam(&["--runs", "0", "--out", "/nonexistent/x"]).status.code(), Some(1));
    assert_eq!(antijam(&["--help"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_is_runtime_error() {
    let tmp = tempfile::tempdir().unwrap();
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let cfg = tmp.path().join("c.cfg");
    fs::write(&cfg, "num_slots = 100\nruns = 1\n").unwrap();
    let code = antijam::cli::run([
        "antijam", "--config", cfg.to_str().unwrap(), "--algo", "sensing",
        "--out", blocker.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
}
