use qtetra_cli::report::Report;
use serde_json::Value;
use std::process::{Command, Output};

fn qtetra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtetra")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qtetra(&["bogus"]).status.code(), Some(2));
    assert_eq!(qtetra(&["quiver", "mutate", "--seed", "J999", "--at", "1"]).status.code(), Some(2));
    assert_eq!(qtetra(&["quiver", "mutate", "--seed", "J121", "--at", "9"]).status.code(), Some(2));
    assert_eq!(qtetra(&["quiver", "mutate", "--seed", "J121", "--at", "1"]).status.code(), Some(2), "frozen vertex");
    assert_eq!(qtetra(&["rep", "element", "--op", "x", "--basis", "u", "--in", "0", "--out", "0"]).status.code(), Some(2));
    assert_eq!(qtetra(&["ncqd", "check", "--identity", "nope"]).status.code(), Some(2));
}

#[test]
fn mutation_matches_builtin() {
    let path = std::env::temp_dir().join(format!("qtetra-mut-{}.json", std::process::id()));
    for (seed, at, target) in [("J121", "4", "J212"), ("J1212", "2,5,2", "J2121")] {
        let o = qtetra(&["--json", path.to_str().unwrap(), "quiver", "mutate", "--seed", seed, "--at", at]);
        assert!(o.status.success());
        let r: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(r.cases[0].got["builtin"], target);
        let printed: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(printed, r.cases[0].got["seed"]);
    }
    std::fs::remove_file(&path).ok();
}

#[test]
fn mutation_round_trip_through_a_seed_file() {
    let o = qtetra(&["quiver", "mutate", "--seed", "J1212", "--at", "2,5,2"]);
    let path = std::env::temp_dir().join(format!("qtetra-seed-{}.json", std::process::id()));
    std::fs::write(&path, stdout(&o).lines().next().unwrap()).unwrap();
    let back = qtetra(&["quiver", "mutate", "--seed", path.to_str().unwrap(), "--at", "2,5,2"]);
    let start = qtetra(&["quiver", "mutate", "--seed", "J1212", "--at", "2,2"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(stdout(&back), stdout(&start));
}

#[test]
fn tropical_signs_json() {
    let o = qtetra(&["tropical", "signs", "--seed", "J1212", "--seq", "2,5,2"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["signs"], serde_json::json!(["+", "+", "-"]));
}

#[test]
fn json_report_round_trips() {
    let path = std::env::temp_dir().join(format!("qtetra-report-{}.json", std::process::id()));
    let o = qtetra(&["--json", path.to_str().unwrap(), "identity", "pentagon", "--order", "4"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let r: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(r.schema, 1);
    assert_eq!(r.totals.cases, 3);
    assert!(r.all_pass());
    let again: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn weyl_and_rep_commands() {
    for what in ["pi-tetra", "p-tetra", "pi-refl", "p-refl", "diagrams", "chains"] {
        let o = qtetra(&["weyl", "verify", what, "--alpha", "-2/3", "--beta", "5/7", "--gamma", "-1"]);
        assert!(o.status.success(), "{what}: {}", stdout(&o));
    }
    let o = qtetra(&["rep", "element", "--op", "r", "--basis", "p", "--in", "1,-1,0", "--out", "0,0,-1", "--n", "1,0,-1"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = qtetra(&["rep", "element", "--op", "k", "--basis", "u", "--in", "1,0,-1,0", "--out", "0,1,0,-1", "--n", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ncqd_commands() {
    let o = qtetra(&["ncqd", "eval", "--z", "0", "--b", "0.8"]);
    assert!(o.status.success());
    let o = qtetra(&["ncqd", "check", "--identity", "inversion", "--b", "0.9"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = qtetra(&["ncqd", "check", "--identity", "recursion_b", "--args", "0.2+0.1i"]);
    assert!(o.status.success(), "{}", stdout(&o));
    // an impossible tolerance is a verification failure, exit 1
    let o = qtetra(&["ncqd", "check", "--identity", "inversion", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn quick_sweeps() {
    let o = qtetra(&["verify", "tetra-rep", "--window", "1", "--samples", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = qtetra(&["verify", "qbinomial", "--max", "3", "--random", "5"]);
    assert!(o.status.success());
    let o = qtetra(&["--jobs", "1", "verify", "all", "--level", "quick", "--only", "1,2,7"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains(": PASS")).count(), 3);
}
