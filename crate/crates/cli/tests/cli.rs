use std::process::{Command, Output};

use qbgg::report::{Report, Status};

fn qbgg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbgg"))
        .args(args)
        .env_remove("QBGG_THREADS")
        .output()
        .expect("binary runs")
}

fn json_report(args: &[&str]) -> (i32, Report) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = qbgg(&full);
    let report = serde_json::from_slice(&out.stdout).expect("stdout is a report");
    (out.status.code().unwrap(), report)
}

#[test]
fn passing_commands_exit_zero() {
    for args in [
        &["cartan", "info", "--type", "G2"][..],
        &["weyl", "graph", "--type", "A3", "--s", "1,3"],
        &["dims", "verify", "--type", "C3", "--s", "1,2"],
        &["bgg", "build", "--type", "A2", "--s", "1"],
        &["bgg", "verify", "--type", "A2", "--s", "1", "--height", "3", "--mode", "evaluation"],
        &["double", "verify", "--type", "A1", "--box", "2,2"],
    ] {
        let out = qbgg(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(String::from_utf8_lossy(&out.stdout).contains("overall: pass"));
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["weyl", "graph", "--type", "Z4"][..],
        &["weyl", "graph", "--type", "A2", "--s", "5"],
        &["bgg", "verify", "--type", "A1", "--height", "0"],
        &["double", "verify", "--type", "A1", "--box", "3"],
        &["bgg", "verify", "--type", "A1", "--mode", "numeric"],
        &["podles", "demo", "--form-degree", "2"],
        &["all", "--type", "E9"],
    ] {
        assert_eq!(qbgg(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn failed_verification_exits_one() {
    // The full flag manifold of A2 has equal-length elements whose dot-orbit
    // difference is not in Q_S, so incomparability fails there.
    let (code, report) = json_report(&["weyl", "graph", "--type", "A2"]);
    assert_eq!(code, 1);
    assert_eq!(report.status, Status::Fail);
    let bad = report.records.iter().find(|r| r.check_id == "incomparability").unwrap();
    assert_eq!(bad.status, Status::Fail);
}

#[test]
fn json_output_file_round_trips() {
    let dir = std::env::temp_dir().join(format!("qbgg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = qbgg(&["bgg", "verify", "--type", "A1", "--height", "4", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(report.schema_version, 1);
    assert_eq!(report.config["height"], 4);
    assert_eq!(report.records.len(), 2);
    assert_eq!(serde_json::from_str::<Report>(&report.to_json()).unwrap(), report);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_is_deterministic_up_to_timing() {
    let args = ["all", "--type", "A2", "--s", "1", "--height", "3", "--box", "1,1"];
    let (c1, r1) = json_report(&args);
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "3"]);
    let (c2, r2) = json_report(&threaded);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(r1.without_timing(), r2.without_timing());
}

#[test]
fn help_states_one_based_indexing() {
    let out = qbgg(&["weyl", "graph", "--help"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("1-based"));
}
