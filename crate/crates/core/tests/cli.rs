use std::process::Command;

use nullplane::report::{Status, VerificationReport};

fn nullplane(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nullplane")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn report(args: &[&str]) -> (i32, VerificationReport) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, stdout, _) = nullplane(&all);
    (code, serde_json::from_str(&stdout).unwrap())
}

#[test]
fn exit_codes_follow_the_report() {
    assert_eq!(nullplane(&["verify", "jacobi"]).0, 0);
    assert_eq!(nullplane(&["verify", "hopf", "--K", "2"]).0, 2);
    assert_eq!(nullplane(&["verify", "hopf", "--K", "2", "--repair", "off"]).0, 1);
    assert_eq!(nullplane(&["verify", "hopf", "--algebra", "pi13"]).0, 1);
    let (code, _, err) = nullplane(&["verify", "nonsense"]);
    assert_eq!(code, 1);
    assert!(err.contains("nonsense"));
    assert_eq!(nullplane(&["verify", "realization", "--algebra", "galilean-quantum"]).0, 1);
}

#[test]
fn json_report_is_deterministic() {
    let dir = std::env::temp_dir();
    let paths: Vec<_> = (0..2).map(|k| dir.join(format!("nullplane-cli-{}-{k}.json", std::process::id()))).collect();
    for p in &paths {
        nullplane(&["verify", "hopf,casimir", "--K", "2", "--out", p.to_str().unwrap()]);
    }
    let (a, b) = (std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
    for p in &paths {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn status_pattern_is_stable_across_orders() {
    let pattern = |k: &str| {
        let (_, r) = report(&["verify", "hopf", "--K", k]);
        r.entries.into_iter().map(|e| (e.key, matches!(e.status, Status::Pass))).collect::<Vec<_>>()
    };
    assert_eq!(pattern("2"), pattern("4"));
}

#[test]
fn all_skips_suites_that_do_not_apply() {
    let (code, r) = report(&["verify", "all", "--algebra", "poincare-classical", "--K", "2"]);
    assert_eq!(code, 0);
    let skipped: Vec<_> = r.skipped.iter().map(|s| s.to_string()).collect();
    assert_eq!(skipped, ["bialgebra", "realization", "subalgebras"]);
}

#[test]
fn expand_prints_normal_forms() {
    assert_eq!(nullplane(&["expand", "antipode(P+)"]).1.trim(), "-P+");
    assert_eq!(nullplane(&["expand", "[P1, F1]", "--algebra", "poincare-classical"]).1.trim(), "-P-");
    assert_eq!(nullplane(&["expand", "[F1,"]).0, 1);
}

#[test]
fn packet_commands() {
    let (code, out, _) = nullplane(&["evolve", "--grid", "16,20,20", "--steps", "2", "--tau-max", "1"]);
    assert_eq!(code, 0);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[0], "tau,norm,q1,p1,dq1,dp1,bound");
    assert_eq!(lines.len(), 4);
    let (code, out, _) = nullplane(&["uncertainty", "--grid", "16,20,20", "--zs", "0,1/10", "--tol", "1e-4"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 5);
    assert_eq!(nullplane(&["evolve", "--pmin", "-1"]).0, 1);
}
