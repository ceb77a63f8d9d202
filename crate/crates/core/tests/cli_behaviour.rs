use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_achromatic")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn tampered_edge_list_names_the_missing_pair() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(run(&["build", "plane", "--q", "2", "--out", s(d)]).status.code(), Some(0));
    assert_eq!(run(&["partition", "plane", "--q", "2", "--out", s(d)]).status.code(), Some(0));
    let edges = d.join("edges.txt");
    let part = d.join("partition.txt");
    let ok = run(&["verify", "plane", "--q", "2", "--edges", s(&edges), "--partition", s(&part)]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));

    let text = fs::read_to_string(&edges).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let header: Vec<usize> = lines[0].split(' ').map(|x| x.parse().unwrap()).collect();
    let new_header = format!("{} {} {}", header[0], header[1] - 1, header[2]);
    lines[0] = &new_header;
    lines.remove(1);
    let tampered = d.join("tampered.txt");
    fs::write(&tampered, lines.join("\n") + "\n").unwrap();

    let out_json = d.join("report.json");
    let bad = run(&[
        "verify", "plane", "--q", "2", "--edges", s(&tampered), "--partition", s(&part), "--out", s(&out_json),
    ]);
    assert_eq!(bad.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&bad.stderr);
    assert!(stderr.contains("missing edge between classes"), "{stderr}");
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out_json).unwrap()).unwrap();
    assert_eq!(report["verdicts"]["complete"], false);
    assert_eq!(report["witnesses"][0]["kind"], "missing_pair");
}

#[test]
fn invalid_configurations_exit_with_two() {
    for args in [
        &["report", "plane", "--q", "6"][..],
        &["report", "gq", "--e", "0"],
        &["report", "gh", "--q", "9"],
        &["report", "hexagon", "--q", "3"],
        &["report", "generic"],
        &["report", "plane"],
        &["report", "plane", "--q", "3", "--workers", "0"],
        &["partition", "gh-original", "--q", "3"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn small_e_override_is_accepted() {
    let out = run(&["report", "gq", "--e", "0", "--override-small-e"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["counts"]["n"], 8);
}

#[test]
fn oracle_on_a_four_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.txt");
    fs::write(&path, "4 4 0\n0 1\n0 3\n1 2\n2 3\n").unwrap();
    let out = run(&["oracle", "--edges", s(&path)]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["psi"].as_u64(), v["chi_a"].as_u64(), v["chi"].as_u64()), (Some(3), Some(2), Some(2)));
}

#[test]
fn generic_spec_files_run_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    fs::write(
        &path,
        r#"{"field":{"p":2,"k":2,"modulus":[1,1,1]},"m":2,"fs":[{"mul":[{"point":1},{"line":1}]}]}"#,
    )
    .unwrap();
    let out = run(&["report", "generic", "--spec", s(&path)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdicts"]["polarity.optimally_complete"], true);
}

#[test]
fn worker_count_does_not_change_the_report() {
    let a = run(&["report", "gq", "--e", "1", "--workers", "1"]);
    let b = run(&["report", "gq", "--e", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
