use std::process::{Command, Output};

const EXAMPLE: &str = "4; 0 1; 0 2; 1 2; 2 3; 2 4; 3 4";

fn flowgp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowgp")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn example_graph_parses() {
    let o = flowgp(&["volume", EXAMPLE]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // the volume is the number of full-dimensional leaves
    let ld: serde_json::Value = serde_json::from_slice(&flowgp(&["ld", EXAMPLE, "--format", "json"]).stdout).unwrap();
    assert_eq!(stdout(&o).trim(), ld["codim_profile"][0].to_string());
}

#[test]
fn kostant_accepts_negative_netflow() {
    let o = flowgp(&["kostant", "2; 0 1 2; 1 2", "-1,0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
    let o = flowgp(&["feasible", "2; 0 1 2; 1 2", "2,-1,-1"]);
    assert_eq!(stdout(&o).trim(), "feasible");
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(flowgp(&["volume", "3; 2 1"]).status.code(), Some(2));
    assert_eq!(flowgp(&["transition", "1243"]).status.code(), Some(2));
    assert_eq!(flowgp(&["schubert", "1123"]).status.code(), Some(2));
    assert_eq!(flowgp(&["ld", EXAMPLE, "--strategy", "nope"]).status.code(), Some(2));
}

#[test]
fn failing_verification_exits_1() {
    // b = (1,-1,2,-2) for F = both copies of (2,3), where the y-decomposition breaks
    let o = flowgp(&["verify", "genperm", "3; 0 1; 1 2; 2 3 2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("minkowski_y"));
    assert_eq!(flowgp(&["verify", "genperm", EXAMPLE]).status.code(), Some(0));
}

#[test]
fn json_is_deterministic() {
    let a = flowgp(&["ld", EXAMPLE, "--strategy", "random:9", "--format", "json"]);
    let b = flowgp(&["ld", EXAMPLE, "--strategy", "random:9", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let total: u64 = v["sequences"].as_array().unwrap().iter().map(|e| e["multiplicity"].as_u64().unwrap()).sum();
    assert_eq!(v["leaves"], serde_json::json!(total));
}

#[test]
fn ld_strategies_agree_on_aggregate() {
    let o = flowgp(&["verify", "theorem-a", EXAMPLE, "--strategies", "special,lex,rightmost,random:3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("all routes agree"));
}

#[test]
fn csv_scan_resumes() {
    let dir = std::env::temp_dir().join(format!("flowgp-resume-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let p = path.to_str().unwrap();
    let _ = std::fs::remove_file(&path);

    let small = flowgp(&["scan", "graphs", "--max-vertices", "3", "--max-edges", "2", "--format", "csv", "-o", p]);
    assert!(small.status.success());
    assert!(stdout(&small).contains("0 resumed"));
    let first = std::fs::read_to_string(&path).unwrap().lines().count();

    let big = flowgp(&["scan", "graphs", "--max-vertices", "3", "--max-edges", "3", "--format", "csv", "-o", p]);
    assert!(big.status.success());
    assert!(stdout(&big).contains(&format!("{} resumed", first - 1)));
    let text = std::fs::read_to_string(&path).unwrap();
    let hashes: std::collections::HashSet<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(hashes.len(), text.lines().count() - 1);

    // a fresh run over the same family writes the same rows
    let again = dir.join("again.csv");
    flowgp(&["scan", "graphs", "--max-vertices", "3", "--max-edges", "3", "--format", "csv", "-o", again.to_str().unwrap()]);
    let mut a: Vec<_> = text.lines().collect();
    let fresh = std::fs::read_to_string(&again).unwrap();
    let mut b: Vec<_> = fresh.lines().collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn theorem_c_scan_csv() {
    let o = flowgp(&["scan", "theorem-c", "--n", "4", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1 + 5);
    assert!(out.lines().skip(1).all(|l| l.contains("true,true,true,true")));
}

#[test]
fn graph_from_file() {
    let path = std::env::temp_dir().join(format!("flowgp-graph-{}.txt", std::process::id()));
    std::fs::write(&path, "4\n0 1\n0 2\n1 2\n2 3\n2 4\n3 4\n").unwrap();
    let from_file = flowgp(&["volume", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(stdout(&from_file), stdout(&flowgp(&["volume", EXAMPLE])));
}
