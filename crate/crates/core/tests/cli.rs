use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohiggs")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn tables_k3_markdown() {
    let o = run(&["tables", "--k", "3", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for row in [
        "| End0 V | 0 | 5 | 0 |",
        "| End0 V(1) | 1 | 0 | 0 |",
        "| End0 V(2) | 10 | 0 | 0 |",
        "| End0 V ⊗ T | 8 | 0 | 0 |",
        "| End0 V(3) | 22 | 0 | 0 |",
    ] {
        assert!(s.contains(row), "missing {row} in\n{s}");
    }
}

#[test]
fn tables_route_subset_and_json() {
    let o = run(&["tables", "--k-range", "4..8", "--routes", "rr,kunneth", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tables"].as_array().unwrap().len(), 5);
    assert!(v["report"]["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn tables_reject_small_k() {
    assert_eq!(run(&["tables", "--k", "2"]).status.code(), Some(64));
}

#[test]
fn solve_twisted_sum() {
    let o = run(&["solve", "--bundle", "split:0,-1", "--C", "1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("A-space 3"));
    assert!(stdout(&o).contains("B-space 6"));
}

#[test]
fn solve_trivial_sum_scalar_family() {
    let o = run(&["solve", "--bundle", "split:0,0", "--C", "x1, x2, x0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["a_solutions"].as_u64(), v["b_solutions"].as_u64()), (Some(1), Some(1)));
    // Constants are sections of T(-1), not of T.
    assert_eq!(run(&["solve", "--bundle", "split:0,0", "--C", "1,2,3"]).status.code(), Some(5));
}

#[test]
fn solve_exit_codes() {
    assert_eq!(run(&["solve", "--bundle", "split:0,-2", "--C", "0,0,0"]).status.code(), Some(4));
    assert_eq!(run(&["solve", "--bundle", "split:0,-1", "--C", "0,0,0"]).status.code(), Some(4));
    let o = run(&["solve", "--bundle", "split:0,-1", "--C", "1,0,0", "--A", "x1,0,0", "--B", "x0*x1, 0, x2^2"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(run(&["solve", "--bundle", "split:0,-1", "--C", "1,0"]).status.code(), Some(5));
    assert_eq!(run(&["solve", "--bundle", "split:0,-1", "--C", "1,x0,0"]).status.code(), Some(5));
}

#[test]
fn solve_normal_form() {
    let o = run(&["solve", "--bundle", "split:0,-1", "--C", "1,-1,2", "--A", "x1,-x1,2*x1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["field"]["normal_form"], "q = x1^2, C = (1, -1, 2)");
    assert_eq!(v["field"]["stability"], "Stable");
    assert_eq!(v["field"]["nilpotent"], false);
}

#[test]
fn h1_families() {
    for args in [
        &["h1", "--family", "schwarzenberger", "--k", "7"][..],
        &["h1", "--family", "tangent", "--seed", "42"],
        &["h1", "--family", "split:0,-1", "--seed", "7"],
        &["h1", "--family", "split:0,0"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(stdout(&o).contains("h1 = 8\n"), "{args:?}: {}", stdout(&o));
    }
    assert_eq!(run(&["h1", "--family", "schwarzenberger", "--k", "2"]).status.code(), Some(64));
}

#[test]
fn chern_and_conic() {
    let o = run(&["chern", "--k", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v[0]["c1"].as_i64(), v[0]["c2"].as_i64()), (Some(2), Some(3)));
    assert_eq!((v[0]["normalized"]["c1"].as_i64(), v[0]["normalized"]["c2"].as_i64()), (Some(0), Some(2)));
    let o = run(&["conic", "x0*x1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["singular"], true);
    assert_eq!(run(&["conic", "x0 + x1^2"]).status.code(), Some(5));
}

#[test]
fn verify_all_json_schema() {
    let o = run(&["verify-all", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["version"].is_string());
    assert_eq!(v["seed"], 0);
    let checks = v["checks"].as_array().unwrap();
    let ids: Vec<&str> = checks.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for c in checks {
        for key in ["id", "citation", "route", "computed", "expected", "status"] {
            assert!(c[key].is_string(), "{key} in {c}");
        }
        assert!(c["ledger"].is_array());
    }
    assert_eq!(stdout(&run(&["verify-all", "--format", "json"])), stdout(&o));
}
