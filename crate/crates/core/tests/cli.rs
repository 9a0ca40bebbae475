use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn zsg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zsg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

/// Splits one CSV line, honouring double quotes.
fn fields(line: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut quoted = false;
    for c in line.chars() {
        match c {
            '"' => quoted = !quoted,
            ',' if !quoted => out.push(String::new()),
            _ => out.last_mut().unwrap().push(c),
        }
    }
    out
}

fn bound_row(o: &Output, side: &str) -> (f64, f64) {
    let text = stdout(o);
    let line = text.lines().find(|l| l.starts_with(side)).unwrap_or_else(|| panic!("no {side} row in {text}"));
    let f = fields(line);
    (f[2].parse().unwrap(), f[3].parse().unwrap())
}

#[test]
fn solve_two_period_game() {
    let o = zsg(&["solve", "--game", "builtin:matrix2p"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "state,label,value,row_strategy,col_strategy");
    let root = fields(rows[1]);
    assert_eq!(root[1], "(t=0,x=1)");
    assert!((root[2].parse::<f64>().unwrap() - 5.0).abs() < 1e-9);
    assert_eq!(&fields(rows[2])[1..3], ["(t=1,x=2)", "10"]);
    assert_eq!(&fields(rows[3])[1..3], ["(t=1,x=3)", "-10"]);
}

#[test]
fn solve_small_waste_game() {
    let o = zsg(&["solve", "--game", "builtin:waste,N=3", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 12);
    let root: f64 = fields(text.lines().nth(1).unwrap())[2].parse().unwrap();
    assert!(root.is_finite() && (root - 21.777).abs() < 1e-2, "{root}");
}

#[test]
fn malformed_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    // row (0,0,0) sums to 0.9
    let bad = r#"{"n_states":2,"regime":{"type":"ssp","absorbing":1},"actions_a":[1,1],"actions_b":[1,1],
        "transition":[[[[0.4,0.5]]],[[[0.0,1.0]]]],"cost":[[[[1.0,1.0]]],[[[0.0,0.0]]]]}"#;
    let bad = write(dir.path(), "bad.json", bad);
    let o = zsg(&["solve", "--game", &format!("file:{bad}")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(i=0, u=0, v=0)"), "{}", String::from_utf8_lossy(&o.stderr));

    let junk = write(dir.path(), "junk.json", "{ not json");
    assert_eq!(zsg(&["solve", "--game", &format!("file:{junk}")]).status.code(), Some(2));
    assert_eq!(zsg(&["solve", "--game", "file:/definitely/missing.json"]).status.code(), Some(2));
    assert_eq!(zsg(&["solve", "--game", "builtin:chess"]).status.code(), Some(2));
    assert_eq!(zsg(&["solve", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(zsg(&["repro", "poker"]).status.code(), Some(2));

    let policy = write(dir.path(), "nu.json", r#"{"0": [0.7, 0.7]}"#);
    let o = zsg(&["bound", "--fix", &format!("B=file:{policy}"), "--h", "zero", "--n", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solver_failure_exits_with_one() {
    // pure inspector keeps the manufacturer in business forever
    let dir = tempfile::tempdir().unwrap();
    let mut rows = serde_json::Map::new();
    for i in 0..12 {
        rows.insert(i.to_string(), Value::from(vec![1.0, 0.0, 0.0]));
    }
    let policy = write(dir.path(), "pure.json", &Value::Object(rows).to_string());
    let o = zsg(&["bound", "--game", "builtin:waste,N=3", "--fix", &format!("B=file:{policy}"), "--h", "exact", "--n", "10"]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn bound_with_heuristic_and_exact_generators() {
    let o = zsg(&["bound", "--game", "builtin:matrix2p", "--fix", "B=paper_nu_hat", "--h", "paper_h_hat", "--n", "10000", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let (mean, se) = bound_row(&o, "upper");
    assert!(se > 0.0 && (mean - 6.0).abs() <= 3.0 * se, "{mean} +- {se}");
    assert!(!stdout(&o).contains("lower"));

    let o = zsg(&["bound", "--game", "builtin:matrix2p", "--fix", "B=paper_nu_hat", "--h", "exact", "--n", "1000", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let (mean, se) = bound_row(&o, "upper");
    assert!((mean - 5.6).abs() < 1e-9);
    assert_eq!(se, 0.0);
}

#[test]
fn bound_policy_and_generator_files() {
    let dir = tempfile::tempdir().unwrap();
    let nu = write(dir.path(), "nu.json", r#"{"0": [0.6, 0.4], "1": [1, 0], "2": [0, 1]}"#);
    let h = write(dir.path(), "h.json", r#"{"1": 8, "2": -8}"#);
    let o = zsg(&["bound", "--fix", &format!("B=file:{nu}"), "--h", &format!("file:{h}"), "--n", "2000", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["lower"].is_null());
    assert_eq!(v["upper"]["n_scenarios"], 2000);
    assert_eq!(v["meta"]["seed"], 0);
}

#[test]
fn waste_bound_pair_runs() {
    let o = zsg(&["bound", "--game", "builtin:waste,N=10", "--fix", "both=uniform", "--h", "pair-value", "--n", "5000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("\nlower,\"(l1,l1,FALSE)\",") && text.contains("\nupper,\"(l1,l1,FALSE)\","), "{text}");
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", r#"{"n": 300, "seed": 5}"#);
    let run = |extra: &[&str]| {
        let mut args = vec!["bound", "--fix", "B=paper_nu_hat", "--h", "zero", "--format", "json", "--config", &cfg];
        args.extend_from_slice(extra);
        let v: Value = serde_json::from_str(&stdout(&zsg(&args))).unwrap();
        (v["upper"]["n_scenarios"].as_u64().unwrap(), v["meta"]["seed"].as_u64().unwrap())
    };
    assert_eq!(run(&[]), (300, 5));
    assert_eq!(run(&["--n", "40"]), (40, 5));

    let bad = write(dir.path(), "bad_cfg.json", r#"{"samples": 3}"#);
    assert_eq!(zsg(&["solve", "--config", &bad]).status.code(), Some(2));
}

#[test]
fn matrix_game_reproduction() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.csv");
    let o = zsg(&["repro", "matrix-game", "--n", "10000", "--seed", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    let field = |item: &str, col: usize| -> String {
        csv.lines().find(|l| l.starts_with(&format!("{item},"))).unwrap().split(',').nth(col).unwrap().to_string()
    };
    assert!((field("equilibrium", 3).parse::<f64>().unwrap() - 5.0).abs() < 1e-9);
    assert_eq!(field("best_response_nu_hat", 3), "5.6");
    assert_eq!(field("dual_upper_strong_duality", 4), "0");
    let meta: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("m.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["seed"], 1);
    assert_eq!(meta["n_scenarios"], 10000);
    assert_eq!(meta["game"], "matrix2p");
}

#[test]
fn waste_game_reproduction_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = zsg(&["repro", "waste-game", "--rounds", "3", "--n", "5000", "--seed", "7", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(out).unwrap()
    };
    let first = run("w1.csv");
    let second = run("w2.csv");
    assert_eq!(first, second);
    let text = String::from_utf8(first).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,pair_value,br_lower,br_upper,dual_lower,dual_lower_se,dual_upper,dual_upper_se,status");
    assert_eq!(lines.len(), 5);
    for (k, line) in lines[1..].iter().enumerate() {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 9);
        assert_eq!(f[0], k.to_string());
        assert_eq!(f[8], "ok");
    }
    assert!(dir.path().join("w1.csv.meta.json").exists());
}
