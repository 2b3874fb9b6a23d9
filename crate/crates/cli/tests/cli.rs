//! End-to-end runs of the `nctap` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nctap")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generate(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = path(dir, name);
    let mut all = vec!["generate", "-o", s(&out)];
    all.extend_from_slice(args);
    run_json(&all);
    out
}

#[test]
fn generate_solve_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    for (name, args) in [
        ("tight.json", vec!["--family", "tight-path", "--lambda", "4", "--eps", "1/100"]),
        ("gap.json", vec!["--family", "fig3-gap"]),
        ("star.json", vec!["--family", "star-cycle", "--n", "5"]),
        ("chain.json", vec!["--family", "chained", "--lambda", "4", "--k", "2"]),
        ("rand.json", vec!["--family", "random", "--n", "8", "--max-lambda", "4"]),
    ] {
        let inst = generate(&dir, name, &args);
        let cert = path(&dir, &format!("{name}.cert"));
        let solved = run_json(&["solve", s(&inst), "--cert", s(&cert)]);
        assert_eq!(solved["certificate"]["feasible"], true);
        let checked = run_json(&["verify", s(&inst), s(&cert)]);
        assert_eq!(checked["greedy_cost"], solved["greedy_cost"]);
        assert_eq!(checked["instance_digest"], solved["instance_digest"]);
    }
}

#[test]
fn solve_reports_exact_values() {
    let dir = TempDir::new().unwrap();
    let inst = generate(&dir, "t.json", &["--family", "tight-path", "--lambda", "4", "--eps", "1/100"]);
    let r = run_json(&["solve", s(&inst)]);
    assert_eq!(r["lambda"], 4);
    assert_eq!(r["greedy_cost"], "11/6");
    assert_eq!(r["certificate"]["lower_bound"], "1");

    let gap = generate(&dir, "g.json", &["--family", "fig3-gap"]);
    let r = run_json(&["solve", s(&gap)]);
    assert_eq!(r["greedy_cost"], "4");
    assert_eq!(r["certificate"]["lower_bound"], "24/11");
}

fn tamper(cert: &Path, edit: impl FnOnce(&mut Value)) -> Output {
    let mut v: Value = serde_json::from_slice(&std::fs::read(cert).unwrap()).unwrap();
    edit(&mut v);
    let bad = cert.with_extension("bad");
    std::fs::write(&bad, serde_json::to_vec(&v).unwrap()).unwrap();
    let inst = cert.with_file_name("gap.json");
    run(&["verify", s(&inst), s(&bad)])
}

#[test]
fn tampered_certificates_fail_with_named_check() {
    let dir = TempDir::new().unwrap();
    let inst = generate(&dir, "gap.json", &["--family", "fig3-gap"]);
    let cert = path(&dir, "gap.cert");
    run_json(&["solve", s(&inst), "--cert", s(&cert)]);

    let out = tamper(&cert, |v| {
        let snap = &mut v["nodes"][0]["snapshots"][0];
        let y = snap["y"].as_str().unwrap().to_string();
        snap["y"] = Value::String(format!("-{y}"));
    });
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonnegativity"));

    let out = tamper(&cert, |v| v["greedy_cost"] = Value::String("5".into()));
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("accounting"));

    let out = tamper(&cert, |v| v["instance_digest"] = Value::String("00".into()));
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn exact_values_on_small_families() {
    let dir = TempDir::new().unwrap();
    let gap = generate(&dir, "g.json", &["--family", "fig3-gap"]);
    assert_eq!(run_json(&["exact", s(&gap), "--lp"])["lp_opt"], "3");
    let r = run_json(&["exact", s(&gap), "--ip"]);
    assert_eq!(r["ip_opt"], "4");
    assert!(r.get("lp_opt").is_none());
    assert!(r["ratios"].get("ip_over_lp").is_none());

    let star = generate(&dir, "s.json", &["--family", "star-cycle", "--n", "5"]);
    assert_eq!(run_json(&["exact", s(&star), "--ip"])["ip_opt"], "3");

    let both = run_json(&["exact", s(&gap)]);
    assert_eq!(both["ratios"]["ip_over_lp"], "4/3");
}

#[test]
fn scale_multiplies_costs() {
    let dir = TempDir::new().unwrap();
    let gap = generate(&dir, "g.json", &["--family", "fig3-gap"]);
    let r = run_json(&["--scale", "3/2", "exact", s(&gap)]);
    assert_eq!(r["lp_opt"], "9/2");
    assert_eq!(r["ip_opt"], "6");
    assert_eq!(r["ratios"]["ip_over_lp"], "4/3");
}

#[test]
fn inflate_and_ratio_on_triangle() {
    let dir = TempDir::new().unwrap();
    let tri = generate(&dir, "tri.json", &["--family", "triangle"]);
    let out = path(&dir, "big.json");
    let r = run_json(&["inflate", s(&tri), "-o", s(&out)]);
    assert_eq!(r["nodes"], 6);
    let inst: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(inst["kind"], "ncss");
    assert_eq!(inst["edges"].as_array().unwrap().len(), 6);
    let map: Value = serde_json::from_slice(&std::fs::read(path(&dir, "big.map.json")).unwrap()).unwrap();
    assert_eq!(map["cliques"].as_array().unwrap().len(), 3);

    let r = run_json(&["ratio", s(&tri)]);
    assert_eq!(r["ratios_equal"], true);
    assert_eq!(r["ratios"]["ip_over_lp"], r["inflated"]["ratios"]["ip_over_lp"]);
}

#[test]
fn lp_export_writes_lp_text() {
    let dir = TempDir::new().unwrap();
    let star = generate(&dir, "s.json", &["--family", "star-cycle", "--n", "5"]);
    let out = run(&["lp-export", s(&star)]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Minimize") && text.contains("Subject To") && text.trim_end().ends_with("End"));

    let full = path(&dir, "full.lp");
    run_json(&["lp-export", s(&star), "--full", "-o", s(&full)]);
    let text = std::fs::read_to_string(&full).unwrap();
    // 4 leaves around a centre: Bell(4) - 1 rows
    assert_eq!(text.lines().filter(|l| l.starts_with(" part_")).count(), 14);

    let cut = run(&["lp-export", s(&star), "--model", "cut"]);
    assert!(String::from_utf8(cut.stdout).unwrap().contains("<= 1"));
}

#[test]
fn errors_map_to_exit_codes() {
    let dir = TempDir::new().unwrap();
    let out = run(&["generate", "--family", "no-such-family"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown family"));

    let out = run(&["generate", "--family", "star-cycle"]);
    assert!(!out.status.success());

    let bad = path(&dir, "bad.json");
    std::fs::write(&bad, r#"{"kind":"tap","n":3,"tree_edges":[[0,1],[0,1]],"links":[]}"#).unwrap();
    assert_eq!(run(&["solve", s(&bad)]).status.code(), Some(2));

    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(run(&["solve", s(&bad)]).status.code(), Some(2));

    let big = generate(&dir, "big.json", &["--family", "star-cycle", "--n", "40"]);
    assert_eq!(run(&["exact", s(&big), "--ip"]).status.code(), Some(4));
}

#[test]
fn generate_is_deterministic_in_seed() {
    let a = run(&["--seed", "3", "generate", "--family", "random", "--n", "7"]);
    let b = run(&["--seed", "3", "generate", "--family", "random", "--n", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
