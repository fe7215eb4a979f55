use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn netform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netform")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> String {
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    let out = netform(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    write(dir, name, std::str::from_utf8(&out.stdout).unwrap())
}

#[test]
fn star_check_holds() {
    let dir = tempfile::tempdir().unwrap();
    let star = construct(dir.path(), "star9.json", &["--shape", "star", "--n", "9"]);
    let out = netform(&[
        "check",
        "--concept",
        "ne",
        "--rule",
        "ulf",
        "--adversary",
        "simple",
        "--alpha",
        "2",
        "--profile",
        &star,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["holds"], true);
}

#[test]
fn failing_check_exits_two_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let star = construct(dir.path(), "star5.json", &["--shape", "star", "--n", "5"]);
    let out = netform(&["check", "--concept", "ne", "--alpha", "1/2", "--profile", &star]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"]["kind"], "deviation");
    assert_eq!(v["witness"]["new_cost"], "9/10");
}

#[test]
fn path_cost_from_text_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "path5.txt", "n 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\n");
    let out = netform(&["cost", "--rule", "ulf", "--adversary", "simple", "--alpha", "1", "--graph", &path]);
    assert!(out.status.success());
    assert_eq!(json(&out)["social"], "14/1");
    let profile = write(dir.path(), "path5.json", r#"{"n":5,"requests":[[0,1],[1,2],[2,3],[3,4]]}"#);
    let out = netform(&["cost", "--alpha", "1", "--profile", &profile]);
    assert_eq!(json(&out)["social"], "14/1");
}

#[test]
fn poa_respects_the_smart_bound_and_is_deterministic() {
    let args = ["poa", "--n", "4", "--alpha", "3", "--rule", "ulf", "--adversary", "smart"];
    let first = netform(&args);
    assert!(first.status.success());
    let v = json(&first);
    let poa = v["poa"].as_str().unwrap();
    let (p, q) = poa.split_once('/').unwrap();
    let (p, q): (i64, i64) = (p.parse().unwrap(), q.parse().unwrap());
    assert!(3 * p <= 32 * q, "{poa}");
    assert_eq!(netform(&args).stdout, first.stdout);
}

#[test]
fn csv_sweep() {
    let out =
        netform(&["pos", "--n", "4", "--alpha", "1/2,1,3", "--rule", "blf", "--concept", "ps", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,alpha,rule,adversary,concept,optimum,poa,pos,equilibrium_count");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("4,1/2,blf,simple,ps,"));
}

#[test]
fn optimum_with_brute_force() {
    let out = netform(&["optimum", "--n", "5", "--alpha", "8", "--brute-force"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["closed_form"]["value"], "40/1");
    assert_eq!(v["closed_form"]["shape"], "both");
    assert_eq!(v["brute_force"]["value"], "40/1");
}

#[test]
fn dynamics_and_audit() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p.txt", "n 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\n");
    let out = netform(&["dynamics", "--alpha", "1/2", "--graph", &path, "--max-rounds", "50"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["converged"], true);
    assert_eq!(v["verdict"]["holds"], true);

    let out = netform(&["audit", "--n", "4", "--alpha", "3", "--adversary", "smart"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["holds"] == true));
    let profiles = dir.path().join("list.json");
    let star = json(&netform(&["construct", "--shape", "star", "--n", "9"]));
    fs::write(&profiles, serde_json::to_string(&vec![star]).unwrap()).unwrap();
    let out = netform(&["audit", "--n", "9", "--alpha", "3", "--profiles", profiles.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["profiles"], 1);
}

#[test]
fn custom_adversary_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let table = write(dir.path(), "t.json", r#"{"probs":[[0,1,"1/2"],[1,2,"1/2"]]}"#);
    let graph = write(dir.path(), "g.txt", "n 3\ne 0 1\ne 1 2\n");
    let report = dir.path().join("out.json");
    let spec = format!("custom:{table}");
    let out = netform(&[
        "cost",
        "--adversary",
        &spec,
        "--alpha",
        "1",
        "--graph",
        &graph,
        "--output",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    // disconnection 3/2, 1 and 3/2 plus two links at 1
    assert_eq!(v["adversary"], "custom");
    assert_eq!(v["social"], "6/1");
}

#[test]
fn construct_shapes() {
    let v = json(&netform(&["construct", "--shape", "three-stars", "--n", "13"]));
    assert_eq!(v["n"], 13);
    assert_eq!(v["requests"].as_array().unwrap().len(), 24);
    let v = json(&netform(&["construct", "--shape", "gadget"]));
    assert_eq!(v["player"], 3);
    assert_eq!(v["profile"]["n"], 17);
    let v = json(&netform(&["construct", "--shape", "cycle-with-path", "--n", "16", "--l", "4"]));
    assert_eq!(v["n"], 16);
    let bad = netform(&["construct", "--shape", "path", "--n", "6", "--rule", "blf"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn errors_exit_one_with_names() {
    let dir = tempfile::tempdir().unwrap();
    let loose = write(dir.path(), "loose.json", r#"{"n":2,"requests":[[0,1],[1,0]]}"#);
    let out = netform(&["check", "--concept", "ne", "--alpha", "1", "--profile", &loose]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotEssential"));

    let out = netform(&["check", "--concept", "ps", "--rule", "ulf", "--alpha", "1", "--profile", &loose]);
    assert_eq!(out.status.code(), Some(1));

    let out = netform(&["cost", "--alpha", "0", "--profile", &loose]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("NonPositiveAlpha"));

    let out = netform(&["poa", "--n", "6", "--alpha", "1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("SearchTooLarge"));

    let out = netform(&["check", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = netform(&["cost", "--alpha", "1", "--adversary", "clever", "--profile", &loose]);
    assert_eq!(out.status.code(), Some(1));
    assert!(netform(&["--help"]).status.success());
}

#[test]
fn jobs_flag_keeps_results() {
    let base = netform(&["poa", "--n", "4", "--alpha", "1", "--format", "csv"]);
    let one = netform(&["--jobs", "1", "poa", "--n", "4", "--alpha", "1", "--format", "csv"]);
    assert!(one.status.success());
    assert_eq!(base.stdout, one.stdout);
}
