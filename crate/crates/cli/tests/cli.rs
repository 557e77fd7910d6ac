use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singerfact"))
        .args(args)
        .env("SINGERFACT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn count_singer() {
    let out = run(&["count", "--n", "4", "--q", "2", "--len", "4", "--target", "singer"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["count"], "3375");
}

#[test]
fn count_with_dets_and_charpoly() {
    let out = run(&["count", "--n", "2", "--q", "3", "--len", "2", "--dets", "1,2", "--target", "charpoly", "--charpoly", "2,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["filter"], "dets:1,2");
    assert_eq!(v["target_charpoly"], serde_json::json!([2, 1, 1]));
}

#[test]
fn count_dets_lists_sequences() {
    let out = run(&["count-dets", "--n", "2", "--q", "3", "--len", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let total: u64 = v["sequences"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["count"].as_str().unwrap().parse::<u64>().unwrap())
        .sum();
    let all = json(&run(&["count", "--n", "2", "--q", "3", "--len", "3"]));
    assert_eq!(total.to_string(), all["count"].as_str().unwrap());
}

#[test]
fn formula_routes_agree() {
    let out = run(&["formula", "--n", "3", "--len", "4", "--route", "all", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let routes = v["routes"].as_array().unwrap();
    assert_eq!(routes.len(), 3);
    assert!(routes.windows(2).all(|w| w[0]["poly"] == w[1]["poly"]));
    assert_eq!(v["value"], "1029");
    let m = run(&["formula", "--n", "2", "--len", "3", "--m", "1"]);
    assert_eq!(json(&m)["routes"].as_array().unwrap().len(), 2);
    assert_eq!(run(&["formula", "--n", "2", "--len", "3", "--m", "1", "--route", "sum"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--suite", "identities", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
    assert_eq!(run(&["verify", "--suite", "charvals", "--max-n", "5"]).status.code(), Some(0));
}

#[test]
fn hurwitz_reports() {
    let out = run(&["hurwitz", "--n", "4", "--q", "2", "--len", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["classes"][0]["orbit_sizes"], serde_json::json!([3375]));
    let c = run(&["hurwitz", "--n", "4", "--q", "2", "--len", "4", "--target", "charpoly", "--charpoly", "1,1,1,1,1"]);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(json(&c)["classes"][0]["orbit_sizes"].as_array().unwrap().len(), 4);
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = run(&["hurwitz", "--n", "4", "--q", "2", "--len", "4", "--tuple-budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(json(&out)["error"].as_str().unwrap().contains("budget"));
    let big = run(&["interval", "--n", "4", "--q", "4"]);
    assert_eq!(big.status.code(), Some(3));
}

#[test]
fn interval_and_csv() {
    let out = run(&["interval", "--n", "4", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["rank_sizes"], serde_json::json!([1, 60, 240, 60, 1]));
    let csv = run(&["interval", "--n", "4", "--q", "2", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("rank,members,subspaces,pi_image,constant_fibers"));
    assert_eq!(text.lines().nth(3), Some("2,240,35,35,false"));
}

#[test]
fn jm_and_survey() {
    let out = run(&["jm", "--n", "2", "--q", "3", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("m  alpha  size"));
    let s = run(&["survey-re", "--n", "2", "--q", "3"]);
    assert_eq!(json(&s)["rows"].as_array().unwrap().len(), 3);
    assert_eq!(run(&["survey-re", "--n", "4", "--q", "3"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["count", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--n", "2", "--q", "6", "--len", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--n", "2", "--q", "3", "--len", "2", "--target", "key"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["hurwitz", "--n", "2", "--q", "5", "--len", "3"];
    let a = run(&args).stdout;
    let b = Command::new(env!("CARGO_BIN_EXE_singerfact"))
        .args(args)
        .env("SINGERFACT_THREADS", "1")
        .output()
        .unwrap()
        .stdout;
    assert_eq!(a, b);
}

#[test]
fn repro_summary() {
    let out = run(&["repro"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 12);
    assert_eq!(v["pass"], true);
    assert!(v["criteria"][5]["skipped"].as_array().is_some());
}
