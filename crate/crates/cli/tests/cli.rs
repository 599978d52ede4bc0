use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const SIERPINSKI: &str = "space S 2\nreach 1 0\n";
const CIRCLE: &str = "space C 4\nreach 2 0\nreach 2 1\nreach 3 0\nreach 3 1\n";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_secnum"));
    c.env_remove("SECNUM_BUDGET");
    c
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn compute_cat_and_fpp() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.finsp", CIRCLE);
    let out = bin()
        .args(["compute", "--invariant", "cat", "--input"])
        .arg(&c)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["value"], 2);
    let out = bin()
        .args(["compute", "--invariant", "fpp", "--input"])
        .arg(&c)
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"], serde_json::json!([1, 0, 3, 2]));
}

#[test]
fn compute_sec_with_a_map_file_repeating_the_space() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.finsp", SIERPINSKI);
    let m = write(
        dir.path(),
        "top.fmap",
        &format!("{SIERPINSKI}space P 1\nmap top P S\nsend 0 1\n"),
    );
    let out = bin()
        .args(["compute", "--invariant", "sec", "--input"])
        .arg(&s)
        .arg("--map")
        .arg(&m)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["value"], "infinite");
    assert_eq!(v["result"]["schema"], "secnum.cover-certificate/1");
}

#[test]
fn relative_routes_agree_on_the_sierpinski_instance() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "p.fmap",
        &format!("{SIERPINSKI}space F 2\nmap pi F S\nsend 0 0\nsend 1 1\n"),
    );
    let g = write(
        dir.path(),
        "g.fmap",
        &format!("{SIERPINSKI}map id S S\nsend 0 0\nsend 1 1\n"),
    );
    let out = bin()
        .args(["relative", "--invariant", "sec", "--route", "both", "--p"])
        .arg(&p)
        .arg("--g")
        .arg(&g)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["routes_agree"], true);
    assert_eq!(v["value"], "infinite");
}

#[test]
fn check_main_theorem_off_hypothesis() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.finsp", SIERPINSKI);
    let g = write(
        dir.path(),
        "g.fmap",
        &format!("{SIERPINSKI}map id S S\nsend 0 0\nsend 1 1\n"),
    );
    let out = bin()
        .args(["check", "--claim", "main-theorem", "--x"])
        .arg(&s)
        .arg("--y")
        .arg(&s)
        .arg("--g")
        .arg(&g)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["quantities"]["cp"], true);
    assert_eq!(v["quantities"]["sec_g"], "infinite");
    assert_eq!(v["conclusions"][0]["status"], "hypothesis-not-met");
}

#[test]
fn check_rejects_a_map_between_other_spaces() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.finsp", SIERPINSKI);
    let c = write(dir.path(), "c.finsp", CIRCLE);
    let g = write(
        dir.path(),
        "g.fmap",
        &format!("{SIERPINSKI}map id S S\nsend 0 0\nsend 1 1\n"),
    );
    let out = bin()
        .args(["check", "--claim", "remark", "--x"])
        .arg(&s)
        .arg("--y")
        .arg(&c)
        .arg("--g")
        .arg(&g)
        .output()
        .unwrap();
    assert_eq!(code(&out), 4);
}

#[test]
fn census_output_parses_back() {
    let out = bin()
        .args(["census", "--max-points", "3", "--posets-only"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let doc = secnum_core::format::Document::parse(&text).unwrap();
    assert_eq!(doc.spaces().len(), 1 + 1 + 2 + 5);
    assert_eq!(
        code(
            &bin()
                .args(["census", "--max-points", "5"])
                .output()
                .unwrap()
        ),
        4
    );
    let out = bin()
        .args(["census", "--max-points", "5", "--extended", "--posets-only"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn input_errors_exit_with_four() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.finsp", "space S 2\nreach 0 7\n");
    let out = bin()
        .args(["compute", "--invariant", "cat", "--input"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let missing = dir.path().join("nope.finsp");
    assert_eq!(
        code(
            &bin()
                .args(["compute", "--invariant", "cat", "--input"])
                .arg(&missing)
                .output()
                .unwrap()
        ),
        4
    );
}

#[test]
fn suite_with_tiny_config_and_starved_budget() {
    let dir = tempfile::tempdir().unwrap();
    let tiny = r#"{"census_points": 2, "space_census_points": 2, "map_census_points": 2,
        "hausdorff_points": 2, "key_lemma_points": 3, "domain_points": 2, "random_points": 2,
        "instances": 5, "tc_instances": 5}"#;
    let cfg = write(dir.path(), "tiny.json", tiny);
    let out_path = dir.path().join("r.json");
    let out = bin()
        .args(["suite", "--seed", "3", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["totals"]["violated"], 0);
    assert_eq!(report["config"]["seed"], 3);
    assert!(dir.path().join("r.json.timings.json").exists());

    let out = bin()
        .env("SECNUM_BUDGET", "1")
        .args(["suite", "--seed", "3", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert!(report["totals"]["inconclusive"].as_u64().unwrap() > 0);

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"instances": 5, "colour": "red"}"#,
    );
    assert_eq!(
        code(
            &bin()
                .args(["suite", "--seed", "1", "--config"])
                .arg(&bad)
                .arg("--out")
                .arg(&out_path)
                .output()
                .unwrap()
        ),
        4
    );
}
