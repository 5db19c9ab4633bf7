use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name).to_string_lossy().into_owned()
}

fn finring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finring")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decompose_z6() {
    let o = finring(&["decompose", &corpus("z6.ring")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[(1,2)^1, (1,3)^1]\n");
}

#[test]
fn non_semisimple_is_invalid_input() {
    let o = finring(&["decompose", &corpus("z4.ring")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not semisimple"));
}

#[test]
fn nil_report_of_free_nil_level() {
    let o = finring(&["--format", "json", "nil", &corpus("freenil_p2_g2.ring")]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["nilexponent"], 2);
    assert_eq!(v["report"]["nilpotency_class"], 3);
}

#[test]
fn radical_and_aut() {
    let o = finring(&["--format", "json", "radical", &corpus("z12.ring")]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["radical"]["order"], "2");
    assert_eq!(v["maximal_ideals_agree"], true);

    let o = finring(&["--format", "json", "aut", &corpus("m2_f2.ring")]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 6);
    assert_eq!(finring(&["aut", &corpus("m2_f2.ring"), "--budget", "1"]).status.code(), Some(3));
}

#[test]
fn orbits_and_bounds() {
    let o = finring(&["--format", "json", "orbits", &corpus("z2.ring"), "-m", "3", "-n", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["orbit_count"], "4");
    let o = finring(&["--format", "json", "bounds", "-m", "3", "-s", "5"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["k_bound"], 4);
    assert_eq!(v["w_degree"], 8);
}

#[test]
fn freenil_dump_matches_corpus_file() {
    let o = finring(&["freenil", "-p", "2", "-g", "2"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(corpus("freenil_p2_g2.ring")).unwrap());
    let o = finring(&["freenil", "-p", "3", "-g", "1", "--tower", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("system: pass"));
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ring");
    std::fs::write(&bad, "ring x\nmoduli 2 z\n").unwrap();
    let o = finring(&["nil", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 10"));

    let na = dir.path().join("na.ring");
    std::fs::write(&na, "ring x\nmoduli 2 2\nmul 0 0 : 0 1\nmul 1 0 : 1 0\n").unwrap();
    let o = finring(&["nil", na.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(e_0*e_0)*e_0"));
    assert_eq!(finring(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_and_formats_agree() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let args = ["--format", "json", "--out", out.to_str().unwrap(), "verify", "decomposition-roundtrip", "--seed", "7"];
    assert_eq!(finring(&args).status.code(), Some(0));
    let first = std::fs::read(&out).unwrap();
    assert_eq!(finring(&args).status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), first);

    let v: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    let json_cases: Vec<(String, String)> = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["id"].as_str().unwrap().to_string(), c["verdict"].as_str().unwrap().to_string()))
        .collect();
    let text = stdout(&finring(&["verify", "decomposition-roundtrip", "--seed", "7"]));
    let text_cases: Vec<(String, String)> = text
        .lines()
        .skip(1)
        .filter_map(|l| {
            let mut parts = l.split_whitespace();
            let verdict = parts.next()?;
            let id = parts.next()?;
            matches!(verdict, "pass" | "fail" | "skip").then(|| (id.to_string(), verdict.to_string()))
        })
        .collect();
    assert_eq!(json_cases, text_cases);
}

#[test]
fn verify_against_shipped_corpus_files() {
    let dir = corpus("");
    let o = finring(&["verify", "radical-agreement", "--corpus", &dir]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
