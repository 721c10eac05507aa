use std::process::{Command, Output};

use serde_json::Value;

fn ltoral(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ltoral")).args(args).env_remove("LTORAL_BUDGET").output().expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

#[test]
fn chartab_c3_is_three_by_three() {
    let out = ltoral(&["chartab", "C3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["integers"]["characters"], 3);
    assert_eq!(r["data"]["values"].as_array().unwrap().len(), 3);
    assert_eq!(r["engine_version"], ltoral::ENGINE_VERSION);
}

#[test]
fn thev_s5_chain() {
    let out = ltoral(&["lemma", "thev", "S5", "--ell", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    let links = r["chains"][0]["links"].as_array().unwrap();
    let mut vals: Vec<i64> = links.iter().map(|l| l["lhs"].as_i64().unwrap()).collect();
    vals.push(links.last().unwrap()["rhs"].as_i64().unwrap());
    assert_eq!(vals, vec![5, 5, 5, 5]);
}

#[test]
fn awc_family_a_five() {
    let out = ltoral(&["awc", "--family", "A", "--ell", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["integers"]["w"], 5);
    assert_eq!(r["integers"]["irr_W"], 5);
}

#[test]
fn errors_are_records_with_status_two() {
    let out = ltoral(&["chartab", "C3 x Q8"]);
    assert_eq!(out.status.code(), Some(2));
    let r = &records(&out)[0];
    assert_eq!(r["error"], "UnknownAtom");
    assert_eq!(r["position"], 5);

    let out = ltoral(&["--budget", "10", "chartab", "S5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(records(&out)[0]["error"], "BudgetExceeded");

    let out = ltoral(&["awc"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(records(&out)[0]["error"], "ArgumentError");
}

#[test]
fn failing_verdict_exits_one() {
    // the root-lattice family A tower has m = 6, r = 9
    let out = ltoral(&["am", "--family", "A", "--ell", "3", "--levels", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let r = &records(&out)[0];
    assert_eq!(r["integers"]["n1.m_count"], 6);
    assert_eq!(r["integers"]["n1.r_count"], 9);
    let out = ltoral(&["am", "--family", "A", "--ell", "3", "--lattice", "coweight", "--levels", "1"]);
    assert_eq!(records(&out)[0]["integers"]["n1.m_count"], 9);
}

#[test]
fn reports_are_byte_stable() {
    let args = ["connectivity", "--preset", "G2", "--levels", "1..2"];
    let a = ltoral(&args);
    let b = ltoral(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(records(&a).len(), 2);
    let timed = ltoral(&["--timing", "chartab", "C3"]);
    assert!(records(&timed)[0]["duration_ms"].is_u64());
    assert!(records(&ltoral(&["chartab", "C3"]))[0].get("duration_ms").is_none());
}

#[test]
fn tsv_output() {
    let out = ltoral(&["--format", "tsv", "lemma", "little", "S3", "--normal", "C3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("record\tcommand\tkind\tname\tvalue"));
    assert!(text.lines().all(|l| l.split('\t').count() == 5));
    assert!(text.contains("\tpass\t\ttrue"));
}

#[test]
fn sweep_from_file_with_output() {
    let dir = std::env::temp_dir().join(format!("ltoral-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("am.json");
    let out_path = dir.join("am.jsonl");
    std::fs::write(
        &cfg,
        serde_json::json!({"command": "am", "presets": ["G2"], "levels": "1..2", "output": out_path}).to_string(),
    )
    .unwrap();
    let out = ltoral(&["sweep", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let recs: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[0]["cell"]["level"], 1);
    assert_eq!(recs[2]["summary"]["pass"], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn group_files() {
    let dir = std::env::temp_dir().join(format!("ltoral-cli-files-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("s3.json");
    std::fs::write(&f, r#"{"kind": "perm", "generators": [[1, 0, 2], [1, 2, 0]]}"#).unwrap();
    let spec = format!("@{}", f.display());
    let out = ltoral(&["chartab", &spec]);
    assert_eq!(records(&out)[0]["integers"]["order"], 6);
    let out = ltoral(&["lemma", "little", &spec, "--normal", "C3"]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}
