use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn biramsey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biramsey"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn emit(dir: &TempDir, name: &str) -> String {
    let path = dir.path().join(format!("{name}.json"));
    let p = path.to_str().unwrap();
    let o = biramsey(&["fixtures", "emit", name, "-o", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    p.to_string()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn verify_accepts_both_figures() {
    let dir = TempDir::new().unwrap();
    for name in ["figure1", "figure2"] {
        let o = biramsey(&["verify", &emit(&dir, name)]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("good coloring: red K_{2,2}-free, blue K_{3,3}-free"));
    }
}

#[test]
fn verify_rejects_a_flipped_bit_with_a_certificate() {
    let dir = TempDir::new().unwrap();
    let path = emit(&dir, "figure1");
    let mut w: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // add x_2 y_2: row 1, column 1
    let row = w["red_rows"][1].as_str().unwrap().to_string();
    let mut bytes = row.into_bytes();
    bytes[1] = b'1';
    w["red_rows"][1] = Value::String(String::from_utf8(bytes).unwrap());
    std::fs::write(&path, serde_json::to_string_pretty(&w).unwrap()).unwrap();

    let o = biramsey(&["verify", &path]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("rejected: red K_{2,2} on rows {x"), "{text}");

    let o = biramsey(&["--json", "--stable", "verify", &path]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["verdict"], "rejected");
    let cert = &v["stats"]["certificate"];
    assert_eq!(cert["rows"].as_array().unwrap().len(), 2);
    assert_eq!(cert["cols"].as_array().unwrap().len(), 2);
}

#[test]
fn search_exhausts_7_by_9() {
    let o = biramsey(&["search", "--m", "7", "--n", "9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("exhausted"));
}

#[test]
fn brm_five_is_twelve() {
    let o = biramsey(&["brm", "--m", "5", "--n-max", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("BR_5 = 12"));
    // one progress line per n on stderr
    assert_eq!(stderr(&o).lines().count(), 12);
}

#[test]
fn brm_small_m_does_not_exist() {
    let o = biramsey(&["--json", "--stable", "brm", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "does_not_exist");
}

#[test]
fn search_witnesses_round_trip_through_verify() {
    let dir = TempDir::new().unwrap();
    for (m, n) in [(2, 9), (3, 12), (4, 14), (5, 11), (6, 11), (7, 8)] {
        let path = dir.path().join(format!("w{m}x{n}.json"));
        let p = path.to_str().unwrap();
        let o = biramsey(&[
            "search",
            "--m",
            &m.to_string(),
            "--n",
            &n.to_string(),
            "--find-witness",
            p,
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let o = biramsey(&["verify", p]);
        assert_eq!(o.status.code(), Some(0), "({m},{n}): {}", stdout(&o));
    }
}

#[test]
fn zarankiewicz_reports_value_and_witness() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("z.json");
    let p = path.to_str().unwrap();
    let o = biramsey(&[
        "zarankiewicz",
        "--m",
        "4",
        "--n",
        "4",
        "--t",
        "2",
        "--witness",
        p,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("z((4,4), K_{2,2}) = 9"));
    assert!(Path::new(p).exists());

    let o = biramsey(&[
        "--json",
        "--stable",
        "zarankiewicz",
        "--m",
        "3",
        "--n",
        "3",
        "--t",
        "2",
    ]);
    assert_eq!(json(&o)["value"], 6);
}

#[test]
fn json_envelope_is_schema_stable() {
    let allowed: BTreeSet<&str> =
        ["command", "host", "verdict", "witness", "stats", "value"].into();
    let dir = TempDir::new().unwrap();
    let f1 = emit(&dir, "figure1");
    let cnf = dir.path().join("x.cnf");
    let runs: Vec<Vec<&str>> = vec![
        vec!["verify", &f1],
        vec!["search", "--m", "4", "--n", "8"],
        vec!["search", "--m", "5", "--n", "12"],
        vec!["zarankiewicz", "--m", "3", "--n", "4", "--t", "2"],
        vec!["brm", "--m", "4"],
        vec!["fixtures", "emit", "figure2"],
        vec![
            "encode-cnf",
            "--m",
            "3",
            "--n",
            "3",
            "-o",
            cnf.to_str().unwrap(),
        ],
    ];
    for args in runs {
        let mut full = vec!["--json", "--stable"];
        full.extend(&args);
        let a = biramsey(&full);
        let b = biramsey(&full);
        assert_eq!(stdout(&a), stdout(&b), "{args:?} not deterministic");
        let v = json(&a);
        let keys: BTreeSet<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert!(keys.is_subset(&allowed), "{args:?}: {keys:?}");
        for k in ["command", "host", "verdict"] {
            assert!(keys.contains(k), "{args:?} lacks {k}");
        }
        assert!(!stdout(&a).contains("elapsed_ms"));
    }
}

#[test]
fn encode_cnf_writes_dimacs() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("k414.cnf");
    let o = biramsey(&[
        "encode-cnf",
        "--m",
        "4",
        "--n",
        "14",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l == "p cnf 56 2002"));
    assert!(!text.contains('\r'));
}

#[test]
fn operational_failures_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"m\": 2, \"n\": 2, \"red_rows\": [\"10\"]").unwrap();
    let short = dir.path().join("short.json");
    std::fs::write(
        &short,
        r#"{"m": 2, "n": 2, "red_rows": ["10", "1"], "avoided_red": [2,2], "avoided_blue": [3,3]}"#,
    )
    .unwrap();
    let missing = dir.path().join("missing.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", bad.to_str().unwrap()],
        vec!["verify", short.to_str().unwrap()],
        vec!["verify", missing.to_str().unwrap()],
        vec!["zarankiewicz", "--m", "10", "--n", "10", "--t", "3"],
        vec!["search", "--m", "17", "--n", "3"],
        vec!["fixtures", "emit", "figure3"],
        vec!["search", "--m", "4"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = biramsey(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stdout(&o));
        assert!(!stderr(&o).is_empty());
    }
    let o = biramsey(&["zarankiewicz", "--m", "10", "--n", "10", "--t", "3"]);
    assert!(stderr(&o).contains("scale guard"), "{}", stderr(&o));
}
