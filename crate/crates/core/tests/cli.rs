use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn gpdlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpdlab")).args(args).env_remove("GPDLAB_SEED").env("RUST_LOG", "warn").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_files() {
    let cases = [
        ("swap.json", "minimal: true, top-principal: true, blocks: [2], simple: true"),
        ("z2point.json", "minimal: true, top-principal: false, blocks: [1, 1], simple: false"),
        ("pair_plus_point.json", "minimal: false, top-principal: true, blocks: [2, 1], simple: false"),
        ("z4_through_swap.json", "minimal: true, top-principal: false, blocks: [2, 2], simple: false"),
        ("pair2.json", "minimal: true, top-principal: true, blocks: [2], simple: true"),
    ];
    for (file, first) in cases {
        let out = gpdlab(&["check", data(file).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        let text = stdout(&out);
        assert_eq!(text.lines().next(), Some(first), "{file}: {text}");
    }
    let out = gpdlab(&["check", data("pair_plus_point.json").to_str().unwrap()]);
    assert!(stdout(&out).contains("not minimal => not simple (invariant unit set"));
}

#[test]
fn norm_of_element_file() {
    let out = gpdlab(&["norm", data("pair2.json").to_str().unwrap(), data("element.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("norm: 2.288245611271"), "{text}");
    assert!(text.contains("i-norm: 3.000000000000"), "{text}");
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"group": {"preset": "Z2"}, "space": 2, "act": [[1, 0], [1, 0]]}"#).unwrap();
    assert_eq!(gpdlab(&["check", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(gpdlab(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(gpdlab(&["enumerate", "--bounds", "0,1,1,1"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let json = dir.path().join(format!("{tag}.json"));
        let csv = dir.path().join(format!("{tag}.csv"));
        let out = gpdlab(&[
            "verify", "--bounds", "4,2,2,2", "--samples", "5",
            "--out", json.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        (std::fs::read(json).unwrap(), std::fs::read(csv).unwrap())
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let out = Command::new(env!("CARGO_BIN_EXE_gpdlab"))
        .args(["verify", "--bounds", "2,2,1,2", "--samples", "2", "--suite", "axioms", "--out", json.to_str().unwrap()])
        .env("GPDLAB_SEED", "0x2A")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&json).unwrap()).unwrap();
    assert_eq!(report["seed"], 42);
}

#[test]
fn enumerate_counts() {
    let out = gpdlab(&["enumerate", "--bounds", "2,2,1,2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(rows.iter().any(|r| r["instance"] == "pair:2"));
    assert!(rows.iter().enumerate().all(|(i, r)| r["id"] == i));
}
