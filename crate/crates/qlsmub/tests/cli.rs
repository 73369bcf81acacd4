use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qlsmub"));
    c.env_remove("QLSMUB_JOBS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("run qlsmub")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn workdir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn emit(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{name}.json"));
    let o = run(&["fixtures", "emit", name, "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path.to_str().unwrap().to_owned()
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json-report"];
    all.extend_from_slice(args);
    let o = run(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

#[test]
fn fixture_bases_are_unbiased() {
    let dir = workdir("mub");
    let (p, q, h) = (emit(&dir, "paper-P"), emit(&dir, "paper-Q"), emit(&dir, "hadamard-9-corrected"));
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for (grid, out) in [(&p, &a), (&q, &b)] {
        let o = run(&["build-meb", grid, &h, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (code, v) = report(&["check-mub", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["details"]["count"], 6561);
    for key in ["min", "max"] {
        assert!((v["details"][key].as_f64().unwrap() - 1.0 / 81.0).abs() < 1e-12);
    }
}

#[test]
fn printed_hadamard_is_rejected() {
    let dir = workdir("hadamard");
    let h = emit(&dir, "hadamard-9-printed");
    let o = run(&["validate-hadamard", &h]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rows 3,4"), "{}", stdout(&o));
}

#[test]
fn printed_grids_fail_validation() {
    let dir = workdir("printed");
    for name in ["paper-P-printed", "paper-Q-printed"] {
        let g = emit(&dir, name);
        assert_eq!(run(&["validate-qls", &g]).status.code(), Some(1), "{name}");
    }
    let g = emit(&dir, "paper-P");
    assert_eq!(run(&["validate-qls", &g]).status.code(), Some(0));
}

#[test]
fn left_conjugate_twice_is_identity() {
    let dir = workdir("conj");
    let latin = dir.join("l.json");
    std::fs::write(&latin, r#"{"format":"qlsmub/1","kind":"latin","n":3,"cells":[[0,2,1],[1,0,2],[2,1,0]]}"#).unwrap();
    let conj = |input: &Path, output: &str| {
        let o = run(&["left-conj", input.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::write(dir.join(output), &o.stdout).unwrap();
        o.stdout
    };
    let once = conj(&latin, "once.json");
    let twice = conj(&dir.join("once.json"), "twice.json");
    let thrice = conj(&dir.join("twice.json"), "thrice.json");
    assert_eq!(once, thrice);
    assert_ne!(once, twice);
    let v: Value = serde_json::from_slice(&twice).unwrap();
    assert_eq!(v["cells"], serde_json::json!([[0, 2, 1], [1, 0, 2], [2, 1, 0]]));
    // a canonical document survives two conjugations byte for byte
    let fourth = conj(&dir.join("thrice.json"), "fourth.json");
    assert_eq!(fourth, twice);
}

#[test]
fn malformed_input_exits_2() {
    let dir = workdir("malformed");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["validate-qls", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&bad, r#"{"format":"qlsmub/9","kind":"latin","n":1,"cells":[[0]]}"#).unwrap();
    assert_eq!(run(&["left-conj", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&bad, r#"{"format":"qlsmub/1","kind":"latin","n":2,"cells":[[0,0],[1,1]]}"#).unwrap();
    assert_eq!(run(&["left-conj", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["validate-qls", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["fixtures", "emit", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["search", "latin", "6"]).status.code(), Some(2));
}

#[test]
fn reports_do_not_depend_on_job_count() {
    let dir = workdir("jobs");
    let (p, h) = (emit(&dir, "paper-P"), emit(&dir, "hadamard-9-corrected"));
    let meb = dir.join("meb.json");
    assert_eq!(run(&["build-meb", &p, &h, "--out", meb.to_str().unwrap()]).status.code(), Some(0));
    let ueb = dir.join("ueb.json");
    assert_eq!(
        run(&["dual", "--to-ueb", meb.to_str().unwrap(), "--out", ueb.to_str().unwrap()]).status.code(),
        Some(0)
    );
    let cases: [&[&str]; 3] = [
        &["monomial-obstruction", ueb.to_str().unwrap()],
        &["search", "lemma16", "3"],
        &["reproduce-appendix-c"],
    ];
    for args in cases {
        let outputs: Vec<Vec<u8>> = ["1", "4"]
            .iter()
            .map(|jobs| {
                bin().env("QLSMUB_JOBS", jobs).args(["--format", "json-report"]).args(args).output().unwrap().stdout
            })
            .collect();
        assert_eq!(outputs[0], outputs[1], "{args:?}");
    }
}

#[test]
fn obstruction_report_names_worst_pair() {
    let dir = workdir("obstruction");
    let (p, h) = (emit(&dir, "paper-P"), emit(&dir, "hadamard-9-corrected"));
    let meb = dir.join("meb.json");
    run(&["build-meb", &p, &h, "--out", meb.to_str().unwrap()]);
    let ueb = dir.join("ueb.json");
    run(&["dual", "--to-ueb", meb.to_str().unwrap(), "--out", ueb.to_str().unwrap()]);
    let (code, v) = report(&["--jobs", "2", "monomial-obstruction", ueb.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["mu"], 2520);
    assert_eq!(v["details"]["worst_pair"], serde_json::json!([25, 26]));
    let (code, _) = report(&["check-ueb", ueb.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn reproduce_and_search() {
    let (code, v) = report(&["reproduce-appendix-c"]);
    assert_eq!((code, v["pass"].clone()), (0, Value::Bool(true)));
    let (code, v) = report(&["search", "lemma16", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    let o = run(&["search", "orth-pairs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["fixtures", "list"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("  ")).count(), 9);
}
