use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use loopbank::filters::{check_qmf, filters_to_loop};
use loopbank::polyloop::{compose, diagonal_monomial_loop};
use loopbank::sample::Sampler;
use loopbank::ElementaryFactor;
use loopbank_cli::doc::{parse_bank, parse_loop, LoopDocument};
use serde_json::Value;
use tempfile::TempDir;

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_loopbank"));
    c.env_remove("LOOPBANK_TOL");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_kind(o: &Output) -> String {
    let v: Value = serde_json::from_slice(&o.stderr).expect("stderr is a JSON error object");
    v["error"].as_str().unwrap().to_string()
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn loop_file(&self, name: &str, a: &loopbank::PolyLoop) -> PathBuf {
        self.file(name, &serde_json::to_string(&LoopDocument::from_loop(a)).unwrap())
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn haar_bank() -> String {
    format!(r#"{{"schema_version":"1","n":2,"filters":[[[{S},0],[{S},0]],[[{S},0],[-{S},0]]]}}"#)
}

#[test]
fn haar_bank_transforms_to_constant_loop_and_back() {
    let d = Dir::new();
    let bank = d.file("haar.json", &haar_bank());
    let out = run(&["transform", s(&bank)]);
    assert!(out.status.success());
    let doc = parse_loop(&stdout(&out)).unwrap();
    assert_eq!((doc.n, doc.genus), (2, 1));
    assert_eq!(doc.coeffs[0][1][1], [-S, 0.0]);

    let lp = d.file("loop.json", &stdout(&out));
    let back = run(&["transform", s(&lp)]);
    assert_eq!(parse_bank(&stdout(&back)).unwrap(), parse_bank(&haar_bank()).unwrap());
}

#[test]
fn stdin_and_out_flag() {
    let d = Dir::new();
    let target = d.0.path().join("out.json");
    let mut child =
        bin().args(["transform", "-", "--out", s(&target)]).stdin(std::process::Stdio::piped()).spawn().unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(haar_bank().as_bytes()).unwrap();
    assert!(child.wait().unwrap().success());
    assert_eq!(parse_loop(&std::fs::read_to_string(target).unwrap()).unwrap().genus, 1);
}

#[test]
fn malformed_json_is_a_schema_error() {
    let d = Dir::new();
    let bad = d.file("bad.json", "{\"schema_version\": \"1\", \"n\": ");
    let out = run(&["transform", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "schema");
}

#[test]
fn missing_file_is_reported() {
    let out = run(&["degree", "/nonexistent/loop.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "io");
}

#[test]
fn completion_examples() {
    let d = Dir::new();
    let haar = d.file("m0.json", &format!(r#"{{"schema_version":"1","m0":[[{S},0],[{S},0]]}}"#));
    let out = run(&["complete", s(&haar), "--n", "2"]);
    assert!(out.status.success());
    let bank = parse_bank(&stdout(&out)).unwrap().to_bank().unwrap();
    assert!(check_qmf(&bank, 1e-12).pass);

    let one = d.file("one.json", r#"{"schema_version":"1","n":2,"m0":[[1,0]]}"#);
    let out = run(&["complete", s(&one)]);
    assert!(out.status.success());
    assert!(check_qmf(&parse_bank(&stdout(&out)).unwrap().to_bank().unwrap(), 1e-12).pass);

    let bad = d.file("bad.json", r#"{"schema_version":"1","n":2,"m0":[[1,0],[1,0]]}"#);
    let out = run(&["complete", s(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_kind(&out), "precondition");
}

#[test]
fn degree_and_factorization() {
    let d = Dir::new();
    let diag = d.loop_file("diag.json", &diagonal_monomial_loop(&[0, 1]));
    assert_eq!(stdout(&run(&["degree", s(&diag)])), "1\n");
    let f: Value = serde_json::from_str(&stdout(&run(&["factorize", s(&diag)]))).unwrap();
    assert_eq!(f["degree"], 1);
    assert_eq!(f["rank_one_projections"].as_array().unwrap().len(), 1);

    let mut smp = Sampler::new(7);
    let factors: Vec<_> =
        smp.rank_one_projections(3, 5).into_iter().map(|p| ElementaryFactor::new(p).unwrap()).collect();
    let a = compose(&factors, &smp.unitary(3)).unwrap();
    let five = d.loop_file("five.json", &a);
    assert_eq!(stdout(&run(&["degree", s(&five)])), "5\n");
    let f: Value = serde_json::from_str(&stdout(&run(&["factorize", s(&five)]))).unwrap();
    assert_eq!(f["rank_one_projections"].as_array().unwrap().len(), 5);
}

#[test]
fn non_unitary_input_exits_2() {
    let d = Dir::new();
    let p = d.file("nu.json", r#"{"schema_version":"1","n":2,"genus":1,"coeffs":[[[[1,0],[0,0]],[[0,0],[2,0]]]]}"#);
    let out = run(&["degree", s(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "validation");
}

#[test]
fn tolerance_from_flag_and_environment() {
    let d = Dir::new();
    let c = (1.0f64 - 1e-14).sqrt() * 0.999_999_9;
    let p = d.file("near.json", &format!(r#"{{"schema_version":"1","n":1,"genus":1,"coeffs":[[[[{c},0]]]]}}"#));
    assert_eq!(run(&["degree", s(&p)]).status.code(), Some(2));
    assert!(run(&["degree", s(&p), "--tol", "1e-6"]).status.success());
    let out = bin().args(["degree", s(&p)]).env("LOOPBANK_TOL", "1e-6").output().unwrap();
    assert!(out.status.success());
}

#[test]
fn analyze_examples() {
    let d = Dir::new();
    let diag = d.loop_file("diag.json", &diagonal_monomial_loop(&[0, 1]));
    let r: Value = serde_json::from_str(&stdout(&run(&["analyze-rep", s(&diag)]))).unwrap();
    assert_eq!(r["lambda0"], 1.0);
    assert!(r["reduction"].is_object());
    assert!(r["cuntz_states"].as_array().unwrap().iter().any(|st| st["k"] == 0 && st["v"][0][0] == 1.0));

    let g2 = d.loop_file("g2.json", &Sampler::new(11).genus_loop(3, 2));
    let r: Value = serde_json::from_str(&stdout(&run(&["analyze-rep", s(&g2)]))).unwrap();
    assert_eq!(r["irreducible"], true);
    assert!(r["genus_two"].is_object());

    let anti = d.file(
        "anti.json",
        r#"{"schema_version":"1","n":2,"genus":2,"coeffs":[[[[0,0],[1,0]],[[0,0],[0,0]]],[[[0,0],[0,0]],[[1,0],[0,0]]]]}"#,
    );
    let out = run(&["analyze-rep", s(&anti), "--against", s(&anti)]);
    assert!(out.status.success());
    let r: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(r["intertwiner"]["dimension"], 2);
    assert_eq!(r["fixed_dimension"], 2);
}

#[test]
fn cascade_examples() {
    let d = Dir::new();
    let haar = d.file("haar.json", &haar_bank());
    let csv = d.0.path().join("haar.csv");
    let out = run(&["cascade", s(&haar), "--iterations", "4", "--csv", s(&csv)]);
    assert!(out.status.success());
    let table = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = table.lines().skip(1).collect();
    assert_eq!(rows.len(), 32);
    assert!(rows[..16].iter().all(|r| r.ends_with(",1,0,1,0")));
    assert!(rows[16..].iter().all(|r| r.ends_with(",1,0,-1,0")));

    // completed N = 2, g = 2 bank
    let a = Sampler::new(3).lowpass_loop(2, 2);
    let bank = loopbank::filters::loop_to_filters(&a);
    let m0: Vec<[f64; 2]> = bank.filter(0).coeffs().iter().map(|z| [z.re, z.im]).collect();
    let m0 = d.file("m0.json", &serde_json::json!({"schema_version": "1", "n": 2, "m0": m0}).to_string());
    let done = d.file("bank.json", &stdout(&run(&["complete", s(&m0)])));
    let out = run(&["cascade", s(&done)]);
    assert!(out.status.success());
    let r: Value = serde_json::from_str(&stdout(&out)).unwrap();
    for f in r["functions"].as_array().unwrap() {
        assert_eq!(f["support"]["within_window"], true);
        assert_eq!(f["support"]["window"][1], 3.0);
    }

    // QMF bank without the low-pass property
    let shift = d.file("shift.json", r#"{"schema_version":"1","n":2,"filters":[[[1,0]],[[0,0],[1,0]]]}"#);
    let out = run(&["cascade", s(&shift)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let d = Dir::new();
    let a = Sampler::new(5).genus_loop(4, 3);
    let p = d.loop_file("a.json", &a);
    let once = stdout(&run(&["transform", s(&p)]));
    assert_eq!(once, stdout(&run(&["transform", s(&p)])));
    let b = d.file("b.json", &once);
    let back = stdout(&run(&["transform", s(&b)]));
    assert_eq!(back.trim_end(), std::fs::read_to_string(&p).unwrap());
    let bank = parse_bank(&once).unwrap().to_bank().unwrap();
    assert_eq!(filters_to_loop(&bank, 1e-9).unwrap().coeffs(), a.coeffs());
}
