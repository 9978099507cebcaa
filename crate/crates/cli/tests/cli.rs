use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use tempfile::TempDir;
use toricarr::arrangement::{reduce_span, Arrangement};
use toricarr::fan::{make_orthant_fan, Fan};
use toricarr::subdiv::SubdivisionTrace;
use toricarr_cli::run_with;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(std::iter::once("toricarr").chain(args.iter().copied()), &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn octant_example(dir: &TempDir) -> (PathBuf, PathBuf) {
    let arr = write(
        dir,
        "arr.json",
        &json!({"rank": 3, "layers": [
            {"gamma": [[3, 0, -2]], "values": [{"torsion": "0", "generic": []}]},
            {"gamma": [[2, 1, -1]], "values": [{"torsion": "1/2", "generic": []}]}
        ]}),
    );
    let oct = write(
        dir,
        "oct.json",
        &json!({"rank": 3, "rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "maximal_cones": [[0, 1, 2]]}),
    );
    (arr, oct)
}

#[test]
fn subdivide_then_verify() {
    let dir = TempDir::new().unwrap();
    let (arr, oct) = octant_example(&dir);
    let fan = dir.path().join("fan.json");
    let r = run(&["subdivide", "--input", s(&arr), "--base", s(&oct), "--output", s(&fan)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let r = run(&["verify", "--fan", s(&fan), "--input", s(&arr), "--base", s(&oct)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["ok"], json!(true));
    assert_eq!(report["subdivision"], json!(true));

    // the output parses back to the same fan
    let f: Fan = serde_json::from_str(&fs::read_to_string(&fan).unwrap()).unwrap();
    assert_eq!(serde_json::to_value(f.canonical()).unwrap(), serde_json::from_str::<Value>(&fs::read_to_string(&fan).unwrap()).unwrap());
    assert_eq!(f.maximal_frames().len(), 5);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (arr, oct) = octant_example(&dir);
    let a = run(&["subdivide", "--input", s(&arr), "--base", s(&oct)]);
    let b = run(&["subdivide", "--input", s(&arr), "--base", s(&oct), "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let fan = write(&dir, "fan.json", &serde_json::from_str(&a.stdout).unwrap());
    for cmd in ["strata", "building", "schedule", "nested"] {
        let x = run(&[cmd, "--fan", s(&fan), "--input", s(&arr)]);
        let y = run(&[cmd, "--fan", s(&fan), "--input", s(&arr)]);
        assert_eq!(x.code, 0, "{cmd}: {}", x.stderr);
        assert_eq!(x.stdout, y.stdout);
    }
    let dot = run(&["strata", "--fan", s(&fan), "--input", s(&arr), "--format", "dot"]);
    assert!(dot.stdout.starts_with("digraph"));
}

#[test]
fn trace_is_in_original_coordinates() {
    let dir = TempDir::new().unwrap();
    let (arr, _) = octant_example(&dir);
    let trace = dir.path().join("trace.json");
    let r = run(&["subdivide", "--input", s(&arr), "--trace", s(&trace)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let out: Fan = serde_json::from_str(&r.stdout).unwrap();
    let t: SubdivisionTrace = serde_json::from_str(&fs::read_to_string(&trace).unwrap()).unwrap();
    let a: Arrangement = serde_json::from_str(&fs::read_to_string(&arr).unwrap()).unwrap();
    let (_, eta) = reduce_span(&a).unwrap();
    let start = make_orthant_fan(3).transformed(&eta.inverse().unwrap()).unwrap();
    assert_eq!(t.replay(&start).unwrap().canonical(), out.canonical());
    let r = run(&["verify", "--fan", &write(&dir, "out.json", &serde_json::from_str(&r.stdout).unwrap()).to_string_lossy(), "--input", s(&arr)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn betti_of_a_complete_fan() {
    let dir = TempDir::new().unwrap();
    let fan = write(&dir, "fan.json", &serde_json::to_value(make_orthant_fan(2)).unwrap());
    let r = run(&["betti", "--input", s(&fan)]);
    assert_eq!(r.code, 0);
    assert_eq!(serde_json::from_str::<Value>(&r.stdout).unwrap(), json!([1, 2, 1]));
    let half = write(&dir, "half.json", &json!({"rank": 2, "rays": [[1, 0], [0, 1]], "maximal_cones": [[0, 1]]}));
    assert_eq!(run(&["betti", "--input", s(&half)]).code, 1);
}

#[test]
fn single_point_has_two_nested_sets() {
    let dir = TempDir::new().unwrap();
    let fan = write(&dir, "fan.json", &json!({"rank": 1, "rays": [], "maximal_cones": [[]]}));
    let arr = write(&dir, "arr.json", &json!({"rank": 1, "layers": [{"gamma": [[1]], "values": [{"torsion": "0", "generic": []}]}]}));
    let r = run(&["nested", "--fan", s(&fan), "--input", s(&arr)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["nested_sets"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let (arr, oct) = octant_example(&dir);
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["subdivide", "--input", s(&missing)]).code, 2);
    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(run(&["subdivide", "--input", s(&garbage)]).code, 2);
    let zero = write(&dir, "zero.json", &json!({"rank": 2, "layers": [{"gamma": [[0, 0]], "values": [{"torsion": "0", "generic": []}]}]}));
    assert_eq!(run(&["subdivide", "--input", s(&zero)]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);

    // the octant itself fails the check for (3,0,−2)
    let r = run(&["verify", "--fan", s(&oct), "--input", s(&arr)]);
    assert_eq!(r.code, 1);
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["violations"].as_array().unwrap().len(), 2);
    assert!(report["violations"][0]["two_cone"].is_array());

    // strata need property (E)
    assert_eq!(run(&["strata", "--fan", s(&oct), "--input", s(&arr)]).code, 1);

    let r = run(&["subdivide", "--input", s(&arr), "--base", s(&oct)]);
    let fan = write(&dir, "fan.json", &serde_json::from_str(&r.stdout).unwrap());
    let bogus = write(&dir, "g.json", &json!([9999]));
    assert_eq!(run(&["nested", "--fan", s(&fan), "--input", s(&arr), "--building", s(&bogus)]).code, 2);
    let cap = run(&["nested", "--fan", s(&fan), "--input", s(&arr), "--cap", "1"]);
    assert_eq!(cap.code, 1);
    assert!(!cap.stderr.is_empty());
}

#[test]
fn small_examples() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.json", &json!({"rank": 2, "layers": []}));
    let r = run(&["subdivide", "--input", s(&empty)]);
    assert_eq!(r.code, 0);
    let f: Fan = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(f, make_orthant_fan(2).canonical());

    let two = write(
        &dir,
        "two_chars.json",
        &json!({"rank": 2, "layers": [
            {"gamma": [[1, 0]], "values": [{"torsion": "0", "generic": []}]},
            {"gamma": [[1, 2]], "values": [{"torsion": "0", "generic": []}]}
        ]}),
    );
    let r = run(&["subdivide", "--input", s(&two)]);
    let fan = write(&dir, "two_chars_fan.json", &serde_json::from_str(&r.stdout).unwrap());
    let f: Fan = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(f.rays().len(), 8);
    let r = run(&["betti", "--input", s(&fan)]);
    assert_eq!(serde_json::from_str::<Value>(&r.stdout).unwrap(), json!([1, 6, 1]));

    let p1 = write(&dir, "p1.json", &json!({"rank": 1, "rays": [[1], [-1]], "maximal_cones": [[0], [1]]}));
    let none = write(&dir, "none.json", &json!({"rank": 1, "layers": []}));
    let r = run(&["strata", "--fan", s(&p1), "--input", s(&none)]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["strata"].as_array().unwrap().len(), 3);
    assert_eq!(run(&["verify", "--fan", s(&p1), "--input", s(&none)]).code, 0);

    let (arr, oct) = octant_example(&dir);
    let r = run(&["verify", "--fan", s(&oct), "--input", s(&arr)]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["violations"][0]["two_cone"], json!([[1, 0, 0], [0, 0, 1]]));
}
