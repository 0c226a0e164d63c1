use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use alexandrov::builders::star_gluing;
use alexandrov::io::{emit_metric, parse_metric};
use alexandrov::ConeMetric;
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alexandrov")).current_dir(dir).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const CUBE: &str = r#"{"points":[[0,0,0],[1,0,0],[0,1,0],[1,1,0],[0,0,1],[1,0,1],[0,1,1],[1,1,1]]}"#;
const TETRA: &str = r#"{"points":[[0,0,0],[2,0,0],[0,1.5,0],[0.3,0.4,1.2]]}"#;
const SQUARE: &str = r#"{"polygon":[[0,0],[1,0],[1,1],[0,1]]}"#;

fn setup() -> TempDir {
    let d = TempDir::new().unwrap();
    fs::write(d.path().join("cube.points.json"), CUBE).unwrap();
    fs::write(d.path().join("tetra.points.json"), TETRA).unwrap();
    fs::write(d.path().join("square.json"), SQUARE).unwrap();
    d
}

#[test]
fn iota_then_validate() {
    let d = setup();
    let o = run(d.path(), &["iota", "cube.points.json", "--out", "cube.metric.json", "--obj", "cube.obj"]);
    assert_eq!(code(&o), 0);
    let m: ConeMetric<f64> = parse_metric(&fs::read_to_string(d.path().join("cube.metric.json")).unwrap()).unwrap();
    assert_eq!(m.essential_vertices().len(), 8);
    let obj = fs::read_to_string(d.path().join("cube.obj")).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 6);
    let o = run(d.path(), &["validate", "cube.metric.json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("8 cone points"));
}

#[test]
fn embed4_writes_a_tetrahedron() {
    let d = setup();
    assert_eq!(code(&run(d.path(), &["iota", "tetra.points.json", "--out", "tetra.metric.json"])), 0);
    let o = run(d.path(), &["embed4", "tetra.metric.json", "--obj", "out.obj"]);
    assert_eq!(code(&o), 0);
    let obj = fs::read_to_string(d.path().join("out.obj")).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 4);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 4);
    assert!(stdout(&o).contains("\"degenerate\":false"));
}

#[test]
fn isometric_exit_codes() {
    let d = setup();
    run(d.path(), &["iota", "cube.points.json", "--out", "cube.json"]);
    run(d.path(), &["double", "square.json", "--out", "square.metric.json"]);
    let o = run(d.path(), &["isometric", "cube.json", "square.metric.json"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("\"verdict\":\"distinct\""));
    assert_eq!(code(&run(d.path(), &["isometric", "cube.json", "cube.json"])), 0);
}

#[test]
fn patch_then_excise_round_trip() {
    let d = setup();
    run(d.path(), &["double", "square.json", "--out", "sq.json"]);
    let s = "0.7071067811865476";
    assert_eq!(code(&run(d.path(), &["patch", "sq.json", "--v", "0", "--w", "1", "--a", s, "--b", s, "--out", "p.json"])), 0);
    let o = run(d.path(), &["excise", "p.json", "--apex", "4", "--v", "0", "--w", "1", "--out", "e.json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"v\":0"));
    assert_eq!(code(&run(d.path(), &["isometric", "e.json", "sq.json"])), 0);
    // Over budget at corner 0: θ = π, 2α = 3π/2.
    let o = run(d.path(), &["patch", "sq.json", "--v", "0", "--w", "1", "--a", "3", "--b", "2.3"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn error_codes() {
    let d = setup();
    assert_eq!(code(&run(d.path(), &["frobnicate"])), 64);
    assert_eq!(code(&run(d.path(), &["geodesic", "x.json"])), 64);
    assert_eq!(code(&run(d.path(), &["validate", "missing.json"])), 1);
    fs::write(d.path().join("bad.json"), r#"{"vertex_count":3,"triangles":[],"lengths":{},"x":1}"#).unwrap();
    assert_eq!(code(&run(d.path(), &["validate", "bad.json"])), 1);
    fs::write(d.path().join("star.json"), emit_metric(&star_gluing::<f64>(7, 1.0).unwrap()).unwrap()).unwrap();
    assert_eq!(code(&run(d.path(), &["validate", "star.json"])), 1);
    run(d.path(), &["iota", "cube.points.json", "--out", "cube.json"]);
    let o = run(d.path(), &["--budget", "1", "geodesic", "cube.json", "--from", "0", "--to", "7"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    assert_eq!(code(&run(d.path(), &["embed4", "cube.json"])), 1);
}

#[test]
fn outputs_are_repeatable() {
    let d = setup();
    let a = stdout(&run(d.path(), &["--seed", "11", "iota", "--random", "9"]));
    let b = stdout(&run(d.path(), &["--seed", "11", "iota", "--random", "9"]));
    assert_eq!(a, b);
    assert_ne!(a, stdout(&run(d.path(), &["--seed", "12", "iota", "--random", "9"])));
    fs::write(d.path().join("r.json"), &a).unwrap();
    for f in ["json", "svg"] {
        let x = stdout(&run(d.path(), &["export", "r.json", "--format", f]));
        assert_eq!(x, stdout(&run(d.path(), &["export", "r.json", "--format", f])));
    }
    let svg = stdout(&run(d.path(), &["retriangulate", "r.json", "--svg", "/dev/stdout"]));
    assert!(svg.contains("<svg"));
}

#[test]
fn geodesic_json_and_strip() {
    let d = setup();
    run(d.path(), &["iota", "cube.points.json", "--out", "cube.json"]);
    let o = run(d.path(), &["geodesic", "cube.json", "--from", "0", "--to", "7", "--svg", "g.svg"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["length"].as_f64().unwrap() - 5f64.sqrt()).abs() < 1e-12);
    assert!(fs::read_to_string(d.path().join("g.svg")).unwrap().contains("<line"));
}
