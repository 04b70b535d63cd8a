use std::process::{Command, Output};

use serde_json::Value;

fn framelab(args: &[&str], env_tol: Option<&str>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_framelab"));
    c.args(args).env_remove("FRAMELAB_TOLERANCE");
    if let Some(t) = env_tol {
        c.env("FRAMELAB_TOLERANCE", t);
    }
    c.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn props_report_and_envelope() {
    let out = framelab(&["bspline", "props", "--N", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "bspline props");
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn crude_bound_example() {
    let v = json(&framelab(&["exp", "crude", "--N", "2", "--delta", "0.5"], None));
    let x = v["result"]["value"].as_f64().unwrap();
    assert!((x / 9.3027e-24 - 1.0).abs() < 1e-4, "{x}");
    assert!((v["result"]["log10"].as_f64().unwrap() - x.log10()).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    let fail = framelab(&["wavelet", "check-dual", "--psi", "shannon", "--psi-t", "zero"], None);
    assert_eq!(fail.status.code(), Some(1));
    let undecided = framelab(&["bspline", "scan", "--N", "2", "--a", "1", "--b", "1"], None);
    assert_eq!(undecided.status.code(), Some(0));
    let bad = framelab(&["exp", "crude", "--N", "2", "--delta", "2"], None);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("delta"));
    assert_eq!(framelab(&["gabor", "bounds", "--L", "6", "--a", "4", "--b", "1"], None).status.code(), Some(2));
    assert_eq!(framelab(&["no-such-command"], None).status.code(), Some(2));
}

#[test]
fn tolerance_precedence() {
    let dir = std::env::temp_dir().join(format!("framelab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.toml");
    std::fs::write(&cfg, "tol = 1e-6\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let tol = |args: &[&str], env: Option<&str>| -> f64 {
        let mut a = vec!["bspline", "props", "--N", "2"];
        a.extend_from_slice(args);
        json(&framelab(&a, env))["result"]["tolerance_used"].as_f64().unwrap()
    };
    assert_eq!(tol(&[], None), 1e-10);
    assert_eq!(tol(&[], Some("1e-7")), 1e-7);
    assert_eq!(tol(&["--config", cfg], Some("1e-7")), 1e-6);
    assert_eq!(tol(&["--config", cfg, "--tol", "1e-5"], Some("1e-7")), 1e-5);
    assert_eq!(framelab(&["bspline", "props", "--N", "2"], Some("abc")).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn seeded_commands_repeat_exactly() {
    let args = ["gabor", "duality", "--L", "6", "--a", "2", "--b", "3", "--window", "random", "--seed", "7"];
    let a = framelab(&args, None);
    let b = framelab(&args, None);
    assert_eq!(a.stdout, b.stdout);
    let mut other = args.to_vec();
    other[11] = "8";
    assert_ne!(a.stdout, framelab(&other, None).stdout);
}

#[test]
fn csv_tables_have_documented_columns() {
    let out = framelab(&["bspline", "scan", "--N", "2", "--a", "0.5,2", "--b", "0.25", "--output", "csv"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,b,status,A,B,method"));
    assert!(lines.next().unwrap().contains("frame_certified"));
    assert!(lines.next().unwrap().contains("lower_bound_zero_certified"));
    let out = framelab(&["gabor", "sweep", "--L", "4", "--windows", "1", "--output", "csv"], None);
    let head = String::from_utf8(out.stdout).unwrap();
    assert!(head.starts_with("L,a,b,lowerA,upperB,adjoint_lower,adjoint_upper,residual"));
}

#[test]
fn frame_commands_read_files() {
    let dir = std::env::temp_dir().join(format!("framelab-frames-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("f.csv");
    std::fs::write(&f, "re_0,im_0,re_1,im_1\n1,0,0,0\n0,0,1,0\n1,0,1,0\n").unwrap();
    let f = f.to_str().unwrap();
    let v = json(&framelab(&["frame", "bounds", "--input", f], None));
    let fb = &v["result"]["frame_bounds"];
    assert!((fb["lower"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((fb["upper"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    let out = framelab(&["frame", "dual", "--input", f], None);
    assert_eq!(out.status.code(), Some(0));
    let out = framelab(&["extend", "--f", f, "--g", f], None);
    assert_eq!(json(&out)["verdict"], "pass");
    std::fs::remove_dir_all(&dir).ok();
}
