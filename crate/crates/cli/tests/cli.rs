use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const GM: &str = "\
algebra Gm
generators g h
relation g*h - 1
relation h*g - 1
delta g -> g (x) g
delta h -> h (x) h
counit g -> 1
counit h -> 1
antipode g -> h
antipode h -> g
";

const ZT: &str = "\
algebra Zt
generators u v
relation u*v - 1
relation v*u - 1
";

fn write(name: &str, body: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("qgal-cli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qgal"));
    cmd.args(args).env_remove("QGAL_DEGREE_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all, &[]);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("timing_ms");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn json_report_shape() {
    let (code, v) = json(&["verify", "Uq2", "--suite", "hopf", "--degree", "1", "--q", "0.5,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert!(v["check"].is_string());
    assert!(v["timing_ms"].is_u64());
    assert_eq!(v["params"]["degree"], 1);
    assert_eq!(v["params"]["q_samples"], serde_json::json!([0.5, 2.0]));
    let item = &v["items"][0];
    for key in ["desc", "status", "witness"] {
        assert!(item[key].is_string(), "{key}");
    }
}

#[test]
fn exit_codes() {
    let bad = write("gm_bad.qg", &GM.replace("counit h -> 1", "counit h -> 2"));
    let (code, v) = json(&["verify", &bad, "--suite", "hopf"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    assert!(v["items"]
        .as_array()
        .unwrap()
        .iter()
        .any(|i| i["status"] == "fail" && !i["witness"].as_str().unwrap().is_empty()));

    let (code, v) = json(&["verify", "AuFG", "--suite", "haar"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "undecided");

    let out = run(&["verify", "NoSuchAlgebra"], &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NoSuchAlgebra"));
}

#[test]
fn parse_errors_carry_locations() {
    let path = write("broken.qg", "algebra a\ngenerators x\nrelation x*y\n");
    let out = run(&["parse", &path], &[]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("`y`") && err.contains("3:12"), "{err}");
}

#[test]
fn file_targets_with_a_coaction() {
    write("Gm", GM);
    let z = write("zt.qg", ZT);
    let alpha = write("zt.coaction", "coaction Zt over Gm\nalpha u -> g (x) u\nalpha v -> h (x) v\n");
    let (code, v) = json(&["verify", &z, "--coaction", &alpha, "--suite", "coaction"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json(&["verify", &z, "--coaction", &alpha, "--suite", "galois"]);
    assert_eq!(code, 2, "{v}");
    let (code, v) = json(&["parse", &alpha]);
    assert_eq!(code, 0);
    assert_eq!(v["base"], "Gm");
}

#[test]
fn degree_cap_from_the_environment() {
    let (_, v) = json(&["parse", "GLq2m2"]);
    assert_eq!(v["certified_degree"], 6);
    let out = run(&["parse", "GLq2m2", "--json"], &[("QGAL_DEGREE_CAP", "3")]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["certified_degree"], 3);
    let out = run(&["verify", "GLq2m2", "--suite", "galois", "--degree", "2"], &[("QGAL_DEGREE_CAP", "3")]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn normalize_prints_the_normal_form() {
    let out = run(&["normalize", "GLq2", "x12*x11"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("q*x11*x12"));
    let (_, v) = json(&["normalize", "Uq2m2", "z22*z11 - z11*z22"]);
    assert_eq!(v["normal_form"], "(q - q^-1)*z12*z21 - 2*z11*z22");
}

#[test]
fn output_is_deterministic() {
    for args in [["verify", "Uq2m2", "--suite", "all"], ["cotensor", "Uq2m2", "--comodule", "conjugate"]] {
        let (_, mut a) = json(&args);
        let (_, mut b) = json(&args);
        strip_timing(&mut a);
        strip_timing(&mut b);
        assert_eq!(a, b);
    }
}

#[test]
fn q_zero_is_a_domain_error() {
    let out = run(&["haar", "Uq2m2", "--q", "0"], &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q = 0"));
}
