use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn wlax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wlax"))
        .args(args)
        .env_remove("WLAX_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn generators_gl1_is_single_q() {
    let out = wlax(&["generators", "--partition", "1"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let gens = v["generators"].as_object().unwrap();
    assert_eq!(gens.len(), 1);
    assert_eq!(gens.keys().next().unwrap(), "1,1,0");
}

#[test]
fn generators_principal_gl2_has_trace() {
    let out = wlax(&["generators", "--partition", "2", "--format", "text"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("w(1,1;1) = q(11,11) + q(12,12)"), "{}", text);
}

#[test]
fn generators_rectangular_table() {
    let out = wlax(&["generators", "--partition", "2,2", "--format", "text"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 8);
    assert!(text.contains("w(1,2;1) = q(11,21) + q(12,22)"));
    assert!(text.contains("w(2,1;1) = q(21,11) + q(22,12)"));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for args in [&["brackets", "--partition", "2,1"][..], &["hierarchy", "--partition", "2", "--flows", "3"]] {
        let a = wlax(args);
        let b = wlax(args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn brackets_have_both_members_of_the_pencil() {
    let v = stdout_json(&wlax(&["brackets", "--partition", "2"]));
    for which in ["bracket0", "bracket1"] {
        assert!(v[which].as_object().unwrap().contains_key("1,1,0|1,1,0"), "{}", which);
    }
}

#[test]
fn hierarchy_zero_flow_vanishes() {
    let out = wlax(&["hierarchy", "--partition", "2", "--flows", "0", "--format", "text"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with('d')).all(|l| l.ends_with("= 0")), "{}", text);
}

#[test]
fn constrained_hierarchy_is_nls_type() {
    let out = wlax(&["hierarchy", "--partition", "2,1", "--reduce", "constrained", "--flows", "2", "--format", "text"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().find(|l| l.starts_with("dw(1,2;0)/dt2")).unwrap();
    assert!(line.contains("- w(1,2;0)''"), "{}", line);
    let line = text.lines().find(|l| l.starts_with("dw(2,1;0)/dt2")).unwrap();
    assert!(line.contains("+ w(2,1;0)''"), "{}", line);
}

#[test]
fn constrained_rejects_wrong_shape() {
    let out = wlax(&["hierarchy", "--partition", "3,2", "--reduce", "constrained"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn verify_principal_gl2_passes() {
    let out = wlax(&["verify", "--partition", "2"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["passed"], Value::Bool(true));
}

#[test]
fn verify_rectangular_rank_deficient_passes() {
    let out = wlax(&["verify", "--partition", "2,2", "--sbar", "E11"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn verify_detects_corruption_with_witness() {
    let out = wlax(&["verify", "--partition", "2", "--corrupt"]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["passed"], Value::Bool(false));
    let failed: Vec<&Value> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["items"].as_array().unwrap())
        .filter(|it| it["passed"] == Value::Bool(false))
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|it| it["witness"].as_str().is_some_and(|w| !w.is_empty())));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.toml", "partition = \"2,2\"\nformat = \"text\"\nflows = 1\n");
    let out = wlax(&["generators", "--config", &cfg]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 8);
    let out = wlax(&["generators", "--config", &cfg, "--partition", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.toml", "partition = \"2\"\ncolour = \"red\"\n");
    assert_eq!(code(&wlax(&["generators", "--config", &cfg])), 2);
}

#[test]
fn sbar_of_wrong_shape_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "s.txt", "1 0 0\n0 1 0\n0 0 1\n");
    let out = wlax(&["brackets", "--partition", "2,2", "--sbar", &m]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("2x2"));
}

#[test]
fn custom_rational_sbar_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "s.txt", "# invertible\n2, -1\n3, 5/2\n");
    assert_eq!(code(&wlax(&["brackets", "--partition", "2,2", "--sbar", &m])), 0);
}

#[test]
fn bad_partition_is_a_config_error() {
    assert_eq!(code(&wlax(&["generators", "--partition", "1,2"])), 2);
    assert_eq!(code(&wlax(&["generators", "--partition", "x"])), 2);
    assert_eq!(code(&wlax(&["generators"])), 2);
}

#[test]
fn out_dir_receives_named_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = wlax(&["generators", "--partition", "2,1", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("generators-2_1.json")).unwrap();
    assert!(serde_json::from_str::<Value>(&text).is_ok());
}

#[test]
fn env_var_sets_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_wlax"))
        .args(["generators", "--partition", "2", "--sbar", "E11", "--format", "latex"])
        .env("WLAX_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("generators-2-e11.tex").exists());
}
