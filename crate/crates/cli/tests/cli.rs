use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn shiftpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shiftpart"))
        .args(args)
        .env_remove("SHIFTPART_WORKERS")
        .output()
        .expect("binary runs")
}

fn instance(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

const PAIR: &str = r#"
[cost]
p = "inf"
d = 2

[source]
box = [[0.0, 1.0], [0.0, 1.0]]

[[targets]]
point = [0.25, 0.5]
mass = 0.125

[[targets]]
point = [0.75, 0.5]
mass = 0.875

[grid]
resolution = 128
"#;

#[test]
fn solve_writes_result_labels_and_flow() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instance(dir.path(), "pair.toml", &PAIR.replace("128", "32"));
    let out = dir.path().join("out");
    let o = shiftpart(&[
        "solve",
        "--instance",
        inst.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--lp-check",
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = read_json(&out.join("result.json"));
    assert_eq!(r["converged"], true);
    assert_eq!(r["shifts"][0], 0.0);
    assert_eq!(r["shifts"].as_array().unwrap().len(), 2);
    assert!(r["lp_check"].is_object(), "{r}");
    assert!(fs::read_to_string(out.join("labels.pgm"))
        .unwrap()
        .starts_with("P2\n32 32\n"));
    let flow = fs::read_to_string(out.join("flow.csv")).unwrap();
    assert_eq!(flow.lines().next(), Some("cell_index,target_index,mass"));
}

#[test]
fn malformed_target_mass_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instance(dir.path(), "bad.toml", &PAIR.replace("mass = 0.875", "mass = -0.875"));
    let o = shiftpart(&[
        "solve",
        "--instance",
        inst.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("targets[1].mass"), "{err}");
}

#[test]
fn unbalanced_masses_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instance(dir.path(), "bad.toml", &PAIR.replace("mass = 0.875", "mass = 0.5"));
    let o = shiftpart(&[
        "solve",
        "--instance",
        inst.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("targets[].mass"));
}

#[test]
fn syntax_error_reports_a_line() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instance(dir.path(), "bad.toml", "[cost]\np = \n");
    let o = shiftpart(&["solve", "--instance", inst.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn missing_instance_is_a_usage_error() {
    let o = shiftpart(&["solve", "--instance", "/nonexistent/instance.toml"]);
    assert_eq!(o.status.code(), Some(2));
    let o = shiftpart(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn iteration_cap_exits_3_and_keeps_the_iterate() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"
[cost]
p = 2
d = 2

[source]
box = [[0.0, 1.0], [0.0, 1.0]]

[[targets]]
point = [0.1, 0.2]
mass = 0.2

[[targets]]
point = [0.9, 0.3]
mass = 0.3

[[targets]]
point = [0.4, 0.8]
mass = 0.5

[grid]
resolution = 64

[solver]
mass_tolerance = 1e-9
max_iterations = 1
"#;
    let inst = instance(dir.path(), "three.toml", text);
    let out = dir.path().join("out");
    let o = shiftpart(&[
        "solve",
        "--instance",
        inst.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    let r = read_json(&out.join("result.json"));
    assert_eq!(r["converged"], false);
}

#[test]
fn lp_check_size_guard_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instance(dir.path(), "pair.toml", &PAIR.replace("128", "2048"));
    let o = shiftpart(&[
        "solve",
        "--instance",
        inst.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--lp-check",
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(!dir.path().join("result.json").exists());
}

#[test]
fn unwritable_output_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instance(dir.path(), "pair.toml", PAIR);
    // a regular file where the output directory should be
    let blocker = dir.path().join("blocker");
    fs::write(&blocker, "").unwrap();
    let out = blocker.join("out");
    let o = shiftpart(&[
        "solve",
        "--instance",
        inst.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn analyze_reports_atoms_of_the_sup_norm_pair() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instance(dir.path(), "pair.toml", &PAIR.replace("128", "1024"));
    let out = dir.path().join("out");
    let o = shiftpart(&[
        "analyze",
        "--instance",
        inst.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("condition violated at k="), "{stdout}");
    let a = read_json(&out.join("analysis.json"));
    assert_eq!(a["atoms"].as_array().unwrap().len(), 3, "{a}");
    let cdf = fs::read_to_string(out.join("cdf.csv")).unwrap();
    assert!(cdf.lines().count() > 2);
}

#[test]
fn analyze_warns_at_coarse_resolution() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instance(dir.path(), "pair.toml", PAIR);
    let o = shiftpart(&[
        "analyze",
        "--instance",
        inst.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("grid artifacts"));
}

#[test]
fn analyze_euclidean_pair_has_no_atoms() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instance(dir.path(), "pair.toml", &PAIR.replace("\"inf\"", "2"));
    let out = dir.path().join("out");
    let o = shiftpart(&[
        "analyze",
        "--instance",
        inst.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("condition holds; no atoms detected"));
}

#[test]
fn analyze_rejects_bad_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instance(dir.path(), "pair.toml", PAIR);
    for pair in [["1", "1"], ["1", "3"], ["0", "2"]] {
        let o = shiftpart(&[
            "analyze",
            "--instance",
            inst.to_str().unwrap(),
            "--out",
            dir.path().to_str().unwrap(),
            "--pair",
            pair[0],
            pair[1],
        ]);
        assert_eq!(o.status.code(), Some(2), "{pair:?}");
    }
}

#[test]
fn sweep_needs_two_targets() {
    let dir = tempfile::tempdir().unwrap();
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../instances/euclidean_three.toml");
    let o = shiftpart(&[
        "sweep",
        "--instance",
        root.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_writes_csv_and_intervals() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instance(dir.path(), "pair.toml", &PAIR.replace("128", "512"));
    let out = dir.path().join("out");
    let o = shiftpart(&[
        "sweep",
        "--instance",
        inst.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--steps",
        "15",
        "--refine",
        "1e-2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert_eq!(
        csv.lines().next(),
        Some("nu1,converged,residual,tie_mass,boundary_measure,is_partition")
    );
    let s = read_json(&out.join("sweep.json"));
    assert_eq!(s["intervals"].as_array().unwrap().len(), 2, "{s}");
}

#[test]
fn shipped_instances_solve() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../instances");
    let dir = tempfile::tempdir().unwrap();
    let o = shiftpart(&[
        "solve",
        "--instance",
        root.join("euclidean_three.toml").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = read_json(&dir.path().join("result.json"));
    assert_eq!(r["boundary"]["is_mu_partition"], true);
}
