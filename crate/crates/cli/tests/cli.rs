//! End-to-end tests of the `cyclat` binary: every verb, both output
//! formats, the exit-code contract, and determinism of seeded sampling.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cyclat"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should spawn")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout should be valid JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process should exit normally")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("cyclat-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file should be writable");
    path
}

#[test]
fn ideal_matrix_emits_the_circulant_and_its_determinant() {
    let out = run(&["ideal-matrix", "--phi", "x^3-1", "--f", "1,2,3"]);
    let v = stdout_json(&out);
    assert_eq!(v["f"], serde_json::json!(["1", "2", "3"]));
    assert_eq!(
        v["matrix"],
        serde_json::json!([["1", "3", "2"], ["2", "1", "3"], ["3", "2", "1"]])
    );
    assert_eq!(v["det"], "18");
    let spectral = v["det_spectral"].as_f64().expect("float field");
    assert!((spectral - 18.0).abs() < 1e-6);
}

#[test]
fn prime_spot_certifies_x_minus_two_with_exact_rationals() {
    let out = run(&["prime-spot", "--phi", "x^4-1", "--g", "-2,1,0,0"]);
    let v = stdout_json(&out);
    assert_eq!(v["u"], serde_json::json!(["-8/15", "-4/15", "-2/15", "-1/15"]));
    assert_eq!(v["t_g"], serde_json::json!(["-8/15", "-1/15", "-2/15", "-4/15"]));
    let min = v["t_g_min"].as_f64().expect("float field");
    assert!((min - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn prime_spot_rejects_zero_divisors_with_a_domain_exit() {
    let out = run(&["prime-spot", "--phi", "x^2-1", "--g", "1,1"]);
    assert_eq!(exit_code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error:"), "stderr should explain: {err}");
}

#[test]
fn cyclic_check_accepts_the_triangular_example_basis() {
    let basis = data("ex46.json");
    let out = run(&["cyclic-check", "--phi", "x^3-1", "--basis", basis.to_str().unwrap()]);
    assert_eq!(stdout_json(&out)["cyclic"], Value::Bool(true));
}

#[test]
fn cyclic_check_rejects_a_rotation_open_basis() {
    let file = temp_file(
        "open.json",
        r#"{"n":2,"m":2,"basis":[["1","0"],["0","2"]]}"#,
    );
    let out = run(&["cyclic-check", "--phi", "x^2-1", "--basis", file.to_str().unwrap()]);
    assert_eq!(stdout_json(&out)["cyclic"], Value::Bool(false));
    std::fs::remove_file(file).ok();
}

#[test]
fn module_lattice_output_feeds_back_into_cyclic_check() {
    let gens = temp_file(
        "gens.json",
        r#"{"phi":["-1","0","1"],"generators":[["1","1"],["1","-1"]]}"#,
    );
    let saved = std::env::temp_dir()
        .join(format!("cyclat-test-{}-module-basis.json", std::process::id()));
    let out = run(&[
        "module-lattice",
        "--generators",
        gens.to_str().unwrap(),
        "--out",
        saved.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let written: Value = serde_json::from_str(
        &std::fs::read_to_string(&saved).expect("output file should exist"),
    )
    .expect("written artifact should be JSON");
    // The even-coordinate-sum lattice: index two inside Z^2.
    assert_eq!(written["basis"], serde_json::json!([["1", "1"], ["0", "2"]]));

    let check = run(&["cyclic-check", "--phi", "x^2-1", "--basis", saved.to_str().unwrap()]);
    assert_eq!(stdout_json(&check)["cyclic"], Value::Bool(true));
    std::fs::remove_file(gens).ok();
    std::fs::remove_file(saved).ok();
}

#[test]
fn eta_reports_both_bounds_and_the_certificate_on_the_example_basis() {
    let basis = data("ex46.json");
    let out = run(&[
        "eta",
        "--basis",
        basis.to_str().unwrap(),
        "--phi",
        "x^3-1",
        "--g",
        "0,0,1",
    ]);
    let v = stdout_json(&out);
    let bound_gs = v["bound_gs"].as_f64().expect("float field");
    assert!((bound_gs - 3.0).abs() < 1e-9);
    let bound_tg = v["bound_tg"].as_f64().expect("float field");
    assert!((bound_tg - 3f64.sqrt()).abs() < 1e-9);
    let eta = v["eta"].as_f64().expect("float field");
    assert!(eta > 0.0 && eta <= bound_tg + 1e-6 && eta <= bound_gs + 1e-6);
    assert_eq!(v["certificate"]["u"], serde_json::json!(["0", "1", "0"]));
}

#[test]
fn eta_validates_cyclicity_when_a_modulus_is_given_without_a_generator() {
    let file = temp_file(
        "open-eta.json",
        r#"{"n":2,"m":2,"basis":[["1","0"],["0","2"]]}"#,
    );
    let out = run(&["eta", "--basis", file.to_str().unwrap(), "--phi", "x^2-1"]);
    assert_eq!(exit_code(&out), 1);
    std::fs::remove_file(file).ok();
}

#[test]
fn eta_tsv_renders_one_key_per_line() {
    let basis = data("ex46.json");
    let out = run(&["eta", "--basis", basis.to_str().unwrap(), "--format", "tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l.starts_with("bound_gs\t3.0000000000000000e0")), "{text}");
    assert!(text.lines().any(|l| l.starts_with("eta\t")), "{text}");
}

#[test]
fn sampling_is_deterministic_per_seed_and_requires_one() {
    let basis = data("ex46.json");
    let args = [
        "sample",
        "--basis",
        basis.to_str().unwrap(),
        "--width",
        "2.0",
        "--seed",
        "42",
        "--count",
        "8",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same seed must reproduce the same artifact");

    let missing = run(&[
        "sample",
        "--basis",
        basis.to_str().unwrap(),
        "--width",
        "2.0",
    ]);
    assert_eq!(exit_code(&missing), 2, "omitting --seed is a usage error");
}

#[test]
fn sample_rejects_a_nonpositive_width() {
    let basis = data("ex46.json");
    let out = run(&[
        "sample",
        "--basis",
        basis.to_str().unwrap(),
        "--width",
        "0",
        "--seed",
        "1",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn modulus_grammar_failures_map_to_the_exit_contract() {
    // Domain rejections: well-formed text, inadmissible ring.
    let square = run(&["prime-spot", "--phi", "x^2-2*x+1", "--g", "1,0"]);
    assert_eq!(exit_code(&square), 1, "repeated roots are a domain error");
    let zero_constant = run(&["prime-spot", "--phi", "x^3-x", "--g", "1,0,0"]);
    assert_eq!(exit_code(&zero_constant), 1, "zero constant term is a domain error");
    // Grammar rejections.
    let garbage = run(&["prime-spot", "--phi", "x^", "--g", "1,0"]);
    assert_eq!(exit_code(&garbage), 2, "malformed text is a parse error");
    let unknown_flag = run(&["prime-spot", "--phi", "x^2+1", "--g", "1,0", "--frob", "1"]);
    assert_eq!(exit_code(&unknown_flag), 2, "unknown flags are errors, not warnings");
    let unknown_verb = run(&["transmogrify"]);
    assert_eq!(exit_code(&unknown_verb), 2);
}

#[test]
fn unreadable_or_malformed_files_exit_two() {
    let missing = run(&["cyclic-check", "--phi", "x^2-1", "--basis", "/nonexistent/b.json"]);
    assert_eq!(exit_code(&missing), 2);
    let mangled = temp_file("mangled.json", "{\"n\": 2, \"m\":");
    let out = run(&["cyclic-check", "--phi", "x^2-1", "--basis", mangled.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    std::fs::remove_file(mangled).ok();
}

#[test]
fn verify_replays_the_examples_and_exits_cleanly() {
    let out = run(&["verify"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("all checks passed"), "{text}");
    assert!(!text.contains("FAILED"), "{text}");
}
