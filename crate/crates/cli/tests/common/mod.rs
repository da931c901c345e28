#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qree_cli::output::TraceJson;
use qree_cli::state_file::{from_grid, StateFile};
use qree_core::families::FamilySpec;
use qree_core::qcore::DensityMatrix;

pub fn qree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qree")).args(args).env("QREE_LOG", "quiet").output().expect("run qree")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub fn family_file(name: &str, params: &[(&str, f64)]) -> String {
    let params: serde_json::Map<String, serde_json::Value> =
        params.iter().map(|(k, v)| (k.to_string(), serde_json::json!(v))).collect();
    serde_json::json!({"kind": "family", "name": name, "params": params}).to_string()
}

pub fn write_temp(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// One instance per family; the golden traces are generated from these.
pub fn golden_instances() -> Vec<(&'static str, String)> {
    vec![
        (
            "bell_diagonal",
            family_file("bell_diagonal", &[("lambda1", 0.1), ("lambda2", 0.15), ("lambda3", 0.6), ("lambda4", 0.15)]),
        ),
        ("gvp", family_file("gvp", &[("lambda1", 0.5), ("lambda2", 0.3), ("lambda3", 0.2)])),
        ("gen_horodecki", family_file("gen_horodecki", &[("lambda1", 0.6), ("lambda2", 0.3), ("lambda3", 0.1)])),
        ("vp_type", family_file("vp_type", &[("a2", 0.7), ("a3", 0.3), ("d", 0.4)])),
        ("horodecki_type", family_file("horodecki_type", &[("a1", 0.2), ("a4", 0.1), ("a", 0.35), ("d", 0.3)])),
    ]
}

/// Outcome of regenerating one golden trace and comparing it with the stored file.
pub struct GoldenCheck {
    pub family: &'static str,
    pub identical: bool,
    pub reverified: bool,
    pub css_error: f64,
}

/// Re-runs `qree trace` on the golden input, compares the bytes, re-parses the
/// stored trace and re-verifies its closest separable state. With
/// QREE_BLESS=1 the stored file is rewritten first.
pub fn check_golden(family: &'static str, input: &str, scratch: &Path) -> GoldenCheck {
    let golden = golden_dir().join(format!("{family}.json"));
    let input_path = write_temp(scratch, &format!("{family}.input.json"), input);
    let fresh = scratch.join(format!("{family}.trace.json"));
    let out = qree(&["trace", input_path.to_str().unwrap(), "-o", fresh.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let fresh_bytes = std::fs::read(&fresh).unwrap();
    if std::env::var("QREE_BLESS").as_deref() == Ok("1") {
        std::fs::write(&golden, &fresh_bytes).unwrap();
    }
    let stored = std::fs::read(&golden).unwrap_or_else(|_| panic!("missing {}; run with QREE_BLESS=1", golden.display()));

    let trace: TraceJson = serde_json::from_slice(&stored).expect("golden trace parses");
    let reencoded = qree_cli::output::to_json(&trace).unwrap();
    let StateFile::Family { name, params } = &trace.input else { panic!("golden input is a family") };
    let spec = FamilySpec::from_params(name, params).unwrap();
    let sigma_star = DensityMatrix::new(from_grid(&trace.sigma_star)).unwrap();
    let reference = match spec {
        FamilySpec::HorodeckiType(s) => s.procedure_css_candidate().unwrap(),
        _ => spec.closed_form_css().unwrap(),
    };
    let verify = qree(&["verify", "--input", input_path.to_str().unwrap()]);
    GoldenCheck {
        family,
        identical: fresh_bytes == stored && reencoded.as_bytes() == stored.as_slice(),
        reverified: verify.status.code() == Some(0),
        css_error: sigma_star.distance(&reference),
    }
}
