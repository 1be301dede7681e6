use std::path::Path;
use std::process::Command;

fn polylab(args: &[&str], out: &Path) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_polylab")).args(args).arg("--out").arg(out).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8_lossy(&o.stdout).into(), String::from_utf8_lossy(&o.stderr).into())
}

fn report(out: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

#[test]
fn verify_bubble_passes_and_reports_both_checks() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = polylab(&["verify-bubble", "--nk", "5,2", "--tol", "1e-8", "--csv"], dir.path());
    assert_eq!(code, 0);
    let r = report(dir.path());
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"bubble.pde_residual.n5k2"));
    assert!(names.contains(&"bubble.mass_identity.n5k2"));
    for c in r["checks"].as_array().unwrap() {
        assert!(c["pass"].as_bool().unwrap());
        assert!(c["runtime_ms"].is_null());
        assert!(!c["paper_anchor"].as_str().unwrap().is_empty());
    }
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + names.len());
}

#[test]
fn verify_pohozaev_odd_pair_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = polylab(&["verify-pohozaev", "--nk", "7,3"], dir.path());
    assert_eq!(code, 0, "{out}");
}

#[test]
fn degenerate_pair_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = polylab(&["verify-bubble", "--nk", "4,2"], dir.path());
    assert_eq!(code, 2);
    assert!(err.contains("2k < n"), "{err}");
    assert!(!dir.path().join("report.json").exists());
}

#[test]
fn bad_tolerance_and_unknown_command_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(polylab(&["verify-bubble", "--tol", "-1"], dir.path()).0, 2);
    assert_eq!(polylab(&["frobnicate"], dir.path()).0, 2);
    assert_eq!(polylab(&["giraud-sweep", "--sweep", "rho=10;xi=1.5"], dir.path()).0, 2);
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"command": "verify-bubble", "nk": [[3, 1]], "tol": 1e-3}"#).unwrap();
    let (code, _, _) = polylab(&["--config", cfg.to_str().unwrap(), "--nk", "5,1"], dir.path());
    assert_eq!(code, 0);
    let r = report(dir.path());
    assert_eq!(r["config_echo"]["nk"], serde_json::json!([[5, 1]]));
    assert_eq!(r["config_echo"]["tol"], serde_json::json!(1e-3));
    assert_eq!(r["command"], "verify-bubble");
}

#[test]
fn failing_checks_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = polylab(&["verify-bubble", "--nk", "3,1", "--tol", "1e-300"], dir.path());
    assert_eq!(code, 1, "{out}");
    let r = report(dir.path());
    assert!(r["checks"].as_array().unwrap().iter().any(|c| !c["pass"].as_bool().unwrap()));
}

#[test]
fn same_seed_gives_identical_reports() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    polylab(&["poly-identities", "--seed", "7"], a.path());
    polylab(&["poly-identities", "--seed", "7"], b.path());
    let ra = std::fs::read(a.path().join("report.json")).unwrap();
    let rb = std::fs::read(b.path().join("report.json")).unwrap();
    assert_eq!(ra, rb);
}
