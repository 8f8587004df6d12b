use std::path::PathBuf;
use std::process::Command;

use clap::Parser;
use poissonlab_cli::{bracket, degree_cap, run, Cli, DEGREE_CAP_VAR};

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compare against a checked-in snapshot; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, args: &[&str]) {
    let cli = Cli::try_parse_from(std::iter::once("poissonlab").chain(args.iter().copied())).unwrap();
    let out = run(&cli).unwrap();
    assert!(out.ok);
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &out.text).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out.text, want, "output differs from {name}");
}

fn bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_poissonlab")).args(args).env_remove(DEGREE_CAP_VAR).output().unwrap()
}

#[test]
fn golden_ruled_tables() {
    check_golden("ruled_m4.json", &["tables", "ruled", "--m-max", "4", "--json"]);
    check_golden("ruled_m10.md", &["tables", "ruled", "--m-max", "10", "--md"]);
}

#[test]
fn golden_hopf_tables() {
    check_golden("hopf.md", &["tables", "hopf", "--degree", "5", "--md"]);
    check_golden("hopf.json", &["tables", "hopf", "--degree", "5", "--json"]);
}

#[test]
fn golden_product_tables() {
    check_golden("products.md", &["tables", "products", "--md"]);
    check_golden("products.json", &["tables", "products", "--json"]);
}

#[test]
fn ruled_json_shows_f4_obstructed_row() {
    let cli = Cli::try_parse_from(["poissonlab", "tables", "ruled", "--m-max", "4", "--json"]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&run(&cli).unwrap().text).unwrap();
    let rows = v.as_array().unwrap();
    let f4 = rows.iter().find(|r| r["m"] == 4 && r["stratum"] == "e = 0, f != 0").unwrap();
    assert_eq!(f4["dim_h2"], 1);
    assert_eq!(f4["verdict"], "obstructed");
    assert_eq!(f4["certificate"]["verdict"]["kind"], "Obstructed");
}

#[test]
fn bracket_of_general_hopf_fields() {
    let got = bracket("(A*z^2+B*z*w+C*w^2)*@z^@w", "(d*z+e*w)*@z+(f*z+g*w)*@w", &[]).unwrap();
    // expanded by hand: div(X)·P − X(P)
    assert_eq!(
        got,
        "(-A*d*z^2 - 2*A*e*w*z + A*g*z^2 - B*e*w^2 - B*f*z^2 + C*d*w^2 - 2*C*f*w*z - C*g*w^2)*(@z^@w)"
    );
    assert_eq!(bracket("0", "@z", &["z".into(), "w".into()]).unwrap(), "0");
}

#[test]
fn exit_codes() {
    assert!(bin(&["verify-family", "ep1"]).status.success());
    assert!(bin(&["verify-family", "f2"]).status.success());
    assert!(bin(&["verify-family", "hopf-iic"]).status.success());
    assert!(bin(&["mc-check", "tp1"]).status.success());
    assert!(!bin(&["verify-family", "f9"]).status.success());
    let bad = bin(&["bracket", "3.5*@z", "@z"]);
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("1:2"));
    assert!(!bin(&["classify", "tp1", "--poisson", "xi*@z2^@xi + xi^2*@xi^@z1"]).status.success());
}

#[test]
fn classify_emits_certificates() {
    let out = bin(&["classify", "F5", "--poisson", "xi^2*@z^@xi"]);
    assert!(out.status.success());
    let cert = poissonlab::obstruction::Certificate::from_json(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert!(cert.is_obstructed());
    let ep1 = poissonlab_cli::classify("ep1", "(1 + xi)*@z^@xi").unwrap();
    assert_eq!(poissonlab::report::verdict_word(&ep1.verdict), "unobstructed");
    let tp1 = poissonlab_cli::classify("tp1", "@z1^@z2 + xi*@z2^@xi + 2*xi*@xi^@z1").unwrap();
    assert!(tp1.stratum.starts_with("class 2"));
    let fiber = poissonlab_cli::classify("tp1", "xi*@xi^@z1").unwrap();
    assert!(fiber.stratum.starts_with("class 3"));
    let hopf = poissonlab_cli::classify("hopf-iii:2", "0").unwrap();
    assert!(hopf.is_obstructed());
    assert!(poissonlab_cli::classify("K3", "0").is_err());
}

#[test]
fn degree_cap_flag_and_env() {
    assert_eq!(degree_cap(Some(6)).unwrap(), Some(6));
    assert!(degree_cap(Some(2)).is_err());
    let out = Command::new(env!("CARGO_BIN_EXE_poissonlab"))
        .args(["tables", "hopf", "--md"])
        .env(DEGREE_CAP_VAR, "2")
        .output()
        .unwrap();
    assert!(!out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_poissonlab"))
        .args(["tables", "hopf", "--md"])
        .env(DEGREE_CAP_VAR, "6")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), std::fs::read_to_string(golden_path("hopf.md")).unwrap());
}

#[test]
fn mc_check_reports_deletion_residuals() {
    let out = bin(&["mc-check", "ep1"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("ep1: defect 0"));
    assert!(text.contains("without t0*t2*F*@xi*~z: ("));
}
