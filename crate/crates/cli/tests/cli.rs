//! End-to-end checks of the `ptsturm` binary: flag surface, output
//! formats, exit codes, and byte-level determinism.

use std::process::{Command, Output};

fn ptsturm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptsturm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = ptsturm(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn secular_symbolic_matches_printed_forms() {
    assert_eq!(
        stdout_of(&["secular", "--J", "2", "--symbolic"]),
        "t^2 - (1+u+2*v)*t + v^2\n"
    );
    assert_eq!(stdout_of(&["secular", "--J", "1", "--symbolic"]), "t - (1+u)\n");
    assert_eq!(
        stdout_of(&["secular", "--J", "3", "--values", "17,6,5"]),
        "t^4 - 40*t^3 + 291*t^2 - 340*t + 25\n"
    );
}

#[test]
fn secular_json_structure() {
    let out = stdout_of(&["secular", "--J", "3", "--values", "17,6,5", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["J"], 3);
    assert_eq!(doc["prefactor_power"], 1);
    assert_eq!(doc["degree"], 4);
    assert_eq!(doc["coefficients"][0], "25");
    assert_eq!(doc["coefficients"][4], "1");
}

#[test]
fn sturmian_symbolic_reports() {
    let out = stdout_of(&["sturmian", "--J", "3", "--symbolic"]);
    assert!(out.contains("f_3 = (t^2 - (v+w)*t - w) / (t - w)"));
    assert!(out.contains("A_0 = v"));
    assert!(out.contains("B_1 = w+v*w"));
    assert!(out.contains("A_1 = w (tilded)"));

    let out = stdout_of(&["sturmian", "--J", "5", "--symbolic"]);
    assert!(out.contains("B_2 = (w*z-y^2+w^2*z-w*y^2+w*y*z+w^2*y*z)/w^2"));
    assert!(!out.contains("B_2 = (w*z-y^2+w^2*z-w*y^2+w*y*z+w^2*y*z)/w^2 (tilded)"));

    let out = stdout_of(&["sturmian", "--J", "2", "--symbolic"]);
    assert!(out.contains("f_2 = t - v"));
    assert!(out.contains("A_0 = v"));
    assert!(!out.contains("B_1"), "J=2 fraction terminates immediately");
}

#[test]
fn sturmian_numeric_with_coupling() {
    let out = stdout_of(&["sturmian", "--J", "3", "--values", "6,5", "--at-t", "4"]);
    assert!(out.contains("u(4) = 1085/4"));
    assert!(out.contains("single-pole shape: slash+slash"));
    // J=1 needs no outer couplings
    let out = stdout_of(&["sturmian", "--J", "1"]);
    assert!(out.contains("f_1 = t"));
}

#[test]
fn spectrum_counts_and_exit_codes() {
    let out = stdout_of(&["spectrum", "--J", "3", "--values", "17,6,5"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["states"].as_array().unwrap().len(), 3);

    // empty spectrum still exits 0
    let out = ptsturm(&["spectrum", "--J", "1", "--values", "-0.5"]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(doc["states"].as_array().unwrap().len(), 0);
}

#[test]
fn spectrum_wavefunction_tails() {
    let out = stdout_of(&["spectrum", "--J", "2", "--values", "3,1", "--wavefunction"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let states = doc["states"].as_array().unwrap();
    assert_eq!(states.len(), 1);
    let wf = &states[0]["wavefunction"];
    assert!(wf.is_object());
    let residual: f64 = wf["recurrence_residual_40"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual < 1e-10);
}

#[test]
fn domain_csv_and_degenerate_grid() {
    let out = stdout_of(&[
        "domain", "--J", "2", "--plane", "u,v", "--range", "-1:1,-1:1", "--step", "0.5",
    ]);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "param1,param2,count,complex_flag");
    assert_eq!(out.lines().count(), 1 + 25, "5x5 grid plus header");

    // a 1x1 grid is a single cell
    let out = stdout_of(&[
        "domain", "--J", "1", "--plane", "a,ap", "--raw", "--range", "0:0,0:0", "--step", "1",
    ]);
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn verify_modes() {
    let out = ptsturm(&["verify", "--golden"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("ok ")));
    assert!(text.contains("ok golden B_2 (J=5)"));

    let out = ptsturm(&["verify", "--J", "2", "--random", "5"]);
    assert!(out.status.success());

    let out = ptsturm(&["verify", "--J", "2", "--values", "3,1", "--oracle-N", "50"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ok oracle energy match level 0"));

    // no mode selected is an error
    let out = ptsturm(&["verify"]);
    assert!(!out.status.success());
}

#[test]
fn identical_configs_give_identical_bytes() {
    let args = ["spectrum", "--J", "3", "--values", "17,6,5", "--wavefunction"];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);

    let args = [
        "domain", "--J", "2", "--plane", "u,v", "--range", "-1:2,-1:1", "--step", "0.25",
        "--format", "json",
    ];
    assert_eq!(stdout_of(&args), stdout_of(&args));
}

#[test]
fn machine_readable_errors() {
    // singular raw pair is rejected by reduction-based pipelines
    let out = ptsturm(&["spectrum", "--J", "1", "--pairs", "1,0"]);
    assert!(!out.status.success());
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"]["kind"], "model");

    // the symbolic resource ceiling
    let out = ptsturm(&["secular", "--J", "8", "--symbolic"]);
    assert!(!out.status.success());
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"]["kind"], "resource_limit");

    // even with a raised ceiling, J=8 has no symbolic form: the coupling
    // universe stops at the seventh symbol
    let out = ptsturm(&["secular", "--J", "8", "--symbolic", "--max-symbolic-j", "8"]);
    assert!(!out.status.success());
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"]["kind"], "secular");

    // numeric mode is unrestricted: the degree law holds at J=8
    let out = stdout_of(&["secular", "--J", "8", "--values", "1,1,1,1,1,1,1,1"]);
    assert!(out.starts_with("t^14"));
}

#[test]
fn config_document_input() {
    let dir = std::env::temp_dir().join("ptsturm_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.json");
    std::fs::write(
        &path,
        r#"{"J": 3, "mode": "reduced", "values": ["17", "6", "5"]}"#,
    )
    .unwrap();
    let out = stdout_of(&["secular", "--config", path.to_str().unwrap()]);
    assert_eq!(out, "t^4 - 40*t^3 + 291*t^2 - 340*t + 25\n");

    // inline flags override the document
    let out = stdout_of(&[
        "secular", "--config", path.to_str().unwrap(), "--values", "3,1", "--J", "2",
    ]);
    assert_eq!(out, "t^2 - 6*t + 1\n");

    // raw pairs in a document
    let path = dir.join("raw.json");
    std::fs::write(&path, r#"{"J": 1, "mode": "raw", "pairs": [["-3", "0"]]}"#).unwrap();
    let out = stdout_of(&["spectrum", "--config", path.to_str().unwrap(), "--format", "text"]);
    assert!(out.contains("t = 4"), "u = 3 gives t = 4: {out}");
}

#[test]
fn output_to_file() {
    let dir = std::env::temp_dir().join("ptsturm_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.txt");
    let _ = stdout_of(&[
        "secular", "--J", "2", "--symbolic", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "t^2 - (1+u+2*v)*t + v^2\n"
    );
}
