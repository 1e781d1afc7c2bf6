use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn spectra(args: &[&str], config: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectra"))
        .arg(args[0])
        .arg("--config")
        .arg(config)
        .args(&args[1..])
        .output()
        .unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const RING: &str = r#"
[potential.radial]
family = "radial_coulomb"
strength = 2.0

[potential.angular]
form = "ring_trig"
beta = 1.0
gamma = 1.0

[run]
m = [-1, 1]
n_r = [0, 1]
n_theta = [0, 1]
"#;

#[test]
fn verify_rosen_morse_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        &dir,
        "rm.toml",
        "[potential]\nfamily = \"rosen_morse_ii\"\nell = 3.0\ngamma = 1.0\n",
    );
    let out = spectra(&["verify", "--format", "json"], &cfg);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["summary"]["ladder_levels"], 3);
    assert_eq!(v["summary"]["count_match"], true);
    assert!(v["summary"]["max_residual"].as_f64().unwrap() < 1e-5);
    assert_eq!(v["tolerances"]["energy"], 1e-5);
    assert_eq!(v["config"]["potential"]["family"], "rosen_morse_ii");
    assert_eq!(v["grids"]["oracle_coarse"]["n_points"], 4001);
}

#[test]
fn spectrum_table_is_sorted_with_ell_column() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "ring.toml", RING);
    let out = spectra(&["spectrum"], &cfg);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# command: spectrum\n"));
    assert!(text.contains("# config: "));
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(
        body[0],
        "n_r,n_theta,m,ell_eff,energy,angular_provenance,radial_provenance,secondary_ell_eff,error"
    );
    let energies: Vec<f64> = body[1..]
        .iter()
        .map(|l| l.split(',').nth(4).unwrap().parse().unwrap())
        .collect();
    assert_eq!(energies.len(), 12);
    assert!(energies.windows(2).all(|w| w[0] <= w[1]));
    // m = 0 sits at ell_eff = 1/sqrt(2); m = ±1 at 1.366025...
    assert!(body[1].starts_with("0,0,0,0.707106781187,"), "{}", body[1]);
    assert!(
        body[2].starts_with("0,0,-1,1.36602540378,-0.178632794"),
        "{}",
        body[2]
    );
    assert!(
        body[3].starts_with("0,0,1,1.36602540378,-0.178632794"),
        "{}",
        body[3]
    );
}

#[test]
fn verify_spec_passes_and_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "ring.toml", RING);
    let out_path = dir.path().join("report.json");
    let out = spectra(
        &[
            "verify",
            "--format",
            "json",
            "--out",
            out_path.to_str().unwrap(),
        ],
        &cfg,
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["summary"]["entries_passed"], 12);
    assert_eq!(v["tolerances"]["angular"], 1e-4);
}

#[test]
fn perturb_reports_terminating_series() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        &dir,
        "p.toml",
        "[perturbation]\nell = 3.0\ndelta_v = \"tanh\"\ncoeff = -1.0\nk_max = 4\n",
    );
    let out = spectra(&["perturb", "--format", "json"], &cfg);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["terminated"], true);
    let rows = v["tables"]["orders"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let de: Vec<f64> = rows.iter().map(|r| r[1].as_f64().unwrap()).collect();
    assert!(de[0].abs() < 1e-10);
    assert!((de[1] + 1.0 / 36.0).abs() < 1e-10);
    assert!(de[2].abs() < 1e-10 && de[3].abs() < 1e-10);
    assert!(v["tables"]["profile"]["columns"].as_array().unwrap().len() == 7);
}

#[test]
fn perturb_coth_ansatz_identifies_second_family() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        &dir,
        "p.toml",
        "[perturbation]\nell = 6.0\ndelta_v = \"csch2\"\ncoeff = 2.0\nansatz = \"coth\"\n[grid]\noffset = 0.001\n",
    );
    let out = spectra(&["perturb", "--format", "json"], &cfg);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert!((v["summary"]["exact_delta_eps"].as_f64().unwrap() - 20.0).abs() < 1e-8);
    assert_eq!(
        v["summary"]["identified_family"]["family"],
        "poschl_teller_ii"
    );
}

#[test]
fn transform_ring_form() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        &dir,
        "t.toml",
        "[potential.angular]\nform = \"ring\"\nbeta = 2.0\ngamma = 1.0\n",
    );
    let out = spectra(&["transform", "--format", "json"], &cfg);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["delta_v"]["coeff"], -1.0);
    assert_eq!(v["summary"]["constant_shift"], 2.0);
    assert_eq!(v["summary"]["round_trip"], true);
    assert_eq!(
        v["tables"]["identities"]["rows"].as_array().unwrap().len(),
        41
    );
}

#[test]
fn failed_verification_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // the default 1e-2 wall offset costs about 2e-4 on this spectrum
    let cfg = write(
        &dir,
        "p2.toml",
        "[potential]\nfamily = \"poschl_teller_ii\"\nell = 6.0\nalpha = 2.0\n",
    );
    assert_eq!(spectra(&["verify"], &cfg).status.code(), Some(1));
    assert_eq!(
        spectra(&["verify", "--tolerance", "1e-3"], &cfg)
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        &dir,
        "bad.toml",
        "[potential.angular]\nform = \"ring\"\nbeta = 0.0\ngamma = 1.0\ngamma2 = 1.0\n",
    );
    let out = spectra(&["transform"], &cfg);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gamma2"));

    let cfg = write(&dir, "cmd.toml", "[run]\ncommand = \"verify\"\n[potential.angular]\nform = \"ring\"\nbeta = 0.0\ngamma = 0.0\n");
    assert_eq!(spectra(&["transform"], &cfg).status.code(), Some(2));

    let cfg = write(&dir, "empty.toml", "");
    assert_eq!(spectra(&["perturb"], &cfg).status.code(), Some(2));
    assert_eq!(spectra(&["bogus"], &cfg).status.code(), Some(2));
    assert_eq!(
        spectra(&["verify", "--tolerance", "-1"], &cfg)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        spectra(&["spectrum"], &dir.path().join("missing.toml"))
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "ring.toml", RING);
    for cmd in ["spectrum", "verify"] {
        for format in ["csv", "json"] {
            let a = spectra(&[cmd, "--format", format], &cfg);
            let b = spectra(&[cmd, "--format", format], &cfg);
            assert!(!a.stdout.is_empty());
            assert_eq!(a.stdout, b.stdout, "{cmd} {format}");
        }
    }
}
