use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn abflux(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abflux")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(key).map(|v| v.trim_start_matches([' ', '=']).trim().parse().unwrap()))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn eval_plane_wave() {
    let o = abflux(&["eval", "--alpha", "2", "--rho", "1", "--theta", "1", "--method", "closed"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    // e^{-2i} e^{-i cos 1}
    let arg = -2.0 - 1.0_f64.cos();
    assert!((field(&t, "re") - arg.cos()).abs() < 1e-13);
    assert!((field(&t, "im") - arg.sin()).abs() < 1e-13);
    assert!((field(&t, "abs") - 1.0).abs() < 1e-13);
}

#[test]
fn eval_half_flux_agrees_across_methods() {
    let mut vals = Vec::new();
    for m in ["series", "decompose", "closed", "convolution"] {
        let o = abflux(&["eval", "--alpha", "0.5", "--rho", "3", "--theta", "1", "--method", m]);
        assert_eq!(o.status.code(), Some(0), "{m}");
        let t = stdout(&o);
        vals.push((field(&t, "re"), field(&t, "im")));
    }
    for v in &vals {
        assert!((v.0 + 0.266_485_732_770_750_51).abs() < 1e-8 && (v.1 + 0.840_727_271_475_079_09).abs() < 1e-8, "{v:?}");
    }
}

#[test]
fn exit_codes() {
    // precondition: closed form needs integer or half-integer flux
    assert_eq!(abflux(&["eval", "--alpha", "0.3", "--rho", "1", "--theta", "1", "--method", "closed"]).status.code(), Some(2));
    assert_eq!(abflux(&["eval", "--alpha", "0.3", "--rho", "-1", "--theta", "1"]).status.code(), Some(2));
    assert_eq!(abflux(&["eval", "--alpha", "0.5", "--rho", "1"]).status.code(), Some(2));
    // the series cannot converge within the term budget
    assert_eq!(abflux(&["eval", "--alpha", "0.5", "--rho", "1e6", "--theta", "1"]).status.code(), Some(3));
    let o = abflux(&["grid", "--alpha", "0", "--rho", "1", "--theta", "1", "--out", "/nonexistent-dir/g.csv"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(abflux(&["laplace-report", "--probes", "/nonexistent-dir/p.txt"]).status.code(), Some(4));
}

#[test]
fn unknown_identity_is_usage_error() {
    let o = abflux(&["laplace-report", "--identity", "eq99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("eq99"));
}

#[test]
fn probes_outside_half_plane_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("probes.txt");
    fs::write(&p, "# s values\n1,0\n-0.5,1\n").unwrap();
    let o = abflux(&["laplace-report", "--identity", "eq10", "--probes", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("violates Re(s) > 0"));
}

#[test]
fn laplace_report_bessel_row() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("probes.txt");
    fs::write(&p, "1\n").unwrap();
    let json = dir.path().join("r.json");
    let o = abflux(&["laplace-report", "--identity", "eq10", "--probes", p.to_str().unwrap(), "--out", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    let row = rows.as_array().unwrap().iter().find(|r| r["probe"]["nu"] == 0.0).unwrap();
    assert_eq!(row["identity_id"], "eq10");
    for side in ["lhs", "rhs"] {
        let re = row[side][0].as_f64().unwrap();
        assert!((re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9, "{side} {re}");
    }
    assert_eq!(row["passed"], true);
}

fn read_csv(path: &Path) -> Vec<Vec<f64>> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("rho,theta,re,im,abs,phase"));
    lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

#[test]
fn single_point_grid_matches_eval() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("g.csv");
    let o = abflux(&["grid", "--alpha", "0.3", "--rho", "2.5", "--theta", "0.7", "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows = read_csv(&csv);
    assert_eq!(rows.len(), 1);
    let e = stdout(&abflux(&["eval", "--alpha", "0.3", "--rho", "2.5", "--theta", "0.7"]));
    assert!((rows[0][2] - field(&e, "re")).abs() < 1e-13);
    assert!((rows[0][3] - field(&e, "im")).abs() < 1e-13);
}

#[test]
fn zero_flux_grid_has_unit_modulus() {
    let o = abflux(&["grid", "--alpha", "0", "--rho", "0:10:6", "--theta", "0:2pi:8:open", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    let rows: Vec<Vec<f64>> = t.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 48);
    assert!(rows.iter().all(|r| (r[4] - 1.0).abs() < 1e-12));
}

#[test]
fn half_flux_grid_is_periodic() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("g.csv");
    let o = abflux(&["grid", "--alpha", "0.5", "--rho", "1:5:3", "--theta", "0:4pi:16:open", "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows = read_csv(&csv);
    for block in rows.chunks(16) {
        for j in 0..8 {
            assert!((block[j][4] - block[j + 8][4]).abs() < 1e-12);
            assert!((block[j][2] - block[j + 8][2]).abs() < 1e-12);
        }
    }
}

#[test]
fn json_grid_output() {
    let o = abflux(&["grid", "--alpha", "1.5", "--rho", "0:2:3", "--theta", "0:pi:2", "--format", "json", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["meta"]["alpha"], 1.5);
    assert_eq!(v["rho"].as_array().unwrap().len(), 3);
    assert_eq!(v["re"].as_array().unwrap().len(), 3);
    assert_eq!(v["re"][0].as_array().unwrap().len(), 2);
    // F vanishes at rho = 0 for alpha = 3/2 (lowest order is 1/2)
    assert_eq!(v["re"][0][0], 0.0);
}

#[test]
fn reruns_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut docs = Vec::new();
    for k in 0..2 {
        let p = dir.path().join(format!("c{k}.json"));
        let o = abflux(&[
            "compare", "--alpha", "0.5", "--method-a", "series", "--method-b", "ab-original", "--no-timestamp",
            "--out", p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(1));
        docs.push(fs::read(p).unwrap());
    }
    assert_eq!(docs[0], docs[1]);
}

#[test]
fn ab_original_is_antiperiodic() {
    let o = abflux(&["singlevalued", "--alpha", "0.5", "--rho", "2", "--method", "ab-original"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("multiplier=-1.000000000000+0.000000000000i"));
    let o = abflux(&["singlevalued", "--alpha", "0.5", "--rho", "2", "--method", "closed"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn propagator_free_check() {
    let o = abflux(&[
        "propagator", "--alpha", "0", "--tau", "1", "--r", "0.5", "--theta", "0.3", "--r-prime", "2", "--theta-prime", "0",
        "--check-free",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(field(&stdout(&o), "free_residual") < 1e-10);
    let o = abflux(&["propagator", "--alpha", "0.5", "--tau", "0", "--r", "1", "--theta", "0", "--r-prime", "1", "--theta-prime", "0"]);
    assert_eq!(o.status.code(), Some(2));
}
