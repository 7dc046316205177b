use std::fs;
use std::process::{Command, Output};

fn knotlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotlab"))
        .args(args)
        .env_remove("KNOTLAB_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = knotlab(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn spectrum_matches_golden_file() {
    let got = stdout(&[
        "spectrum",
        "--N",
        "2",
        "--m-max",
        "12",
        "--dim",
        "3",
        "--partial-wave",
        "1",
    ]);
    let golden = include_str!("golden/spectrum_N2.csv");
    assert_eq!(got, golden);
}

#[test]
fn headers_are_exact() {
    let first_line = |args: &[&str]| stdout(args).lines().next().unwrap().to_string();
    assert_eq!(
        first_line(&["contour", "--samples", "3"]),
        "s,x,y,theta,sector"
    );
    assert_eq!(
        first_line(&["spectrum"]),
        "N,M,ell_num,ell_den,nu_num,nu_den,gamma_num,gamma_den"
    );
    assert_eq!(
        first_line(&["hankel"]),
        "nu,rho,theta,re_h1,im_h1,re_h2,im_h2"
    );
    assert_eq!(
        first_line(&["shoot"]),
        "nu,N,kappa,ratio,admissible,wronskian_drift"
    );
    assert_eq!(first_line(&["metric", "--dim", "3"]), "M,residual");
}

#[test]
fn shoot_reports_admissible_half_order() {
    let text = stdout(&["shoot", "--nu", "0.5,0.6", "--N", "1", "--kappa", "1"]);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows[0][4], "true");
    assert_eq!(rows[1][4], "false");
}

#[test]
fn scan_rows_follow_input_order() {
    let text = stdout(&["shoot", "--scan", "4:6", "--N", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let nus: Vec<f64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["nu"].as_f64().unwrap())
        .collect();
    assert_eq!(nus, vec![0.25, 0.5, 0.75, 1.0, 1.25, 1.5]);
    let adm: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["admissible"].as_str().unwrap())
        .collect();
    assert_eq!(adm, vec!["true", "true", "true", "false", "true", "true"]);
}

#[test]
fn contour_sectors_cover_one_loop() {
    let text = stdout(&["contour", "--N", "1"]);
    let sectors: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(sectors.first(), Some(&"0"));
    assert_eq!(sectors.last(), Some(&"2"));
}

#[test]
fn exit_codes() {
    assert_eq!(knotlab(&["nonsense"]).status.code(), Some(2));
    assert_eq!(knotlab(&["spectrum", "--N", "0"]).status.code(), Some(2));
    assert_eq!(knotlab(&["shoot", "--tol", "1e-3"]).status.code(), Some(2));
    assert_eq!(knotlab(&["metric", "--skew", "3"]).status.code(), Some(2));
    assert_eq!(knotlab(&["hankel", "--nu", "2"]).status.code(), Some(2));
    assert_eq!(knotlab(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_knotlab"))
        .args(["metric", "--dim", "4", "--format", "json"])
        .env("KNOTLAB_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let text = fs::read_to_string(dir.path().join("metric.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(v[3]["M"], 4);
}

#[test]
fn trajectory_and_summary_files() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("traj.csv");
    let summary = dir.path().join("summary.json");
    stdout(&[
        "shoot",
        "--nu",
        "0.5",
        "--trajectory",
        traj.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&traj).unwrap();
    assert!(text.starts_with("s,x,y,re_psi,im_psi,scale_log\n"));
    assert!(text.lines().count() > 50);

    stdout(&[
        "metric",
        "--dim",
        "5",
        "--seed",
        "8",
        "--summary",
        summary.to_str().unwrap(),
    ]);
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(v["dim"], 5);
    assert_eq!(v["spectrum"].as_array().unwrap().len(), 5);

    let multi = knotlab(&[
        "shoot",
        "--nu",
        "0.5,1.5",
        "--trajectory",
        traj.to_str().unwrap(),
    ]);
    assert_eq!(multi.status.code(), Some(2));
}
