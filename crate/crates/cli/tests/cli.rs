use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], config: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ctinst"));
    cmd.args(args);
    let file = config.map(|text| {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    });
    if let Some(f) = &file {
        cmd.arg("--config").arg(f.path());
    }
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn csv_rows(out: &Output) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn default_verify_passes() {
    let out = run(&["verify"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["passed"], true);
    let p = &r["points"][0];
    assert_eq!((p["xi"].as_f64(), p["kappa"].as_f64()), (Some(0.6), Some(1.0)));
    for (name, q) in p["quantities"].as_object().unwrap() {
        let keys: Vec<_> = q.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys.len(), 4, "{name}");
        for k in ["value", "method", "error_estimate", "provenance"] {
            assert!(q.get(k).is_some(), "{name} lacks {k}");
        }
        assert!(["closed_form", "quadrature"].contains(&q["provenance"].as_str().unwrap()));
    }
    assert!(p["checks"].as_array().unwrap().iter().any(|c| c["name"] == "ricci"));
}

#[test]
fn out_of_range_xi_is_a_config_error() {
    let out = run(&["verify"], Some("xi = 0.4\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("xi"));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_config_is_a_config_error() {
    for text in ["colour = blue\n", "xi_grid = 0.55:0.6\n", "tolerance.ricci = -1\n", "tau = 0.5\n"] {
        assert_eq!(run(&["periods"], Some(text)).status.code(), Some(2), "{text}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_ctinst")).args(["verify", "--config", "/nonexistent/file"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn loosened_tolerances_keep_the_pass_set_and_are_recorded() {
    let strict = json(&run(&["verify"], None));
    let loose = run(&["verify"], Some("tolerance.ricci = 1e-4\ntolerance.q_routes = 1e-5\n"));
    assert_eq!(loose.status.code(), Some(0));
    let loose = json(&loose);
    assert_eq!(loose["config"]["tolerances"]["ricci"], 1e-4);
    let names = |r: &Value| -> Vec<(String, bool)> {
        r["points"][0]["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| (c["name"].as_str().unwrap().to_string(), c["passed"].as_bool().unwrap()))
            .collect()
    };
    assert_eq!(names(&strict), names(&loose));
}

#[test]
fn a_failed_check_exits_one_and_is_named() {
    let out = run(&["verify"], Some("tolerance.roundtrip = 1e-300\n"));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL roundtrip"));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn sweep_csv_has_one_row_per_grid_point() {
    let out = run(&["sweep", "--format", "csv"], Some("xi_grid = 0.52, 0.6, 0.68\nkappa_grid = 0.5, 1, 2, 4\n"));
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&out);
    assert_eq!(&header[..2], ["xi", "kappa"]);
    assert_eq!(rows.len(), 12);
    assert_eq!((rows[0][0], rows[0][1]), (0.52, 0.5));
    assert_eq!((rows[1][0], rows[1][1]), (0.52, 1.0));
    assert_eq!((rows[11][0], rows[11][1]), (0.68, 4.0));
}

#[test]
fn fifty_point_sweep_keeps_q_negative_definite() {
    let out = run(&["sweep", "--format", "csv"], Some("xi_grid = 0.501:0.706:50\n"));
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&out);
    let col = header.iter().position(|h| h == "q_eigenvalue_max").unwrap();
    let check = header.iter().position(|h| h == "check_q_negative_definite").unwrap();
    assert_eq!(rows.len(), 50);
    assert!(rows.iter().all(|r| r[col] < 0.0 && r[check] == 0.0));
}

#[test]
fn periods_grow_like_root_kappa() {
    let out = run(&["sweep", "--format", "csv"], Some("xi = 0.6\nkappa_grid = 0.1:10:7\n"));
    let (header, rows) = csv_rows(&out);
    for name in ["omega_minus_B2", "omega_minus_B3", "omega_2_B2", "omega_2_B3"] {
        let col = header.iter().position(|h| h == name).unwrap();
        let (lx, ly): (Vec<f64>, Vec<f64>) = rows.iter().map(|r| (r[1].ln(), r[col].abs().ln())).unzip();
        let n = lx.len() as f64;
        let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
        let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
        assert!((sxy / sxx - 0.5).abs() < 1e-10, "{name}: slope {}", sxy / sxx);
    }
}

#[test]
fn reports_are_reproducible_across_thread_counts() {
    let cfg = "xi_grid = 0.55, 0.6, 0.65\nkappa_grid = 1, 2\n";
    let a = run(&["sweep", "--jobs", "1"], Some(cfg));
    let b = run(&["sweep", "--jobs", "4"], Some(cfg));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn every_subcommand_writes_to_out() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in ["periods", "energies", "intersection", "partition", "rod-structure"] {
        let path = dir.path().join(format!("{cmd}.json"));
        let out = run(&[cmd, "--out", path.to_str().unwrap()], None);
        assert_eq!(out.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(r["command"], cmd);
        assert!(!r["points"][0]["quantities"].as_object().unwrap().is_empty());
    }
}

#[test]
fn partition_reports_each_tau() {
    let out = run(&["partition"], Some("tau = 1i, 0.3+0.2i, 2i\n"));
    let r = json(&out);
    let q = &r["points"][0]["quantities"];
    assert!((q["z0_re"]["value"].as_f64().unwrap() - 1.117960396113).abs() < 1e-11);
    assert!(q["z2_re"]["value"].as_f64().unwrap() >= 1.0);
    assert!(q["z1_im"]["value"].as_f64().unwrap().abs() > 0.0);
    assert!(q["z0_re"]["error_estimate"].as_f64().unwrap() < 1e-12);
}
