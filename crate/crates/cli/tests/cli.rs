use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const FISHER: &str = r#""model":{"diffusion":1.0,"advection":[0.0],"growth":{"type":"logistic","r":1.0},"map":{"type":"linear","alpha":1.0}}"#;

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("run.json");
    std::fs::write(&path, body).unwrap();
    path
}

fn run(cmd: &str, body: &str, extra: &[&str], seed: Option<&str>) -> (Output, TempDir) {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), body);
    let mut c = Command::new(env!("CARGO_BIN_EXE_impulse-front"));
    c.arg(cmd).arg("--config").arg(&cfg).args(extra);
    c.env_remove("IMPULSE_FRONT_SEED");
    if let Some(s) = seed {
        c.env("IMPULSE_FRONT_SEED", s);
    }
    (c.output().unwrap(), dir)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn unknown_key_is_config_error() {
    let body = format!(r#"{{{FISHER},"task":{{"speed":{{"simulate":false,"colour":1}}}}}}"#);
    let (o, _d) = run("speed", &body, &[], None);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("colour"));
}

#[test]
fn malformed_and_missing_config_exit_2() {
    let (o, _d) = run("speed", "{not json", &[], None);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_impulse-front"))
        .args(["speed", "--config", "/nonexistent/run.json"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn task_must_match_command() {
    let body = format!(r#"{{{FISHER},"task":{{"ray":{{}}}}}}"#);
    let (o, _d) = run("speed", &body, &[], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_model_is_config_error() {
    let body = r#"{"model":{"diffusion":-1.0,"advection":[0.0],"growth":{"type":"logistic","r":1.0},"map":{"type":"linear","alpha":1.0}},"task":{"speed":{"simulate":false}}}"#;
    let (o, _d) = run("speed", body, &[], None);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn extinction_regime_exit_3() {
    let body = r#"{"model":{"diffusion":1.0,"advection":[0.0],"growth":{"type":"linear","rate":-1.0},"map":{"type":"linear","alpha":1.0}},"task":{"speed":{}}}"#;
    let (o, _d) = run("speed", body, &[], None);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("extinction regime"));
}

#[test]
fn no_persistence_window_exit_3() {
    let body = r#"{"task":{"scenario":{"climate":{"d":1.0,"lambda":1.0,"gamma":0.5,"l1":1.0,"l2":1.0}}}}"#;
    let (o, _d) = run("scenario", body, &[], None);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn boundary_contamination_exit_4() {
    let body = format!(r#"{{{FISHER},"numerics":{{"spacing":0.1,"generations":20,"half_width":6.0}},"task":{{"simulate":{{}}}}}}"#);
    let (o, _d) = run("simulate", &body, &[], None);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn infinite_critical_size_serializes_as_inf() {
    let body = r#"{"model":{"diffusion":1.0,"advection":[3.0],"growth":{"type":"logistic","r":1.0},"map":{"type":"linear","alpha":1.0}},"task":{"critical_domain":{}}}"#;
    let (o, _d) = run("critical-domain", body, &[], None);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("dimension[count],critical_size[length],regime"));
    assert!(lines.next().unwrap().starts_with("1,inf,infinite,2,"));
}

#[test]
fn speed_matches_closed_form() {
    let body = format!(r#"{{{FISHER},"numerics":{{"spacing":0.1,"generations":25}},"task":{{"speed":{{}}}}}}"#);
    let (o, _d) = run("speed", &body, &[], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for line in stdout(&o).lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let analytic: f64 = cols[1].parse().unwrap();
        let simulated: f64 = cols[3].parse().unwrap();
        assert_eq!(cols[2], "");
        assert!((analytic - 2.0).abs() < 1e-12);
        assert!((simulated - 2.0).abs() < 0.04, "{line}");
    }
}

#[test]
fn sweep_rows_keep_input_order_across_jobs() {
    let body = format!(r#"{{{FISHER},"task":{{"sweep":{{"parameter":"q","values":[2.5,0.0,1.5,0.5,3.0,1.0]}}}}}}"#);
    let (one, _a) = run("sweep", &body, &["--jobs", "1"], None);
    let (four, _b) = run("sweep", &body, &["--jobs", "4"], None);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));
    let qs: Vec<f64> = stdout(&one).lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(qs, vec![2.5, 0.0, 1.5, 0.5, 3.0, 1.0]);
    let first: Vec<String> = stdout(&one).lines().nth(1).unwrap().split(',').map(String::from).collect();
    assert_eq!(first[1], "-0.5");
    assert_eq!(first[2], "inf");
}

#[test]
fn empty_sweep_range_exit_2() {
    let body = format!(r#"{{{FISHER},"task":{{"sweep":{{"parameter":"q","range":{{"from":0,"to":1,"steps":0}}}}}}}}"#);
    let (o, _d) = run("sweep", &body, &[], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty range"));
}

#[test]
fn sweep_reports_extinct_rows() {
    let body = format!(r#"{{{FISHER},"task":{{"sweep":{{"parameter":"r","values":[-0.5,1.0]}}}}}}"#);
    let (o, _d) = run("sweep", &body, &["--jobs", "2"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[1], "-0.5,nan,inf,extinction regime");
    assert!(rows[2].starts_with("1,2,"));
}

#[test]
fn savannah_writes_two_plot_blocks() {
    let body = r#"{"task":{"scenario":{"savannah":{"r":1.0,"s":0.3,"a11":1.0,"a22":0.5}}}}"#;
    let dir = TempDir::new().unwrap();
    let dir2 = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), body);
    let o = Command::new(env!("CARGO_BIN_EXE_impulse-front"))
        .arg("scenario")
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir2.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dat = std::fs::read_to_string(dir2.path().join("savannah.dat")).unwrap();
    let blocks: Vec<&str> = dat.trim_end().split("\n\n").collect();
    assert_eq!(blocks.len(), 2);
    for b in blocks {
        assert_eq!(b.lines().count(), 91);
        assert!(b.lines().all(|l| l.split_whitespace().count() == 2));
    }
    let csv = std::fs::read_to_string(dir2.path().join("savannah.csv")).unwrap();
    assert!(csv.starts_with("theta[deg],speed[length/generation],ray_speed[length/generation]\n"));
    assert!(dir2.path().join("savannah_summary.csv").exists());
}

#[test]
fn seeded_jitter_is_reproducible() {
    let body = format!(
        r#"{{{FISHER},"numerics":{{"spacing":0.1,"generations":12,"jitter":0.2}},"task":{{"simulate":{{}}}}}}"#
    );
    let (a, _x) = run("simulate", &body, &[], Some("42"));
    let (b, _y) = run("simulate", &body, &[], Some("42"));
    let (c, _z) = run("simulate", &body, &[], Some("43"));
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
    let (bad, _w) = run("simulate", &body, &[], Some("abc"));
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn oracle_agrees_with_closed_form() {
    let body = format!(r#"{{{FISHER},"task":{{"oracle":{{"directions":[[1.0]]}}}}}}"#);
    let (o, _d) = run("oracle", &body, &[], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let cols: Vec<f64> = out.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((cols[1] - 2.0).abs() < 1e-12);
    assert!(cols[2] >= cols[1] - 1e-9);
    assert!(cols[4] < 0.02);
}

#[test]
fn ray_needs_two_dimensions() {
    let body = format!(r#"{{{FISHER},"task":{{"ray":{{}}}}}}"#);
    let (o, _d) = run("ray", &body, &[], None);
    assert_eq!(o.status.code(), Some(2));
    let body = r#"{"model":{"diffusion":[[4.0,0.0],[0.0,1.0]],"advection":[0.0,0.0],"growth":{"type":"logistic","r":1.0},"map":{"type":"linear","alpha":1.0}},"task":{"ray":{"angles_deg":[0,45,90]}}}"#;
    let (o, _d) = run("ray", body, &[], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<Vec<f64>> = out.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    assert!((rows[0][1] - 4.0).abs() < 1e-12);
    for r in &rows {
        assert!(r[2] <= r[1] + 1e-9);
        assert!((r[2] - r[3]).abs() < 1e-6);
    }
}

#[test]
fn climate_bound_and_consistency() {
    let lambda = 2f64.exp() - 1.0;
    let l = 2.0 * std::f64::consts::PI;
    let body = format!(
        r#"{{"task":{{"scenario":{{"climate":{{"d":1.0,"lambda":{lambda},"gamma":0.5,"l1":{l},"l2":{l},"shift":1.0}}}}}}}}"#
    );
    let (o, _d) = run("scenario", &body, &[], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().ends_with("box_growth_exponent[1/generation],spread_consistent"));
    let cols: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!((cols[1].parse::<f64>().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(cols[3], "true");
    assert!((cols[6].parse::<f64>().unwrap() - 0.75).abs() < 1e-12);
    assert_eq!(cols[7], "true");
}

#[test]
fn stream_speeds_and_extinction() {
    let lambda = 1.1f64.exp() - 1.0;
    let body = format!(
        r#"{{"task":{{"scenario":{{"stream":{{"d":0.5,"sigma2":0.5,"r":0.1,"q":1.0,"mu":0.5,"lambda":{lambda}}}}}}}}}"#
    );
    let (o, _d) = run("scenario", &body, &[], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let cols: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(cols[0], "true");
    assert!((cols[3].parse::<f64>().unwrap() - 2.5).abs() < 1e-12);
    assert!((cols[4].parse::<f64>().unwrap() + 1.5).abs() < 1e-12 || (cols[4].parse::<f64>().unwrap() - 1.5).abs() < 1e-12);

    let body = r#"{"task":{"scenario":{"stream":{"d":0.5,"sigma2":0.5,"r":1.0,"q":1.0,"mu":0.5,"lambda":0.5}}}}"#;
    let (o, _d) = run("scenario", body, &[], None);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().nth(1).unwrap().starts_with("false,false,"));
    assert!(out.lines().nth(1).unwrap().ends_with(",,"));
}

#[test]
fn unwritable_output_is_config_error() {
    let body = format!(r#"{{{FISHER},"task":{{"sweep":{{"parameter":"q","values":[0.0]}}}}}}"#);
    let dir = TempDir::new().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let out = blocker.join("sub");
    let (o, _d) = run("sweep", &body, &["--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
}
