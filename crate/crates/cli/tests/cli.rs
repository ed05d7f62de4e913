use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relu-forge"))
        .args(args)
        .current_dir(dir)
        .env_remove("RELU_FORGE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn build_then_verify_square() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["build", "square", "--depth", "3", "-o", "net.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("net.json").exists());
    let o = run(dir.path(), &["verify", "--net", "net.json", "--target", "square", "--strategy", "dyadic"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("measured   1.5625e-2"), "{out}");
    assert!(out.contains("bound      1.5625e-2"), "{out}");
}

#[test]
fn verify_json_report() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["build", "multiply", "--depth", "2", "-o", "m.json"]);
    let o = run(dir.path(), &["verify", "-i", "m.json", "--target", "multiply", "--strategy", "uniform:65", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let measured = v["measured"].as_f64().unwrap();
    assert!((1.0 / 16.0..=3.0 / 16.0).contains(&measured));
    assert_eq!(v["grid"], "uniform:65");
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["sweep", "square", "--depths", "2:8", "--csv", "out.csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("out.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("L,depth,std_width,params,bound,measured,ratio"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 7);
    for row in rows {
        let ratio: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(ratio <= 1.0, "{row}");
    }
}

#[test]
fn output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = run(dir.path(), &["--threads", "1", "sweep", "multiply", "--depths", "1:3", "--strategy", "uniform:33"]);
    let b = run(dir.path(), &["--threads", "2", "sweep", "multiply", "--depths", "1:3", "--strategy", "uniform:33"]);
    assert_eq!(a.stdout, b.stdout);
    run(dir.path(), &["build", "poly", "--coeffs", "0,0:1;2,0:-1;1,1:0.5", "--depth", "3", "-o", "p1.json"]);
    run(dir.path(), &["build", "poly", "--coeffs", "0,0:1;2,0:-1;1,1:0.5", "--depth", "3", "-o", "p2.json"]);
    assert_eq!(fs::read(dir.path().join("p1.json")).unwrap(), fs::read(dir.path().join("p2.json")).unwrap());
}

#[test]
fn convert_and_eval_agree() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["build", "monomial", "--indices", "1,2,2", "--depth", "3", "-o", "m.json"]);
    let o = run(dir.path(), &["convert", "skip2std", "-i", "m.json", "-o", "s.json"]);
    assert_eq!(o.status.code(), Some(0));
    let a = run(dir.path(), &["eval", "-i", "m.json", "--point", "-0.3,0.7"]);
    let b = run(dir.path(), &["eval", "-i", "s.json", "--point", "-0.3,0.7"]);
    let (a, b): (f64, f64) = (stdout(&a).trim().parse().unwrap(), stdout(&b).trim().parse().unwrap());
    assert!((a - b).abs() < 1e-12);
    assert!((a - (-0.3 * 0.49)).abs() <= 3.0 * 2.0 / 64.0);
}

#[test]
fn shallow_conversions() {
    let dir = tempfile::tempdir().unwrap();
    let doc = r#"{"version": 1, "kind": "shallow", "input_dim": 1, "domain": [[-1, 1]],
        "activation": "sigmoidal", "c0": 0.5,
        "units": [{"a": [2.0], "b": 0.0, "c": 1.0}, {"a": [-1.0], "b": 0.5, "c": -2.0}]}"#;
    fs::write(dir.path().join("s.json"), doc).unwrap();
    assert_eq!(run(dir.path(), &["convert", "sig2relu", "-i", "s.json", "-o", "r.json"]).status.code(), Some(0));
    let o = run(dir.path(), &["convert", "wide2deep", "--partition", "2,2", "-i", "r.json", "-o", "d.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for x in ["-0.8", "0.1", "0.6"] {
        let s: f64 = stdout(&run(dir.path(), &["eval", "-i", "s.json", "--point", x])).trim().parse().unwrap();
        let d: f64 = stdout(&run(dir.path(), &["eval", "-i", "d.json", "--point", x])).trim().parse().unwrap();
        assert!((s - d).abs() < 1e-12, "x={x}: {s} vs {d}");
    }
    let o = run(dir.path(), &["convert", "wide2deep", "--partition", "2,2", "-i", "s.json", "-o", "bad.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failed_bound_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["build", "square", "--depth", "2", "-o", "sq.json"]);
    let o = run(dir.path(), &["verify", "-i", "sq.json", "--target", "exp", "--strategy", "uniform:101"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn input_problems_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["eval", "-i", "missing.json", "--point", "0"]).status.code(), Some(2));
    fs::write(dir.path().join("broken.json"), "{\"version\": 1, \"kind\": ").unwrap();
    let o = run(dir.path(), &["info", "-i", "broken.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte"));
    assert_eq!(run(dir.path(), &["build", "square", "-o", "x.json"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(2));
    run(dir.path(), &["build", "square", "--depth", "2", "-o", "sq.json"]);
    let o = run(dir.path(), &["eval", "-i", "sq.json", "--point", "0.1,0.2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn info_reports_shape() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["build", "square", "--depth", "2", "-o", "sq.json"]);
    let out = stdout(&run(dir.path(), &["info", "-i", "sq.json"]));
    assert!(out.contains("depth      2"));
    assert!(out.contains("width      2"));
    assert!(out.contains("params     38"));
    assert!(out.contains("certificate square"));
}

#[test]
fn analytic_build_reports_choices() {
    let dir = tempfile::tempdir().unwrap();
    let o =
        run(dir.path(), &["build", "analytic", "--preset", "sin", "--eps", "1e-3", "--delta", "0.25", "-o", "a.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degree"));
    let o = run(dir.path(), &["verify", "-i", "a.json", "--target", "sin", "--strategy", "uniform:2049"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(dir.path(), &["build", "analytic", "--eps", "2", "--delta", "0.25", "-o", "b.json"]);
    assert_eq!(o.status.code(), Some(2));
}
