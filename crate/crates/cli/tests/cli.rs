use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn dsop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsop")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_derivative_mass() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s2.json");
    let o = dsop(&["construct", "--config", path_str(&config("derivative-mass.toml")), "--n", "2", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let coeffs: Vec<String> = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(coeffs, ["-2", "0", "1"]);
    assert!(stdout(&o).contains("degree 2"));
    assert!(stdout(&o).contains("d* 1"));
}

#[test]
fn construct_degree_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s0.json");
    let o = dsop(&["construct", "--config", path_str(&config("ordered-four-masses.toml")), "--n", "0", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&out).unwrap().trim(), r#"["1"]"#);
}

#[test]
fn construct_ordered_four_masses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s5.json");
    let o = dsop(&["construct", "--config", path_str(&config("ordered-four-masses.toml")), "--n", "5", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let coeffs: Vec<String> = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(coeffs[0], "-22386262325875230/16894750106161");
    assert_eq!(coeffs[5], "1");
}

#[test]
fn negative_lambda_exits_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    let text = fs::read_to_string(config("derivative-mass.toml")).unwrap().replace("lambda = \"2\"", "lambda = \"-1\"");
    fs::write(&cfg, text).unwrap();
    let out = dir.path().join("never.json");
    let o = dsop(&["construct", "--config", path_str(&cfg), "--n", "2", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("lambda must be nonnegative"), "{err}");
    assert!(err.contains("bad.toml:12:10"), "{err}");
    assert!(!out.exists());
}

#[test]
fn syntax_error_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("broken.toml");
    fs::write(&cfg, "[measure\ntype = \"laguerre\"\n").unwrap();
    let o = dsop(&["check-order", "--config", path_str(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("broken.toml:1:"), "{}", stderr(&o));
}

#[test]
fn math_precondition_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    // x on the cut [0, inf) has no limit.
    let o = dsop(&[
        "asymptotics",
        "--config",
        path_str(&config("single-mass.toml")),
        "--x",
        "2",
        "--ns",
        "4,8",
        "--csv",
        path_str(&csv),
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn check_order() {
    let o = dsop(&["check-order", "--config", path_str(&config("ordered-four-masses.toml"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "sequentially ordered");

    let o = dsop(&["check-order", "--config", path_str(&config("unordered-two-masses.toml"))]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("k=2: {-9} ⊂ int([-15, ∞))"), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("plain.toml");
    fs::write(&cfg, "[measure]\ntype = \"laguerre\"\nalpha = \"1\"\n").unwrap();
    let o = dsop(&["check-order", "--config", path_str(&cfg)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn theorem1_rows() {
    let o = dsop(&["theorem1", "--config", path_str(&config("ordered-four-masses.toml")), "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5);
    assert_eq!(text.lines().last().unwrap(), "n=5 changes=1 bound=1 PASS");
}

#[test]
fn theorem1_outside_hypothesis() {
    let o = dsop(&["theorem1", "--config", path_str(&config("unordered-two-masses.toml")), "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("hypothesis fails: k=2"), "{text}");
    assert!(text.contains("n=5 changes=2 bound=3 N/A"), "{text}");
}

#[test]
fn zeros_table() {
    let o = dsop(&["zeros", "--config", path_str(&config("unordered-two-masses.toml")), "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).take_while(|l| !l.is_empty()).collect();
    assert_eq!(rows.len(), 5);
    let re: Vec<f64> = rows.iter().map(|r| r.split_whitespace().nth(1).unwrap().parse().unwrap()).collect();
    assert!((re[0] + 19.77).abs() < 2e-2, "{re:?}");
    assert!(text.contains("sign changes in hull 2"));

    let o = dsop(&["zeros", "--config", path_str(&config("derivative-mass.toml")), "--n", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["roots"].as_array().unwrap().len(), 2);
    assert_eq!(v["bound"], 1);
}

#[test]
fn asymptotics_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ratio.csv");
    let svg = dir.path().join("ratio.svg");
    let cfg = config("single-mass.toml");
    let args = [
        "asymptotics",
        "--config",
        path_str(&cfg),
        "--x",
        "-4",
        "--ns",
        "16,64,256",
        "--csv",
        path_str(&csv),
    ];
    let o = dsop(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,ratio_re,ratio_im,limit_re,limit_im,abs_error");
    let errs: Vec<f64> = lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(errs.len(), 3);
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");

    let again = dir.path().join("again.csv");
    let mut args2 = args;
    args2[8] = path_str(&again);
    assert_eq!(dsop(&args2).status.code(), Some(0));
    assert_eq!(fs::read(&csv).unwrap(), fs::read(&again).unwrap());

    let o = dsop(&["plot", "--csv", path_str(&csv), "--svg", path_str(&svg)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc = fs::read_to_string(&svg).unwrap();
    assert!(doc.starts_with("<svg") && doc.trim_end().ends_with("</svg>"));
    assert_eq!(doc.matches("<circle").count(), 3);
    assert_eq!(doc.matches("<polyline").count(), 1);
}

#[test]
fn every_config_loads() {
    for entry in fs::read_dir(config("")).unwrap() {
        let path = entry.unwrap().path();
        let o = dsop(&["check-order", "--config", path_str(&path)]);
        assert!(matches!(o.status.code(), Some(0 | 1)), "{}: {}", path.display(), stderr(&o));
    }
}

#[test]
fn float_mode_construct() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("float.toml");
    let text = fs::read_to_string(config("derivative-mass.toml"))
        .unwrap()
        .replace("mode = \"exact\"", "mode = \"float\"")
        .replace("alpha = \"0\"", "alpha = \"1/2\"");
    fs::write(&cfg, text).unwrap();
    let out = dir.path().join("s.json");
    let o = dsop(&["construct", "--config", path_str(&cfg), "--n", "3", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let coeffs: Vec<String> = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(coeffs.len(), 4);
    assert_eq!(coeffs[3].parse::<f64>().unwrap(), 1.0);
}
