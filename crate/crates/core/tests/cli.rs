use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxplus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn dist_prints_both_metrics() {
    let o = run(&["dist", "--unit", "1 1", "0 0", "0 2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "u 2\nhu 2\n");

    let o = run(&["dist", "--unit", "1 1", "--metric", "hu", "-1 1", "0 0"]);
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn norm_of_mixed_signs() {
    let o = run(&["norm", "--metric", "hu", "-1 1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn member_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let gens = write(dir.path(), "gens.txt", "# segment\n0 2\n2 0\n");
    let o = run(&["member", "--gens", &gens, "2 1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("true"));
    assert_eq!(lines.next(), Some("witness -1 0"));

    let o = run(&["member", "--gens", &gens, "1 1"]);
    assert_eq!(stdout(&o), "false\n");
}

#[test]
fn parse_errors_point_at_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let gens = write(dir.path(), "bad.txt", "0 2\n2 x\n");
    let o = run(&["member", "--gens", &gens, "1 1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.starts_with("error: "), "{err}");
    assert!(err.contains(&format!("{gens}:2:3:")), "{err}");
}

#[test]
fn domain_errors_exit_one() {
    let o = run(&["dist", "--unit", "1 -1", "0 0", "1 1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: "));

    let o = run(&["ball-svg", "--unit", "1 1 1", "--center", "0 0 0", "--radius", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["dist", "0 0"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("ball-svg"));
}

#[test]
fn ball_svg_is_deterministic() {
    let args = ["ball-svg", "--unit", "1 1", "--center", "0 0", "--radius", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let svg = stdout(&a);
    assert!(svg.starts_with("<?xml") || svg.starts_with("<svg"), "{svg}");
    assert!(svg.trim_end().ends_with("</svg>"));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ball.svg");
    let mut with_file = args.to_vec();
    let name = file.display().to_string();
    with_file.extend(["-o", &name]);
    let c = run(&with_file);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(std::fs::read(&file).unwrap(), a.stdout);
}

#[test]
fn geodesic_vertices() {
    let o = run(&["geodesic", "--unit", "1 1", "0 0", "2 1", "--vertices"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 0\n1 0\n2 1\n");
}

#[test]
fn hull_distance_certifies() {
    let dir = tempfile::tempdir().unwrap();
    let gens = write(dir.path(), "gens.txt", "0 2\n2 0\n");
    let o = run(&["hull-distance", "--gens", &gens, "3 3", "--certify"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("1"));
    assert!(out.contains("certified true"));
}

#[test]
fn fixpoint_converges() {
    let dir = tempfile::tempdir().unwrap();
    let gens = write(dir.path(), "gens.txt", "0 2\n2 0\n");
    let o = run(&["fixpoint", "--gens", &gens, "--lambda", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let residual: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("residual "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual <= 1e-6);
}

#[test]
fn verify_subset_passes() {
    let o = run(&["verify", "--trials", "20", "--only", "norm-sandwich"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 of 1 checks passed"));
}
