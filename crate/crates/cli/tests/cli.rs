use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quadrot"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn two_points_give_three_records_and_a_summary() {
    let d = tempfile::tempdir().unwrap();
    let f = write(d.path(), "p.csv", "id,x,y\n1,0,0\n2,2,0\n");
    let o = run(&["squares", f.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[..3].iter().all(|l| l.starts_with(r#"{"record":"square""#)));
    assert!(lines[3].contains(r#""s4":3"#));
}

#[test]
fn linear_family_has_no_nonstapled_44() {
    let d = tempfile::tempdir().unwrap();
    let f = d.path().join("lin.csv");
    assert!(run(&["gen", "linear", "--n", "12", "--eps", "0.01", "--jitter", "1e-7", "--seed", "4", "--out", f.to_str().unwrap()]).status.success());
    let o = run(&["squares", f.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    let summary = s.lines().last().unwrap();
    assert!(!summary.contains("nonstapled(4,4)"), "{summary}");
}

#[test]
fn malformed_row_is_a_parse_error() {
    let d = tempfile::tempdir().unwrap();
    let f = write(d.path(), "bad.csv", "0,0,0\n1,1,1\n2,x,3\n");
    let o = run(&["squares", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("row 3"));
}

#[test]
fn degenerate_input_is_a_general_position_error() {
    let d = tempfile::tempdir().unwrap();
    let f = write(d.path(), "col.csv", "0,0\n1,1\n2,2\n3,0.5\n");
    assert_eq!(run(&["rotate", f.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn missing_file_is_an_io_error() {
    assert_eq!(run(&["squares", "/nonexistent/points.csv"]).status.code(), Some(5));
}

#[test]
fn single_point_diagram_has_four_rays() {
    let d = tempfile::tempdir().unwrap();
    let f = write(d.path(), "one.json", "[[1,2]]");
    let o = run(&["vd", f.to_str().unwrap(), "--theta", "0.3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("<line").count(), 4);
}

#[test]
fn theta_outside_the_quarter_is_rejected() {
    let d = tempfile::tempdir().unwrap();
    let f = write(d.path(), "one.json", "[[1,2]]");
    let o = run(&["vd", f.to_str().unwrap(), "--theta", "1.5707963267948966"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("same diagram is at 0"));
}

#[test]
fn unit_square_annulus_width_is_zero() {
    let d = tempfile::tempdir().unwrap();
    let f = write(d.path(), "sq.csv", "0,0\n1,0\n0,1\n1,1\n");
    let o = run(&["annulus", f.to_str().unwrap(), "--objective", "width"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains(r#""width":0.0000000000000000e0"#), "{}", stdout(&o));
}

#[test]
fn les_and_annulus_run_on_random_input() {
    let d = tempfile::tempdir().unwrap();
    let f = d.path().join("r.csv");
    assert!(run(&["gen", "random", "--n", "8", "--seed", "3", "--out", f.to_str().unwrap()]).status.success());
    for v in ["pinned", "boxed"] {
        let o = run(&["les", f.to_str().unwrap(), "--variant", v]);
        assert!(o.status.success());
        assert!(stdout(&o).contains(r#""radius":"#));
    }
    let o = run(&["annulus", f.to_str().unwrap(), "--objective", "area"]);
    assert!(stdout(&o).contains(r#""source":"classes""#));
}

#[test]
fn outputs_are_deterministic() {
    let d = tempfile::tempdir().unwrap();
    let f = d.path().join("r.csv");
    assert!(run(&["gen", "random", "--n", "9", "--seed", "5", "--out", f.to_str().unwrap()]).status.success());
    let a = run(&["rotate", f.to_str().unwrap()]);
    let b = run(&["rotate", f.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    let g1 = run(&["gen", "quad", "--n", "8", "--jitter", "1e-6", "--seed", "2"]);
    let g2 = run(&["gen", "quad", "--n", "8", "--jitter", "1e-6", "--seed", "2"]);
    assert_eq!(g1.stdout, g2.stdout);
}

#[test]
fn seed_comes_from_the_environment() {
    let a = bin().args(["gen", "random", "--n", "5"]).env("QUADROT_SEED", "11").output().unwrap();
    let b = run(&["gen", "random", "--n", "5", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_reports_all_equivalent() {
    let o = run(&["verify", "--sets", "10", "--seed", "1"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("all equivalent (10 sets)"));
}
