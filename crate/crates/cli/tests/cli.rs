use std::process::{Command, Output};

fn steklov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steklov"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_reproduces_the_five_point_rows() {
    let o = steklov(&[
        "solve",
        "--g",
        "builtin:f1",
        "--M",
        "5",
        "--points",
        "paper",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    for r in &rows {
        assert!((r[2] - r[3]).abs() < 1e-3, "{r:?}");
    }
    // the center point is reproduced to high accuracy
    assert!((rows[4][2] + 0.25).abs() < 1e-6);
}

#[test]
fn empty_global_count_lists_only_the_constant() {
    let o = steklov(&["spectrum", "--count", "0"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "index,family,nu,delta\n0,Const,0.0000000000000000e0,0.0000000000000000e0\n"
    );
}

#[test]
fn one_root_per_family_on_the_square_includes_the_xy_mode() {
    let o = steklov(&["spectrum", "--per-family", "1"]);
    let text = stdout(&o);
    // xy takes the first slot of its symmetry class
    assert!(text
        .lines()
        .any(|l| l.contains(",XY,0.0000000000000000e0,1.0000000000000000e0")));
    assert_eq!(text.lines().count(), 1 + 9);
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        &["spectrum", "--h", "0"][..],
        &["solve", "--g", "builtin:f1", "--kind", "robin", "--b", "-2"],
        &["solve", "--g", "builtin:f2", "--kind", "neumann"],
        &["solve", "--g", "expr:sin(", "--points", "paper"],
        &["tables", "--which", "15"],
    ] {
        let o = steklov(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn grid_output_is_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = steklov(&[
            "grid",
            "--kind",
            "neumann",
            "--g",
            "builtin:bd1",
            "--M",
            "3",
            "--grid",
            "11",
            "--out",
            path.to_str().unwrap(),
            "--threads",
            "2",
        ]);
        assert!(o.status.success());
        std::fs::read_to_string(path).unwrap()
    };
    let a = run("a.csv");
    assert_eq!(a, run("b.csv"));
    assert_eq!(a.lines().count(), 1 + 121);
    assert!(a.starts_with("x,y,u,exact,error\n"));
}

#[test]
fn spectrum_cache_feeds_solve() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("s.json");
    let c = cache.to_str().unwrap();
    assert!(
        steklov(&["spectrum", "--h", "0.8", "--M", "3", "--format", "json", "--out", c])
            .status
            .success()
    );
    let from_cache = steklov(&[
        "solve",
        "--h",
        "0.8",
        "--g",
        "builtin:f3",
        "--spectrum",
        c,
        "--grid",
        "5",
    ]);
    let fresh = steklov(&[
        "solve",
        "--h",
        "0.8",
        "--M",
        "3",
        "--g",
        "builtin:f3",
        "--grid",
        "5",
    ]);
    assert!(from_cache.status.success());
    assert_eq!(stdout(&from_cache), stdout(&fresh));
    // a cache for another aspect ratio is refused
    let wrong = steklov(&["solve", "--h", "0.5", "--g", "builtin:f3", "--spectrum", c]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn check_passes_and_reports_json() {
    let o = steklov(&[
        "check", "--h", "0.6", "--global", "30", "--seed", "3", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 9);
}

#[test]
fn tables_report_agreement() {
    let o = steklov(&["tables", "--which", "1,12"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")), "{text}");
}
