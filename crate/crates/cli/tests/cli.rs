use std::path::Path;
use std::process::{Command, Output};

fn rrt_ldv(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rrt-ldv"))
        .args(args)
        .current_dir(cwd)
        .env("LDV_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_bundled_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    for (name, summary) in [
        ("passage2d", "2-D, 3 obstacles, 1 passage regions"),
        ("box5d", "5-D, 4 obstacles"),
        ("empty2d", "0 obstacles"),
    ] {
        let o = rrt_ldv(&["validate", name], dir.path());
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(stdout(&o).contains(summary), "{}", stdout(&o));
    }
}

#[test]
fn broken_scenario_exits_2_and_names_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"name":"bad","dim":2,"bounds":{"lo":[0,0],"hi":[10,10]},
            "obstacles":[{"lo":[3,3],"hi":[3,5]}],
            "start":[1,1],"goal":{"center":[9,9],"radius":0.5},"passage_regions":[]}"#,
    )
    .unwrap();
    let o = rrt_ldv(&["validate", path.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("obstacles[0]"), "{}", stderr(&o));

    let o = rrt_ldv(&["bench", path.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));

    let o = rrt_ldv(&["validate", "no-such-scenario"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn start_in_collision_is_a_scenario_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("blocked.json");
    std::fs::write(
        &path,
        r#"{"name":"blocked","dim":2,"bounds":{"lo":[0,0],"hi":[10,10]},
            "obstacles":[{"lo":[0,0],"hi":[2,2]}],
            "start":[1,1],"goal":{"center":[9,9],"radius":0.5},"passage_regions":[]}"#,
    )
    .unwrap();
    let o = rrt_ldv(&["validate", path.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("start"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["plan", "passage2d", "--frobnicate"][..],
        &["plan", "passage2d", "--algo", "prm"],
        &["plan", "passage2d", "--lambda-s", "1.5"],
        &["bench", "passage2d", "--iters", "many"],
        &["launch"],
        &[],
    ] {
        let o = rrt_ldv(args, dir.path());
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
    }
    assert!(!dir.path().join("out").exists());
}

#[test]
fn help_and_version_exit_0() {
    let dir = tempfile::tempdir().unwrap();
    let o = rrt_ldv(&["--help"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bench"));
    let o = rrt_ldv(&["bench", "--help"], dir.path());
    assert!(stdout(&o).contains("--lambda-s"));
    let o = rrt_ldv(&["--version"], dir.path());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn plan_2d_writes_svg_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = rrt_ldv(
        &[
            "plan",
            "passage2d",
            "--iters",
            "300",
            "--seed",
            "3",
            "--out",
            "res",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg = std::fs::read_to_string(dir.path().join("res/passage2d-ldv.svg")).unwrap();
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    let csv = std::fs::read_to_string(dir.path().join("res/passage2d-ldv.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "trial,seed,algorithm,iteration,best_cost,n_nodes,n_xfail,elapsed_ns"
    );
    assert_eq!(lines.len(), 301);
    assert!(lines[1].starts_with("0,3,ldv,1,"));
}

#[test]
fn plan_5d_writes_csv_only() {
    let dir = tempfile::tempdir().unwrap();
    let o = rrt_ldv(
        &["plan", "box5d", "--algo", "rrt-star", "--iters", "200"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = dir.path().join("out");
    assert!(out.join("box5d-rrt-star.csv").exists());
    assert!(!out.join("box5d-rrt-star.svg").exists());
}

#[test]
fn bench_prints_summary_per_arm() {
    let dir = tempfile::tempdir().unwrap();
    let o = rrt_ldv(
        &[
            "bench",
            "passage2d",
            "--algo",
            "ldv",
            "--algo",
            "rrt-star",
            "--lambda-s",
            "0.9",
            "--lambda-i",
            "0.5",
            "--iters",
            "150",
            "--trials",
            "3",
            "--seed",
            "7",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("algorithm") && text.contains("success"));
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("ldv") || l.starts_with("rrt-star"))
        .collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("ldv"));

    let csv = std::fs::read_to_string(dir.path().join("out/passage2d-bench.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 3 * 150);
    assert!(csv.lines().nth(1).unwrap().starts_with("0,7,ldv,1,"));
}

#[test]
fn wall_clock_flag_fills_elapsed() {
    let dir = tempfile::tempdir().unwrap();
    let o = rrt_ldv(
        &["plan", "empty2d", "--iters", "50", "--wall-clock"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("out/empty2d-ldv.csv")).unwrap();
    let last = csv.lines().last().unwrap();
    assert_ne!(last.rsplit(',').next().unwrap(), "0");
}
