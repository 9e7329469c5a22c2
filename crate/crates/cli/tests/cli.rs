use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_convexiq"));
    c.env_remove("CONVEXIQ_FAULT_SCALE");
    c
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str], out: &Path) -> Output {
    bin().arg("--out").arg(out).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn make_named_cross_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["make", "--family", "named", "--name", "cross", "--n", "3"],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let made = fs::read(dir.path().join("body_0000.json")).unwrap();
    assert_eq!(made, fs::read(fixture("cross3.json")).unwrap());
}

#[test]
fn make_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "make",
        "--family",
        "random-zonotope",
        "--n",
        "4",
        "--generators",
        "6",
        "--count",
        "3",
        "--seed",
        "7",
    ];
    assert_eq!(code(&run(&args, a.path())), 0);
    assert_eq!(code(&run(&args, b.path())), 0);
    for f in [
        "body_0000.json",
        "body_0001.json",
        "body_0002.json",
        "corpus.json",
    ] {
        assert_eq!(
            fs::read(a.path().join(f)).unwrap(),
            fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn check_meyer_on_cross_is_equality() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "check",
            "--id",
            "meyer",
            fixture("cross3.json").to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let reports: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("reports.json")).unwrap()).unwrap();
    assert_eq!(reports[0]["equality_flag"], "equality_case_matched");
    assert!((reports[0]["lhs"].as_f64().unwrap() - 16.0 / 9.0).abs() < 1e-12);
    let csv = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn check_loomis_whitney_on_cube() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "check",
            "--id",
            "loomis_whitney",
            fixture("cube3.json").to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("EqualityCaseMatched"), "{}", stdout(&o));
}

#[test]
fn check_all_on_cross_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "check",
            "--id",
            "all",
            fixture("cross3.json").to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn corrupted_body_is_exit_65() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "check",
            "--id",
            "square_lower",
            fixture("corrupt.json").to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 65);
}

#[test]
fn unknown_id_is_exit_64_with_list() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "check",
            "--id",
            "no_such",
            fixture("cross3.json").to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 64);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("loomis_whitney") && err.contains("prob5_family"),
        "{err}"
    );
}

#[test]
fn usage_errors_are_not_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["frobnicate"], dir.path())), 64);
    assert_eq!(code(&run(&["--help"], dir.path())), 0);
}

#[test]
fn corrupted_measure_hook_gives_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .env("CONVEXIQ_FAULT_SCALE", "0.5")
        .arg("--out")
        .arg(dir.path())
        .args(["check", "--id", "loomis_whitney"])
        .arg(fixture("cube3.json"))
        .output()
        .unwrap();
    assert_eq!(code(&o), 2, "{}", stdout(&o));
}

#[test]
fn repro_all_passes_with_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["repro", "all"], dir.path());
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(!out.contains("FAIL"), "{out}");
    let k1 = out.lines().find(|l| l.contains("V1(K1) 2D")).unwrap();
    assert!(k1.contains("3.8663") && k1.ends_with("pass"));
    let csv = fs::read_to_string(dir.path().join("repro.csv")).unwrap();
    assert!(csv.contains("0.46058"));
    assert!(csv.lines().skip(1).all(|l| l.ends_with("true")));
    assert_eq!(code(&run(&["repro", "nonsense"], dir.path())), 64);
}

fn write_config(dir: &Path, name: &str, json: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, json).unwrap();
    p
}

#[test]
fn search_cg33_sanity_has_no_findings() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "cg.json",
        r#"{"problem":"cg33","n":3,"m":1,"family":{"kind":"zonotope","generators":4},
            "iterations":2000,"proposal_scale":0.05,"seed":42}"#,
    );
    let out = dir.path().join("run");
    let o = run(&["search", cfg.to_str().unwrap()], &out);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.join("search_result.json").exists());
    assert!(!out.join("findings").exists());
    assert!(stdout(&o).contains("median"));
}

#[test]
fn search_heron_trajectory_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "heron.json",
        r#"{"problem":"heron_n3","n":3,"m":1,"family":{"kind":"cross_perturbation"},
            "iterations":1200,"proposal_scale":0.02,"seed":5,"restarts":2}"#,
    );
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert_eq!(code(&run(&["search", cfg.to_str().unwrap()], &a)), 0);
    assert_eq!(code(&run(&["search", cfg.to_str().unwrap()], &b)), 0);
    let traj = fs::read_to_string(a.join("trajectory.csv")).unwrap();
    assert_eq!(traj.lines().count(), 3);
    for f in ["trajectory.csv", "search_result.json"] {
        assert_eq!(
            fs::read(a.join(f)).unwrap(),
            fs::read(b.join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn invalid_search_config_is_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "bad.json",
        r#"{"problem":"prob4","n":3,"m":1,"family":{"kind":"zonotope","generators":3},
            "iterations":10,"proposal_scale":0.05,"seed":1}"#,
    );
    assert_eq!(
        code(&run(&["search", cfg.to_str().unwrap()], dir.path())),
        64
    );
}

#[test]
fn jcurve_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "jcurve",
            fixture("cube3.json").to_str().unwrap(),
            "--samples",
            "5",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("x2,j\n0.0,1.0\n"));
    assert!(dir.path().join("jcurve_cube3.csv").exists());
}
