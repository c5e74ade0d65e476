use std::fs;
use std::process::{Command, Output};

fn dcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_reads_degree_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("deg.txt");
    fs::write(&path, "3\n3\n3\n3\n").unwrap();
    let out = dcm(&["check", path.to_str().unwrap(), "--mode", "r"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("ell"));

    fs::write(&path, "3\n3\n3\n").unwrap();
    let out = dcm(&["check", path.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn check_emits_json_for_models() {
    let out = dcm(&["check", "bivalued n=1000 d1=3 d2=4", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v.is_object());
}

#[test]
fn simulate_prints_one_line_per_step() {
    let out = dcm(&["simulate", "--degrees", "regular n=200 d=3", "--k", "5", "--steps", "12", "--seed", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let steps: Vec<&str> = text.lines().filter(|l| l.starts_with("s ")).collect();
    assert_eq!(steps.len(), 13);
    for (i, line) in steps.iter().enumerate() {
        let f: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(f[1], i.to_string());
        assert_eq!(f[2], "X");
        assert_eq!(f[4], "v");
    }
    assert!(text.lines().any(|l| l.starts_with("tau ")));
    let again = dcm(&["simulate", "--degrees", "regular n=200 d=3", "--k", "5", "--steps", "12", "--seed", "3"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn simulate_with_resets_marks_reset_steps() {
    let out = dcm(&["simulate", "--degrees", "regular n=50 d=3", "--steps", "4", "--resets", "1,3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.ends_with("RESET")).count(), 2);
}

const CONFIG: &str = "model = regular\nn = 500\nd = 3\nregime = supercritical, critical\nc_grid = 0.5, 1, 1.5cs\nN = 3000\nB = 20\nseed = 4\n";

#[test]
fn profile_output_does_not_depend_on_workers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(&cfg, CONFIG).unwrap();
    let mut outputs = Vec::new();
    for w in ["1", "3"] {
        let csv = dir.path().join(format!("out{w}.csv"));
        let out = dcm(&["profile", "--config", cfg.to_str().unwrap(), "--out", csv.to_str().unwrap(), "--workers", w]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push(fs::read_to_string(&csv).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0].lines().count(), 7);
}

#[test]
fn profile_with_no_replicas_writes_empty_estimates() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(&cfg, CONFIG.replace("N = 3000", "N = 0")).unwrap();
    let svg = dir.path().join("plot.svg");
    let out = dcm(&["profile", "--config", cfg.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).lines().count(), 7);
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn profile_rejects_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(&cfg, format!("{CONFIG}colour = blue\n")).unwrap();
    let out = dcm(&["profile", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn exact_checks_pass_and_mutations_fail() {
    assert!(dcm(&["exact"]).status.success());
    let out = dcm(&["exact", "--mutate", "drop-pairing-factor"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn reset_law_sums_to_one() {
    let out = dcm(&["reset-law", "--degrees", "regular n=4 d=2", "--k", "2", "--t", "2", "--samples", "2000"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let total = text.lines().find(|l| l.starts_with("total")).unwrap();
    let v: f64 = total.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((v - 1.0).abs() < 1e-12);
    assert_eq!(text.lines().filter(|l| l.starts_with('{')).count(), 4);
}
