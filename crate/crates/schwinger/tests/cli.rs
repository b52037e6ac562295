use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_schwinger"));
    c.env_remove("SCHWINGER_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn exit_codes() {
    let o = run(&["verify", "--dim", "4", "--suite", "weyl", "--samples", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("phase-space requires odd dimension"));

    assert_eq!(run(&["cloud", "--dim", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--dim", "3", "--ensemble", "bures"]).status.code(), Some(2));
    assert_eq!(run(&["harper", "--dim", "1"]).status.code(), Some(2));

    let o = run(&["verify", "--dim", "3", "--samples", "200", "--suite", "identities"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("result: pass"));
}

#[test]
fn unwritable_output_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = blocker.join("cloud.csv");
    let o = run(&["cloud", "--dim", "3", "--samples", "4", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cloud_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = ["cloud", "--dim", "4", "--samples", "5000", "--seed", "77"];
    assert!(bin().args(args).args(["--out", p(&a), "--threads", "1"]).output().unwrap().status.success());
    assert!(bin().args(args).args(["--out", p(&b), "--threads", "3"]).output().unwrap().status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let rows = fs::read_to_string(&a).unwrap().lines().count();
    assert_eq!(rows, 5001);
}

#[test]
fn rerun_from_manifest_reproduces_output() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("run.csv");
    let o = run(&["cloud", "--dim", "3", "--samples", "300", "--ensemble", "mixed-hs", "--seed", "5", "--out", p(&a)]);
    assert!(o.status.success());
    let manifest = dir.path().join("run.manifest.json");
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(m["command"], "cloud");
    assert_eq!(m["seed"], 5);
    assert_eq!(m["config"]["ensemble"], "mixed-hs");

    let b = dir.path().join("again.csv");
    let o = run(&["rerun", "--manifest", p(&manifest), "--out", p(&b)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(dir.path().join("again.summary.json").exists());
}

#[test]
fn seed_from_environment_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"dim": 3, "samples": 20, "seed": 123}"#).unwrap();
    let seed_of = |o: &Output| -> String {
        let s = stdout(o);
        s.lines().next().unwrap().split("seed=").nth(1).unwrap().to_owned()
    };
    let out = dir.path().join("x.csv");
    let base = ["cloud", "--config", p(&cfg), "--out", p(&out)];
    assert_eq!(seed_of(&run(&base)), "123");
    let o = bin().args(base).env("SCHWINGER_SEED", "9").output().unwrap();
    assert_eq!(seed_of(&o), "9");
    let o = bin().args(base).args(["--seed", "4"]).env("SCHWINGER_SEED", "9").output().unwrap();
    assert_eq!(seed_of(&o), "4");
    let o = bin().args(base).env("SCHWINGER_SEED", "nope").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_cloud_has_one_record_per_sample() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = run(&["cloud", "--dim", "5", "--samples", "100", "--format", "json", "--out", p(&out)]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 100);
    for (i, r) in recs.iter().enumerate() {
        assert_eq!(r["index"], i as u64);
        assert!(r["admissible"].is_boolean());
    }
}

#[test]
fn weyl_accepts_a_state_file() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("rho.json");
    let half = 1.0 / 3.0;
    let rows: Vec<Vec<[f64; 2]>> = (0..3)
        .map(|i| (0..3).map(|j| if i == j { [half, 0.0] } else { [0.0, 0.0] }).collect())
        .collect();
    fs::write(&state, serde_json::to_string(&rows).unwrap()).unwrap();
    let out = dir.path().join("w.json");
    let o = run(&["weyl", "--dim", "3", "--state", p(&state), "--out", p(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    for row in v["wigner"].as_array().unwrap() {
        for w in row.as_array().unwrap() {
            assert!((w.as_f64().unwrap() - half).abs() < 1e-14);
        }
    }

    fs::write(&state, "[[[2,0],[0,0]],[[0,0],[-1,0]]]").unwrap();
    assert_eq!(run(&["weyl", "--dim", "3", "--state", p(&state)]).status.code(), Some(2));
}

#[test]
fn harper_reports() {
    let o = run(&["harper", "--dim", "6"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("S0 = 1.8296"));
    let o = run(&["harper", "--dim", "20"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("numerical path only"));
    let o = run(&["harper", "--dim", "3", "--theta-scan", "--grid", "101"]);
    assert!(stdout(&o).contains("θ* = 0.7853"));
}
