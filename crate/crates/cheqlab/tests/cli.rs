use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn cheqlab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cheqlab"))
        .args(args)
        .current_dir(dir)
        .env_remove("CHEQLAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

struct Frames {
    dir: TempDir,
}

impl Frames {
    fn new() -> Frames {
        let dir = tempfile::tempdir().unwrap();
        for (family, n, file) in [
            ("cheq", "1", "f1.json"),
            ("cheq", "2", "f2.json"),
            ("medvedev", "1", "m1.json"),
            ("medvedev", "4", "m4.json"),
            ("h", "0", "h.json"),
            ("fork", "0", "fork.json"),
        ] {
            let out = cheqlab(dir.path(), &["build", family, n, "--out", file]);
            assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        }
        Frames { dir }
    }

    fn run(&self, args: &[&str]) -> Output {
        cheqlab(self.dir.path(), args)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

#[test]
fn build_reports_counts() {
    let dir = tempfile::tempdir().unwrap();
    for (args, summary) in [
        (
            vec!["build", "cheq", "2", "--out", "a.json"],
            "cheq-2: 9 points, 12 covers",
        ),
        (
            vec!["build", "medvedev", "2", "--out", "b.json"],
            "medvedev-2: 7 points, 9 covers",
        ),
        (
            vec!["build", "h", "0", "--out", "c.json"],
            "h: 7 points, 10 covers",
        ),
    ] {
        let out = cheqlab(dir.path(), &args);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out).trim(), summary);
    }
    let out = cheqlab(dir.path(), &["build", "fork"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("{\"covers\":[[0,1],[0,2]],\"name\":\"fork\""));
}

#[test]
fn build_usage_and_budget_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&cheqlab(dir.path(), &["build", "cheq"])), 2);
    assert_eq!(code(&cheqlab(dir.path(), &["build", "cube", "2"])), 2);
    assert_eq!(code(&cheqlab(dir.path(), &["build", "cheq", "0"])), 2);
    assert_eq!(code(&cheqlab(dir.path(), &["build", "cheq", "10"])), 3);
    assert_eq!(code(&cheqlab(dir.path(), &[])), 2);
}

#[test]
fn saved_documents_are_canonical() {
    let frames = Frames::new();
    let text = std::fs::read_to_string(frames.path("f2.json")).unwrap();
    let again = frames.run(&["build", "cheq", "2"]);
    assert_eq!(stdout(&again), text);
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn check_exit_codes() {
    let frames = Frames::new();
    let out = frames.run(&["check", "f2.json", "kp"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("fails at 00"));
    assert_eq!(code(&frames.run(&["check", "f1.json", "sa"])), 0);
    assert_eq!(code(&frames.run(&["check", "f1.json", "p -> p"])), 0);
    assert_eq!(code(&frames.run(&["check", "fork.json", "wem"])), 1);
    assert_eq!(code(&frames.run(&["check", "f1.json", "p ->"])), 2);
    assert_eq!(code(&frames.run(&["check", "missing.json", "p"])), 2);
    assert_eq!(
        code(&frames.run(&["--budget", "100", "check", "f2.json", "kp"])),
        3
    );
}

#[test]
fn check_json_countermodel() {
    let frames = Frames::new();
    let out = frames.run(&["check", "f2.json", "kp", "--json"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["point"], "00");
    assert!(v["valuation"]["p"].is_array());
}

#[test]
fn budget_from_environment() {
    let frames = Frames::new();
    let out = Command::new(env!("CARGO_BIN_EXE_cheqlab"))
        .args(["check", "f2.json", "kp"])
        .current_dir(frames.dir.path())
        .env("CHEQLAB_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_cheqlab"))
        .args(["check", "f2.json", "kp"])
        .current_dir(frames.dir.path())
        .env("CHEQLAB_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn morphism_exit_codes() {
    let frames = Frames::new();
    let out = frames.run(&[
        "morphism", "f2.json", "h.json", "--onto", "--out", "fh.json",
    ]);
    assert_eq!(code(&out), 0);
    let map: Vec<[usize; 2]> =
        serde_json::from_str(&std::fs::read_to_string(frames.path("fh.json")).unwrap()).unwrap();
    assert_eq!(map.len(), 9);
    let verified = frames.run(&[
        "morphism", "f2.json", "h.json", "--onto", "--map", "fh.json",
    ]);
    assert_eq!(code(&verified), 0);

    assert_eq!(
        code(&frames.run(&["morphism", "m4.json", "h.json", "--onto"])),
        1
    );
    assert_eq!(
        code(&frames.run(&["morphism", "m4.json", "h.json", "--onto", "--deterministic"])),
        1
    );

    let out = frames.run(&[
        "morphism",
        "f1.json",
        "m1.json",
        "--onto",
        "--deterministic",
    ]);
    assert_eq!(code(&out), 0);
    let map: Vec<[usize; 2]> = serde_json::from_str(&stdout(&out)).unwrap();
    let mut images: Vec<usize> = map.iter().map(|p| p[1]).collect();
    images.sort();
    assert_eq!(images, vec![0, 1, 2]);
}

#[test]
fn verifying_a_bad_map_prints_violations() {
    let frames = Frames::new();
    std::fs::write(frames.path("bad.json"), "[[0,0],[1,1],[2,1]]").unwrap();
    let out = frames.run(&[
        "morphism",
        "fork.json",
        "f1.json",
        "--onto",
        "--map",
        "bad.json",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not onto"));
    std::fs::write(frames.path("short.json"), "[[0,0]]").unwrap();
    let out = frames.run(&["morphism", "fork.json", "f1.json", "--map", "short.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn export_dot_counts() {
    let frames = Frames::new();
    std::fs::write(
        frames.path("one.json"),
        r#"{"covers":[],"name":"one","points":[{"id":0,"label":"*"}]}"#,
    )
    .unwrap();
    for (file, nodes, edges) in [("fork.json", 3, 2), ("h.json", 7, 10), ("one.json", 1, 0)] {
        let out = frames.run(&["export-dot", file]);
        assert_eq!(code(&out), 0);
        let text = stdout(&out);
        assert_eq!(
            text.lines().filter(|l| l.contains("[label=")).count(),
            nodes
        );
        assert_eq!(text.lines().filter(|l| l.contains("->")).count(), edges);
    }
    assert_eq!(code(&frames.run(&["export-dot", "nothing.json"])), 2);
}

#[test]
fn malformed_frame_document() {
    let frames = Frames::new();
    std::fs::write(frames.path("cyc.json"), r#"{"covers":[[0,1],[1,0]],"name":"c","points":[{"id":0,"label":"a"},{"id":1,"label":"b"}]}"#).unwrap();
    assert_eq!(code(&frames.run(&["check", "cyc.json", "p"])), 2);
    std::fs::write(frames.path("junk.json"), "not json").unwrap();
    assert_eq!(code(&frames.run(&["export-dot", "junk.json"])), 2);
}

#[test]
fn verify_quick_profile() {
    let frames = Frames::new();
    let out = frames.run(&["verify-paper", "--profile", "quick"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failed"));
    let out = frames.run(&["verify-paper", "--json", "--out", "report.json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(frames.path("report.json")).unwrap())
            .unwrap();
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
}

#[test]
fn tight_budget_skips_without_failing() {
    let frames = Frames::new();
    let out = frames.run(&["--budget", "1", "verify-paper", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let statuses: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap())
        .collect();
    assert!(statuses.contains(&"skipped(budget)"));
    assert!(!statuses.contains(&"fail"));
}
