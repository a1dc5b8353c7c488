use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_scene-copilot"))
}

const SCRIPT: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/scripts/demo_session.json");

fn validate(line: &str) -> (i32, serde_json::Value) {
    let mut child = bin().args(["validate", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(line.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

#[test]
fn validate_reports_per_line() {
    let (code, v) = validate("python -m Infinigen.datagen.manage_jobs -o out --num_scenes 2 --configs desert.gin\n");
    assert_eq!(code, 0);
    assert_eq!(v[0]["report"]["executable"], true);
    let (code, v) = validate("python -m Infinigen.datagen.manage_jobs --cleanup sometimes\n");
    assert_eq!(code, 1);
    assert_eq!(v[0]["report"]["errors"][0]["code"], "BadEnumValue");
}

#[test]
fn scripted_session_then_replay() {
    let dir = tempfile::tempdir().unwrap();
    let journal = dir.path().join("demo.jsonl");
    let out = bin()
        .args(["session", "run", "--script", SCRIPT, "--journal"])
        .arg(&journal)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = bin().args(["session", "replay"]).arg(&journal).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let state: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(state["phase"], "Done");
}

#[test]
fn eval_table_from_replay() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/eval");
    let out = bin()
        .args(["eval", "--all-rows", "--format", "json"])
        .args(["--corpus", &format!("{data}/prompts.txt"), "--store", &format!("{data}/replay_store.json")])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["executable_count"] == 4 && r["total"] == 10));
}
