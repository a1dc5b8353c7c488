mod common;

use std::sync::Arc;

use scene_copilot::grammar::Code;
use scene_copilot::llm::{ReplayStore, ScriptedBackend};
use scene_copilot::session::{
    read_journal, replay_journal, run_script, EventKind, JournalEvent, Phase, Session, SessionError, SessionState,
};
use serde_json::json;

use common::*;

const FEW_SHOT_2: &str = "python -m Infinigen.datagen.manage_jobs --output_folder outputs/stereo_data --num_scenes 10000 --pipeline_configs slurm.gin stereo.gin cuda_terrain.gin --cleanup big_files --warmup_sec 60000 --config high_quality_terrain";

fn scripted(seed: u64, responses: &[&str]) -> Session {
    let backend = Arc::new(ScriptedBackend::new(responses.iter().copied()));
    Session::new("s", Arc::new(deps(seed, backend)))
}

fn to_editing(seed: u64, more: &[&str]) -> Session {
    let mut all = vec![FEW_SHOT_2];
    all.extend_from_slice(more);
    let mut s = scripted(seed, &all);
    s.submit_prompt("stereo scenes").unwrap();
    s.approve_command().unwrap();
    s
}

#[test]
fn few_shot_command_is_proposed_executable() {
    let mut s = scripted(1, &[FEW_SHOT_2]);
    let p = s.submit_prompt("many stereo scenes").unwrap();
    assert!(p.report.executable);
    assert_eq!(s.state().phase, Phase::CommandProposed);
    let kinds: Vec<_> = s.journal().iter().map(|e| e.kind).collect();
    assert_eq!(kinds, [EventKind::UserPrompt, EventKind::CommandProposed]);
}

#[test]
fn dont_know_is_no_command() {
    let mut s = scripted(1, &["I don't know."]);
    assert!(matches!(s.submit_prompt("x"), Err(SessionError::NoCommandFound)));
    assert_eq!(s.state().phase, Phase::AwaitingPrompt);
    let last = s.journal().last().unwrap();
    assert_eq!(last.kind, EventKind::Error);
    assert_eq!(last.payload["code"], "NoCommandFound");
    assert_eq!(last.payload["response"], "I don't know.");
}

#[test]
fn bad_cleanup_value_is_not_executable() {
    let cmd = "python -m Infinigen.datagen.manage_jobs --output_folder out --cleanup sometimes";
    let mut s = scripted(1, &[cmd]);
    let p = s.submit_prompt("x").unwrap();
    assert!(!p.report.executable);
    assert_eq!(p.report.error_codes(), [Code::BadEnumValue]);
    let before = s.state().clone();
    assert!(matches!(s.approve_command(), Err(SessionError::NotExecutable(_))));
    assert_eq!(s.state(), &before);
}

#[test]
fn reprompt_supersedes_proposal() {
    let mut s = scripted(1, &["python -m Infinigen.datagen.manage_jobs --cleanup sometimes", FEW_SHOT_2]);
    s.submit_prompt("a").unwrap();
    s.submit_prompt("b").unwrap();
    let kinds: Vec<_> = s.journal().iter().map(|e| e.kind).collect();
    assert_eq!(
        kinds,
        [
            EventKind::UserPrompt,
            EventKind::CommandProposed,
            EventKind::CommandRejected,
            EventKind::UserPrompt,
            EventKind::CommandProposed
        ]
    );
    assert!(s.state().proposed_command.as_ref().unwrap().report.executable);
}

#[test]
fn coarse_fingerprint_is_seeded() {
    let a = to_editing(7, &[]);
    let b = to_editing(7, &[]);
    let c = to_editing(8, &[]);
    let fa = &a.state().coarse_db.as_ref().unwrap().index_fingerprint;
    assert_eq!(fa, &b.state().coarse_db.as_ref().unwrap().index_fingerprint);
    assert_ne!(fa, &c.state().coarse_db.as_ref().unwrap().index_fingerprint);
    assert_eq!(a.state().phase, Phase::EditingCoarse);
    assert_eq!(a.coarse_scene().unwrap().index.fingerprint(), *fa);
}

#[test]
fn generator_failure_fails_session() {
    let mut c = config(1);
    c.generator.mode = scene_copilot::config::GeneratorMode::Live;
    c.generator.executable_override = Some("false".into());
    let backend = Arc::new(ScriptedBackend::new([FEW_SHOT_2]));
    let mut s = Session::new("s", Arc::new(deps_with(&c, backend)));
    s.submit_prompt("x").unwrap();
    assert!(matches!(s.approve_command(), Err(SessionError::GeneratorFailed(_))));
    assert_eq!(s.state().phase, Phase::Failed);
    assert!(matches!(s.submit_prompt("y"), Err(SessionError::WrongPhase { .. })));
    let replayed = replay_journal("s", s.journal()).unwrap();
    assert_eq!(&replayed, s.state());
}

#[test]
fn unknown_selection_path() {
    let mut s = to_editing(7, &[]);
    let before = s.state().clone();
    let err = s.submit_edit("x", &["/World/Submarine".into()]).unwrap_err();
    assert!(matches!(err, SessionError::UnknownSelectionPath(p) if p == "/World/Submarine"));
    assert_eq!(s.state(), &before);
}

#[test]
fn reject_edit_keeps_phase() {
    let plan = cot("1. do it");
    let mut s = to_editing(7, &[&plan, "x = 1"]);
    assert!(matches!(s.reject_edit(), Err(SessionError::NoPendingEdit)));
    assert!(matches!(s.approve_edit(), Err(SessionError::NoPendingEdit)));
    let edit = s.submit_edit("tilt camera", &["/World/Camera".into()]).unwrap();
    assert_eq!(edit.code, "x = 1");
    assert_eq!(edit.cot.output, "1. do it");
    s.reject_edit().unwrap();
    assert_eq!(s.state().phase, Phase::EditingCoarse);
    assert!(s.state().pending_edit.is_none());
}

#[test]
fn malformed_plan_is_reported() {
    let mut s = to_editing(7, &["<thinking>no output</thinking>"]);
    let err = s.submit_edit("x", &[]).unwrap_err();
    assert_eq!(err.code(), "MissingOutputTag");
    let last = s.journal().last().unwrap();
    assert_eq!(last.kind, EventKind::Error);
    assert_eq!(last.payload["response"], "<thinking>no output</thinking>");
    assert_eq!(s.state().phase, Phase::EditingCoarse);
}

#[test]
fn fine_stage_prompt_uses_both_databases() {
    let (p1, p2) = (cot("1. track"), cot("2. lower"));
    let mut s = to_editing(7, &[&p1, "a = 1", &p2, "b = 2"]);
    s.submit_edit("camera", &[]).unwrap();
    s.approve_edit().unwrap();
    assert_eq!(s.state().phase, Phase::EditingFine);
    assert!(s.state().fine_db.is_some());
    s.submit_edit("Camera focalLength", &[]).unwrap();
    let ev = s.journal().iter().rev().find(|e| e.kind == EventKind::EditProposed).unwrap();
    let user = ev.payload["plan_messages"][1]["content"].as_str().unwrap();
    assert!(user.contains("[coarse #"), "{user}");
    assert!(user.contains("[fine #"), "{user}");
    s.approve_edit().unwrap();
    assert_eq!(s.state().phase, Phase::RenderQueued);
}

#[test]
fn full_script_reaches_done() {
    let script = demo_script();
    let store = recorded(&script, 7);
    let (mut s, outcomes) = run_script(&script, Arc::new(deps(7, replay(store))));
    assert!(outcomes.iter().all(|o| o.as_expected()), "{outcomes:?}");
    assert_eq!(s.state().phase, Phase::Done);
    let kinds: Vec<_> = s.journal().iter().map(|e| e.kind).collect();
    use EventKind::*;
    assert_eq!(
        kinds,
        [
            UserPrompt,
            CommandProposed,
            CommandApproved,
            SceneIngested,
            SelectionChanged,
            SelectionChanged,
            UserPrompt,
            EditProposed,
            EditApproved,
            SceneIngested,
            SelectionChanged,
            SelectionChanged,
            UserPrompt,
            EditProposed,
            EditApproved,
            RenderRequested
        ]
    );
    let approved = s.state().approved_command.clone().unwrap();
    assert_eq!(s.state().render_command.as_deref(), Some(approved.as_str()));
    assert!(approved.contains("--configs high_quality_terrain"));
    assert!(matches!(s.submit_prompt("again"), Err(SessionError::WrongPhase { phase: Phase::Done, .. })));
    assert!(matches!(s.request_render(), Err(SessionError::WrongPhase { .. })));
}

#[test]
fn journal_file_round_trip_and_restore() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sessions/demo.jsonl");
    let script = demo_script();
    let store = recorded(&script, 7);
    let d = Arc::new(deps(7, replay(store)));
    let mut s = Session::new("demo", d.clone());
    s.persist_to(&path).unwrap();
    s.submit_prompt("Create 10000 large-scale high-quality stereo scenes").unwrap();
    s.approve_command().unwrap();
    let events = read_journal(&path).unwrap();
    assert_eq!(events, s.journal());
    let restored = Session::restore("demo", d, events).unwrap();
    assert_eq!(restored.state(), s.state());
    assert_eq!(
        restored.coarse_scene().unwrap().dictionary,
        s.coarse_scene().unwrap().dictionary
    );
}

#[test]
fn corrupt_journals() {
    assert_eq!(replay_journal("x", &[]).unwrap(), SessionState::new("x"));
    let ev = |seq, kind, payload| JournalEvent {
        seq,
        timestamp_ms: 0,
        kind,
        payload,
    };
    let gap = [ev(0, EventKind::UserPrompt, json!({"text": "a"})), ev(2, EventKind::UserPrompt, json!({"text": "b"}))];
    assert!(matches!(replay_journal("x", &gap), Err(SessionError::CorruptJournal { seq: 2, .. })));
    let illegal = [ev(0, EventKind::RenderRequested, json!({"command": "c"}))];
    assert!(matches!(replay_journal("x", &illegal), Err(SessionError::CorruptJournal { seq: 0, .. })));

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("j.jsonl");
    std::fs::write(&p, "{\"seq\":0,\"timestamp_ms\":0,\"kind\":\"UserPrompt\",\"payload\":{\"text\":\"a\"}}\nnot json\n").unwrap();
    assert!(matches!(read_journal(&p), Err(SessionError::CorruptJournal { seq: 1, .. })));
}

#[test]
fn replay_miss_leaves_phase() {
    let mut s = Session::new("s", Arc::new(deps(1, replay(ReplayStore::default()))));
    let err = s.submit_prompt("x").unwrap_err();
    assert_eq!(err.code(), "ReplayMiss");
    assert_eq!(s.state().phase, Phase::AwaitingPrompt);
}

#[test]
fn catalog_decision_is_journaled() {
    let mut c = config(7);
    c.use_catalog = true;
    let plan = cot("1. add a tree");
    let backend = Arc::new(ScriptedBackend::new([FEW_SHOT_2, plan.as_str(), "x = 1"]));
    let mut s = Session::new("s", Arc::new(deps_with(&c, backend)));
    s.submit_prompt("x").unwrap();
    s.approve_command().unwrap();
    s.submit_edit("add a tall oak tree", &[]).unwrap();
    let ev = s.journal().last().unwrap();
    let d = &ev.payload["source_decision"];
    assert!(d["p_dataset"].as_f64().unwrap() > 0.0);
    assert!(d["kind"] == "dataset" || d["kind"] == "external");
}
