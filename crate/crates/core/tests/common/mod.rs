#![allow(dead_code)]

pub mod oracles;

use std::sync::Arc;

use scene_copilot::config::AppConfig;
use scene_copilot::llm::{LlmBackend, ReplayBackend, ReplayStore};
use scene_copilot::session::{record_script, LogicalClock, Script, SessionDeps};

pub const DEMO_SCRIPT: &str = include_str!("../../data/scripts/demo_session.json");

pub fn demo_script() -> Script {
    serde_json::from_str(DEMO_SCRIPT).unwrap()
}

pub fn config(seed: u64) -> AppConfig {
    let mut c = AppConfig::default();
    c.generator.seed = seed;
    c
}

/// Deterministic dependencies: simulated generator, logical clock.
pub fn deps_with(config: &AppConfig, backend: Arc<dyn LlmBackend>) -> SessionDeps {
    let res = config.resources().unwrap();
    config.session_deps(&res, backend, Arc::new(LogicalClock::default()))
}

pub fn deps(seed: u64, backend: Arc<dyn LlmBackend>) -> SessionDeps {
    deps_with(&config(seed), backend)
}

pub fn replay(store: ReplayStore) -> Arc<dyn LlmBackend> {
    Arc::new(ReplayBackend::new(store))
}

/// Replay store recorded from the script's own canned replies.
pub fn recorded(script: &Script, seed: u64) -> ReplayStore {
    record_script(script, |b| deps(seed, b))
}

pub fn cot(output: &str) -> String {
    format!("<thinking>\nplan\n<reflection>\ncheck\n</reflection>\nadjust\n</thinking>\n<output>\n{output}\n</output>")
}
