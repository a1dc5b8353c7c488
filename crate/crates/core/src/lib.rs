//! Scene authoring copilot: scene condensation, retrieval, command grammar,
//! prompt assembly, model clients and session orchestration.

pub mod catalog;
pub mod config;
pub mod eval;
pub mod grammar;
pub mod llm;
pub mod nodegraph;
pub mod prompt;
pub mod retrieval;
pub mod session;
pub mod usda;
