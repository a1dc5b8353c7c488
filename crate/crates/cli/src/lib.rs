//! Command-line front end and HTTP server for the scene copilot engine.

pub mod commands;
pub mod server;
