//! First-attempt executable rate of generated commands over a prompt corpus,
//! with retrieval and few-shot examples switched on or off.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grammar::{self, Grammar, ValidationMode, ValidationReport};
use crate::llm::{CompletionRequest, LlmBackend, LlmError, ReplayStore};
use crate::prompt::{self, FewShotPair, PromptBundle, PromptError, Templates};
use crate::retrieval::{merge_ranked, RetrievalIndex};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("prompt corpus is empty")]
    EmptyCorpus,
    #[error("replay store has no response for {} prompt(s): {}", .prompts.len(), .prompts.join(" | "))]
    ReplayMiss { prompts: Vec<String> },
    #[error(transparent)]
    Prompt(#[from] PromptError),
    #[error(transparent)]
    Store(LlmError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AblationConfig {
    pub use_rag: bool,
    pub use_few_shot: bool,
    pub k: usize,
    pub budget: usize,
    #[serde(default)]
    pub mode: ValidationMode,
}

impl Default for AblationConfig {
    fn default() -> Self {
        AblationConfig {
            use_rag: true,
            use_few_shot: true,
            k: 4,
            budget: 8192,
            mode: ValidationMode::Lenient,
        }
    }
}

impl AblationConfig {
    /// The four toggle combinations in table order: neither, few-shot only,
    /// retrieval only, both.
    pub fn ablation_rows(base: AblationConfig) -> [AblationConfig; 4] {
        [(false, false), (false, true), (true, false), (true, true)].map(|(use_rag, use_few_shot)| AblationConfig {
            use_rag,
            use_few_shot,
            ..base
        })
    }
}

/// Published first-attempt executable rates for the four ablation rows,
/// carried as reference metadata only.
pub const REFERENCE_ER_AT_1: [(bool, bool, f64); 4] =
    [(false, false, 0.0), (false, true, 0.020), (true, false, 0.200), (true, true, 0.432)];

pub fn reference_er_at_1(use_rag: bool, use_few_shot: bool) -> f64 {
    REFERENCE_ER_AT_1
        .iter()
        .find(|r| r.0 == use_rag && r.1 == use_few_shot)
        .map(|r| r.2)
        .unwrap()
}

pub struct EvalContext {
    pub grammar: Arc<Grammar>,
    pub templates: Arc<Templates>,
    pub few_shots: Arc<Vec<FewShotPair>>,
    pub docs: Arc<RetrievalIndex>,
    pub backend: Arc<dyn LlmBackend>,
    pub model: String,
}

/// One prompt per non-blank line.
pub fn load_corpus(text: &str) -> Vec<String> {
    text.lines().map(str::trim).filter(|l| !l.is_empty()).map(str::to_string).collect()
}

pub fn build_eval_prompt(ctx: &EvalContext, config: &AblationConfig, text: &str) -> Result<PromptBundle, PromptError> {
    let retrieved = if config.use_rag {
        merge_ranked(&[("codebase", ctx.docs.query(text, config.k))], config.k)
    } else {
        Vec::new()
    };
    let shots: &[FewShotPair] = if config.use_few_shot { &ctx.few_shots } else { &[] };
    prompt::build_codex_prompt(&ctx.templates, text, &retrieved, shots, config.budget)
}

pub fn eval_request(ctx: &EvalContext, config: &AblationConfig, text: &str) -> Result<CompletionRequest, PromptError> {
    let bundle = build_eval_prompt(ctx, config, text)?;
    Ok(CompletionRequest::new(&ctx.model, bundle.messages()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalRow {
    pub prompt: String,
    pub command: Option<String>,
    pub error: Option<String>,
    pub report: Option<ValidationReport>,
    pub executable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub config: AblationConfig,
    pub total: usize,
    pub executable_count: usize,
    pub er_at_1: f64,
    pub rows: Vec<EvalRow>,
    /// Published value for this toggle combination.
    pub reference_er_at_1: f64,
}

enum Outcome {
    Row(EvalRow),
    Miss(String),
}

fn eval_one(ctx: &EvalContext, config: &AblationConfig, text: &str) -> Result<Outcome, PromptError> {
    let req = eval_request(ctx, config, text)?;
    let row = |command: Option<String>, error: Option<String>, report: Option<ValidationReport>| EvalRow {
        prompt: text.to_string(),
        executable: report.as_ref().is_some_and(|r| r.executable),
        command,
        error,
        report,
    };
    let response = match ctx.backend.complete(&req) {
        Ok(r) => r,
        Err(LlmError::ReplayMiss { .. }) => return Ok(Outcome::Miss(text.to_string())),
        Err(e) => return Ok(Outcome::Row(row(None, Some(e.code().to_string()), None))),
    };
    let Ok(command) = prompt::extract_command(&response, &ctx.grammar) else {
        return Ok(Outcome::Row(row(None, Some("NoCommandFound".into()), None)));
    };
    let (_, report) = grammar::check_line(&command, &ctx.grammar, config.mode);
    Ok(Outcome::Row(row(Some(command), None, Some(report))))
}

/// Evaluates every prompt (in parallel) and reports rows in corpus order.
pub fn run_eval(ctx: &EvalContext, config: &AblationConfig, corpus: &[String]) -> Result<EvalReport, EvalError> {
    if corpus.is_empty() {
        return Err(EvalError::EmptyCorpus);
    }
    let outcomes: Vec<Outcome> = corpus
        .par_iter()
        .map(|p| eval_one(ctx, config, p))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::with_capacity(outcomes.len());
    let mut missing = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Row(r) => rows.push(r),
            Outcome::Miss(p) => missing.push(p),
        }
    }
    if !missing.is_empty() {
        return Err(EvalError::ReplayMiss { prompts: missing });
    }
    let executable_count = rows.iter().filter(|r| r.executable).count();
    Ok(EvalReport {
        config: *config,
        total: rows.len(),
        executable_count,
        er_at_1: executable_count as f64 / rows.len() as f64,
        rows,
        reference_er_at_1: reference_er_at_1(config.use_rag, config.use_few_shot),
    })
}

/// A prompt with a canned model reply, for building replay fixtures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CannedResponse {
    pub prompt: String,
    pub response: String,
    /// Hand label: whether the reply should count as executable.
    #[serde(default)]
    pub executable: Option<bool>,
}

/// Replay store answering every `(config, prompt)` request with its canned
/// reply. Builds prompts from `ctx` but never calls its backend.
pub fn record_responses(
    ctx: &EvalContext,
    configs: &[AblationConfig],
    canned: &[CannedResponse],
) -> Result<ReplayStore, EvalError> {
    let mut store = ReplayStore::default();
    for config in configs {
        for c in canned {
            let req = eval_request(ctx, config, &c.prompt)?;
            store.record(&req, &c.response).map_err(EvalError::Store)?;
        }
    }
    Ok(store)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Table,
    Json,
}

fn check(b: bool) -> &'static str {
    if b { "x" } else { "" }
}

fn pct(v: f64) -> String {
    format!("{:.1}%", v * 100.0)
}

/// Reports as a table with one row per configuration, or as a JSON array.
pub fn render_reports(reports: &[EvalReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Table => {
            let mut s = format!(
                "{:>3} | {:^5} | {:^8} | {:>9} | {:>7} | {:>9}\n",
                "#", "RAG", "Few-Shot", "ER@1", "n", "reference"
            );
            s.push_str(&format!("{}\n", "-".repeat(s.trim_end().len())));
            for (i, r) in reports.iter().enumerate() {
                s.push_str(&format!(
                    "{:>3} | {:^5} | {:^8} | {:>9} | {:>7} | {:>9}\n",
                    i + 1,
                    check(r.config.use_rag),
                    check(r.config.use_few_shot),
                    pct(r.er_at_1),
                    format!("{}/{}", r.executable_count, r.total),
                    pct(r.reference_er_at_1)
                ));
            }
            s.push_str("reference: published rates from hosted models and live generation; not reproduced here\n");
            s
        }
    }
}

pub fn render_report(report: &EvalReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Table => render_reports(std::slice::from_ref(report), format),
    }
}
