//! Prompt assembly for command synthesis and scene editing, plus parsing of
//! model responses.
//!
//! A rendered prompt is a system message followed by one user message made of
//! labelled sections in a fixed order: retrieved context, examples, selected
//! objects, request. Only the context section is ever truncated to fit the
//! token budget, and it loses its lowest-ranked chunks first.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grammar::{self, Grammar, ValidationMode};
use crate::llm::Message;
use crate::retrieval::TaggedChunk;

pub const CODEX_TEMPLATE: &str = "codex_system.txt";
pub const COT_TEMPLATE: &str = "cot_system.txt";
pub const CODER_TEMPLATE: &str = "coder_system.txt";

const BUNDLED_FEW_SHOTS: &str = include_str!("../data/few_shots.json");

#[derive(Debug, Error)]
pub enum PromptError {
    #[error("budget of {budget} tokens cannot hold the fixed prompt ({required} tokens)")]
    BudgetTooSmall { budget: usize, required: usize },
    #[error("no command found in response")]
    NoCommandFound,
    #[error("plan steps are empty")]
    EmptySteps,
    #[error("template `{name}`: {source}")]
    Template {
        name: String,
        #[source]
        source: std::io::Error,
    },
    #[error("few-shot fixture: {0}")]
    FewShot(String),
}

/// Whitespace token count.
pub fn count_tokens(text: &str) -> usize {
    text.split_whitespace().count()
}

/// System prompts, one per role. Read once and shared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Templates {
    pub codex_system: String,
    pub cot_system: String,
    pub coder_system: String,
}

impl Templates {
    pub fn bundled() -> Self {
        Templates {
            codex_system: include_str!("../templates/codex_system.txt").to_string(),
            cot_system: include_str!("../templates/cot_system.txt").to_string(),
            coder_system: include_str!("../templates/coder_system.txt").to_string(),
        }
    }

    pub fn load_dir(dir: &Path) -> Result<Self, PromptError> {
        let read = |name: &str| {
            std::fs::read_to_string(dir.join(name)).map_err(|source| PromptError::Template {
                name: name.to_string(),
                source,
            })
        };
        Ok(Templates {
            codex_system: read(CODEX_TEMPLATE)?,
            cot_system: read(COT_TEMPLATE)?,
            coder_system: read(CODER_TEMPLATE)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FewShotPair {
    pub description: String,
    pub command: String,
    /// The command exactly as first published, when `command` is a corrected
    /// form of it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verbatim_command: Option<String>,
}

/// Loads few-shot pairs and checks every command parses.
pub fn load_few_shots(json: &str, grammar: &Grammar) -> Result<Vec<FewShotPair>, PromptError> {
    let pairs: Vec<FewShotPair> =
        serde_json::from_str(json).map_err(|e| PromptError::FewShot(e.to_string()))?;
    for (i, p) in pairs.iter().enumerate() {
        let (_, report) = grammar::check_line(&p.command, grammar, ValidationMode::Lenient);
        if !report.executable {
            return Err(PromptError::FewShot(format!(
                "example {} does not validate: {}",
                i + 1,
                report.errors[0]
            )));
        }
    }
    Ok(pairs)
}

pub fn bundled_few_shots(grammar: &Grammar) -> Vec<FewShotPair> {
    load_few_shots(BUNDLED_FEW_SHOTS, grammar).expect("bundled few-shots are valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    Context,
    Examples,
    Selection,
    Request,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PromptBundle {
    pub system: String,
    /// Retrieved chunks in rank order.
    pub context_chunks: Vec<TaggedChunk>,
    pub few_shots: Vec<FewShotPair>,
    pub selected_paths: Vec<String>,
    pub user_input: String,
    /// Heading for the request section.
    pub request_label: String,
}

impl PromptBundle {
    /// Non-empty user-message sections in render order.
    pub fn sections(&self) -> Vec<(Section, String)> {
        let mut out = Vec::new();
        if !self.context_chunks.is_empty() {
            let mut s = String::from("## Retrieved context");
            for c in &self.context_chunks {
                s.push_str(&format!(
                    "\n\n[{} #{} | {}]\n{}",
                    c.tag,
                    c.chunk.id,
                    c.chunk.source_doc,
                    c.chunk.text.trim()
                ));
            }
            out.push((Section::Context, s));
        }
        if !self.few_shots.is_empty() {
            let mut s = String::from("## Examples");
            for p in &self.few_shots {
                s.push_str(&format!(
                    "\n\nDescription: {}\nCommand: {}",
                    p.description, p.command
                ));
            }
            out.push((Section::Examples, s));
        }
        if !self.selected_paths.is_empty() {
            let mut s = String::from("## Selected objects");
            for p in &self.selected_paths {
                s.push('\n');
                s.push_str(p);
            }
            out.push((Section::Selection, s));
        }
        out.push((
            Section::Request,
            format!("## {}\n{}", self.request_label, self.user_input),
        ));
        out
    }

    pub fn user_message(&self) -> String {
        self.sections()
            .into_iter()
            .map(|(_, s)| s)
            .collect::<Vec<_>>()
            .join("\n\n")
    }

    pub fn messages(&self) -> Vec<Message> {
        vec![Message::system(self.system.clone()), Message::user(self.user_message())]
    }

    pub fn token_count(&self) -> usize {
        count_tokens(&self.system) + count_tokens(&self.user_message())
    }
}

/// Adds ranked chunks to `bundle` while the whole prompt stays within
/// `budget`. Stops at the first chunk that does not fit.
fn fill_context(
    mut bundle: PromptBundle,
    ranked: &[TaggedChunk],
    budget: usize,
) -> Result<PromptBundle, PromptError> {
    let system_tokens = count_tokens(&bundle.system);
    if budget <= system_tokens {
        return Err(PromptError::BudgetTooSmall {
            budget,
            required: system_tokens + 1,
        });
    }
    let required = bundle.token_count();
    if required > budget {
        return Err(PromptError::BudgetTooSmall { budget, required });
    }
    for c in ranked {
        bundle.context_chunks.push(c.clone());
        if bundle.token_count() > budget {
            bundle.context_chunks.pop();
            break;
        }
    }
    Ok(bundle)
}

/// Command-synthesis prompt: system text, retrieved context, few-shot pairs
/// and the user's request.
pub fn build_codex_prompt(
    templates: &Templates,
    user_input: &str,
    retrieved: &[TaggedChunk],
    few_shots: &[FewShotPair],
    budget: usize,
) -> Result<PromptBundle, PromptError> {
    let bundle = PromptBundle {
        system: templates.codex_system.clone(),
        context_chunks: Vec::new(),
        few_shots: few_shots.to_vec(),
        selected_paths: Vec::new(),
        user_input: user_input.to_string(),
        request_label: "Request".into(),
    };
    fill_context(bundle, retrieved, budget)
}

/// Planning prompt for a scene edit, asking for a tagged chain of thought.
pub fn build_cot_prompt(
    templates: &Templates,
    user_input: &str,
    scene_context: &[TaggedChunk],
    selected_paths: &[String],
    budget: usize,
) -> Result<PromptBundle, PromptError> {
    let bundle = PromptBundle {
        system: templates.cot_system.clone(),
        context_chunks: Vec::new(),
        few_shots: Vec::new(),
        selected_paths: selected_paths.to_vec(),
        user_input: user_input.to_string(),
        request_label: "Request".into(),
    };
    fill_context(bundle, scene_context, budget)
}

/// Code-generation prompt that turns planned steps into a script.
pub fn build_code_prompt(
    templates: &Templates,
    steps: &str,
    scene_context: &[TaggedChunk],
    selected_paths: &[String],
    budget: usize,
) -> Result<PromptBundle, PromptError> {
    if steps.trim().is_empty() {
        return Err(PromptError::EmptySteps);
    }
    let bundle = PromptBundle {
        system: templates.coder_system.clone(),
        context_chunks: Vec::new(),
        few_shots: Vec::new(),
        selected_paths: selected_paths.to_vec(),
        user_input: steps.to_string(),
        request_label: "Steps".into(),
    };
    fill_context(bundle, scene_context, budget)
}

fn is_fence(line: &str) -> bool {
    line.trim_start().starts_with("```")
}

/// First line of `response` that starts with the grammar's invocation head.
/// Code fences and inline backticks are ignored.
pub fn extract_command(response: &str, grammar: &Grammar) -> Result<String, PromptError> {
    response
        .lines()
        .filter(|l| !is_fence(l))
        .map(|l| l.trim().trim_matches('`').trim())
        .find(|l| grammar.has_head(l))
        .map(str::to_string)
        .ok_or(PromptError::NoCommandFound)
}

/// Body of the first fenced code block, or the whole trimmed response when
/// there is no fence.
pub fn extract_code_block(response: &str) -> String {
    let mut lines = response.lines();
    if lines.by_ref().any(is_fence) {
        let body: Vec<&str> = lines.take_while(|l| !is_fence(l)).collect();
        return body.join("\n");
    }
    response.trim().to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum CotError {
    #[error("response has no complete <output> region")]
    MissingOutputTag,
    #[error("tags are unbalanced: {0}")]
    UnbalancedTags(String),
    #[error("<output> region is empty")]
    EmptyOutput,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CotResponse {
    pub thinking: String,
    pub reflection: String,
    pub adjustments: String,
    pub output: String,
}

const TAGS: [&str; 6] = [
    "<thinking>",
    "</thinking>",
    "<reflection>",
    "</reflection>",
    "<output>",
    "</output>",
];

impl CotResponse {
    /// The documented response skeleton.
    pub fn render(&self) -> String {
        format!(
            "<thinking>\n{}\n<reflection>\n{}\n</reflection>\n{}\n</thinking>\n<output>\n{}\n</output>\n",
            self.thinking, self.reflection, self.adjustments, self.output
        )
    }
}

/// Splits a tagged response into its regions. Reflection must sit inside
/// thinking; output must follow the end of thinking. Regions are trimmed.
pub fn parse_cot(response: &str) -> Result<CotResponse, CotError> {
    let mut pos = [None; 6];
    for (i, tag) in TAGS.iter().enumerate() {
        let mut found = response.match_indices(tag).map(|(p, _)| p);
        pos[i] = found.next();
        if found.next().is_some() {
            return Err(CotError::UnbalancedTags(format!("{tag} appears more than once")));
        }
    }
    let [t_open, t_close, r_open, r_close, o_open, o_close] = pos;
    let (Some(o_open), Some(o_close)) = (o_open, o_close) else {
        return Err(CotError::MissingOutputTag);
    };
    if o_close < o_open {
        return Err(CotError::UnbalancedTags("</output> before <output>".into()));
    }
    let region = |from: usize, tag: &str, to: usize| response[from + tag.len()..to].trim().to_string();

    let mut out = CotResponse::default();
    match (t_open, t_close) {
        (None, None) => {
            if r_open.is_some() || r_close.is_some() {
                return Err(CotError::UnbalancedTags("<reflection> outside <thinking>".into()));
            }
        }
        (Some(to), Some(tc)) => {
            if tc < to {
                return Err(CotError::UnbalancedTags("</thinking> before <thinking>".into()));
            }
            if tc > o_open {
                return Err(CotError::UnbalancedTags("<output> inside <thinking>".into()));
            }
            match (r_open, r_close) {
                (None, None) => out.thinking = region(to, TAGS[0], tc),
                (Some(ro), Some(rc)) => {
                    if !(to < ro && ro < rc && rc < tc) {
                        return Err(CotError::UnbalancedTags(
                            "<reflection> must be closed inside <thinking>".into(),
                        ));
                    }
                    out.thinking = region(to, TAGS[0], ro);
                    out.reflection = region(ro, TAGS[2], rc);
                    out.adjustments = region(rc, TAGS[3], tc);
                }
                _ => return Err(CotError::UnbalancedTags("unclosed <reflection>".into())),
            }
        }
        _ => return Err(CotError::UnbalancedTags("unclosed <thinking>".into())),
    }
    if o_open < t_open.unwrap_or(0) {
        return Err(CotError::UnbalancedTags("<output> before <thinking>".into()));
    }
    out.output = region(o_open, TAGS[4], o_close);
    if out.output.is_empty() {
        return Err(CotError::EmptyOutput);
    }
    Ok(out)
}
