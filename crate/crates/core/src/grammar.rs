//! Grammar and static validation for scene generator job commands.
//!
//! The option table and gin whitelists come from a versioned TOML data file
//! (`data/grammar.toml` is bundled). Parsing follows the usual argument-parser
//! conventions: long options may be abbreviated to any unambiguous prefix,
//! `--name=value` is accepted, and multi-value options consume tokens up to the
//! next option.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const BUNDLED_GRAMMAR: &str = include_str!("../data/grammar.toml");

#[derive(Debug, Error)]
pub enum GrammarError {
    #[error("grammar file: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("grammar file: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arity {
    Flag,
    One,
    OneOrMore,
    ZeroOrMore,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueKind {
    Path,
    Integer,
    Enum,
    TokenList,
    KeyValueList,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptionSpec {
    pub long: String,
    #[serde(default)]
    pub short: Option<String>,
    pub arity: Arity,
    #[serde(default)]
    pub kind: Option<ValueKind>,
    #[serde(default)]
    pub enum_values: Option<Vec<String>>,
    /// Name of a list in the grammar's `whitelists` table.
    #[serde(default)]
    pub whitelist: Option<String>,
    #[serde(default)]
    pub help: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grammar {
    pub version: u32,
    pub invocation: Vec<String>,
    pub options: Vec<OptionSpec>,
    #[serde(default)]
    pub whitelists: BTreeMap<String, Vec<String>>,
}

impl Grammar {
    pub fn bundled() -> Self {
        Self::from_toml_str(BUNDLED_GRAMMAR).expect("bundled grammar is valid")
    }

    pub fn load(path: &Path) -> Result<Self, GrammarError> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn from_toml_str(text: &str) -> Result<Self, GrammarError> {
        let g: Grammar = toml::from_str(text)?;
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<(), GrammarError> {
        let bad = |m: String| Err(GrammarError::Invalid(m));
        if self.invocation.is_empty() {
            return bad("invocation head is empty".into());
        }
        let mut names = std::collections::HashSet::new();
        for o in &self.options {
            if !o.long.starts_with("--") || o.long.len() < 3 {
                return bad(format!("option `{}` must start with `--`", o.long));
            }
            for n in std::iter::once(&o.long).chain(o.short.as_ref()) {
                if !names.insert(n.clone()) {
                    return bad(format!("option name `{n}` defined twice"));
                }
            }
            match (o.arity, o.kind) {
                (Arity::Flag, Some(_)) => return bad(format!("flag `{}` has a value kind", o.long)),
                (Arity::Flag, None) => {}
                (_, None) => return bad(format!("option `{}` needs a value kind", o.long)),
                _ => {}
            }
            if (o.kind == Some(ValueKind::Enum)) != o.enum_values.is_some() {
                return bad(format!("`{}`: enum_values must be given exactly for enum options", o.long));
            }
            if let Some(w) = &o.whitelist {
                if o.kind != Some(ValueKind::TokenList) {
                    return bad(format!("`{}`: whitelists apply to config-file lists only", o.long));
                }
                if !self.whitelists.contains_key(w) {
                    return bad(format!("`{}`: unknown whitelist `{w}`", o.long));
                }
            }
        }
        Ok(())
    }

    pub fn option(&self, long: &str) -> Option<&OptionSpec> {
        self.options.iter().find(|o| o.long == long)
    }

    pub fn whitelist(&self, name: &str) -> Option<&[String]> {
        self.whitelists.get(name).map(Vec::as_slice)
    }

    pub fn head(&self) -> String {
        self.invocation.join(" ")
    }

    /// One reference document per option and per whitelist, usable as a
    /// retrieval corpus when no documentation directory is configured.
    pub fn reference_docs(&self) -> Vec<(String, String)> {
        let mut docs = Vec::new();
        for o in &self.options {
            let mut text = format!("{} {}", self.head(), o.long);
            if let Some(s) = &o.short {
                text.push_str(&format!(" (short form {s})"));
            }
            text.push_str(&format!(": {}.", o.help));
            if let Some(v) = &o.enum_values {
                text.push_str(&format!(" Allowed values: {}.", v.join(", ")));
            }
            if let Some(w) = &o.whitelist {
                text.push_str(&format!(" Accepts config files from the `{w}` list."));
            }
            docs.push((format!("options/{}", o.long.trim_start_matches('-')), text));
        }
        for (name, files) in &self.whitelists {
            docs.push((format!("configs/{name}"), format!("Available {name} config files: {}", files.join(" "))));
        }
        docs
    }

    /// True when `line` starts with the invocation head tokens.
    pub fn has_head(&self, line: &str) -> bool {
        let toks: Vec<&str> = line.split_whitespace().take(self.invocation.len()).collect();
        toks.len() == self.invocation.len() && toks.iter().zip(&self.invocation).all(|(a, b)| a == b)
    }

    fn resolve(&self, written: &str, span: Span) -> Result<(&OptionSpec, bool), Diagnostic> {
        if let Some(o) = self.options.iter().find(|o| o.long == written) {
            return Ok((o, false));
        }
        if let Some(o) = self.options.iter().find(|o| o.short.as_deref() == Some(written)) {
            return Ok((o, false));
        }
        if written.starts_with("--") && written.len() > 2 {
            let matches: Vec<&OptionSpec> =
                self.options.iter().filter(|o| o.long.starts_with(written)).collect();
            match matches.as_slice() {
                [one] => return Ok((one, true)),
                [] => {}
                many => {
                    let names: Vec<&str> = many.iter().map(|o| o.long.as_str()).collect();
                    return Err(Diagnostic::new(
                        Code::AmbiguousPrefix,
                        format!("ambiguous option `{written}` could match {}", names.join(", ")),
                        Some(span),
                    ));
                }
            }
        }
        Err(Diagnostic::new(
            Code::UnknownOption,
            format!("unrecognized option `{written}`"),
            Some(span),
        ))
    }
}

/// Byte range in the command line.
pub type Span = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Code {
    BadPrefix,
    NotSingleLine,
    UnknownOption,
    AmbiguousPrefix,
    MissingValue,
    UnexpectedValue,
    BadEnumValue,
    NotAnInteger,
    UnknownGinFile,
    MalformedOverride,
    AbbreviatedOption,
    RepeatedOption,
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{code}: {message}")]
pub struct Diagnostic {
    pub code: Code,
    pub message: String,
    pub span: Option<Span>,
}

impl Diagnostic {
    fn new(code: Code, message: String, span: Option<Span>) -> Self {
        Diagnostic { code, message, span }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundOption {
    /// Canonical long name.
    pub name: String,
    /// The option as it appeared in the input.
    pub written: String,
    pub values: Vec<String>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandAst {
    pub prefix: Vec<String>,
    pub options: Vec<BoundOption>,
    /// Warnings raised while parsing.
    pub diagnostics: Vec<Diagnostic>,
}

impl CommandAst {
    /// Same head, options and values, ignoring spelling and diagnostics.
    pub fn same_invocation(&self, other: &CommandAst) -> bool {
        self.prefix == other.prefix
            && self.options.len() == other.options.len()
            && self
                .options
                .iter()
                .zip(&other.options)
                .all(|(a, b)| a.name == b.name && a.values == b.values)
    }

    pub fn values_of(&self, long: &str) -> Option<&[String]> {
        self.options
            .iter()
            .rev()
            .find(|o| o.name == long)
            .map(|o| o.values.as_slice())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValidationMode {
    /// Unknown gin files are warnings.
    #[default]
    Lenient,
    /// Unknown gin files are errors.
    Strict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub executable: bool,
    pub errors: Vec<Diagnostic>,
    pub warnings: Vec<Diagnostic>,
}

impl ValidationReport {
    fn from_parts(errors: Vec<Diagnostic>, warnings: Vec<Diagnostic>) -> Self {
        ValidationReport {
            executable: errors.is_empty(),
            errors,
            warnings,
        }
    }

    pub fn error_codes(&self) -> Vec<Code> {
        self.errors.iter().map(|d| d.code).collect()
    }
}

struct Token<'a> {
    text: &'a str,
    start: usize,
}

impl Token<'_> {
    fn end(&self) -> usize {
        self.start + self.text.len()
    }
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], start: s });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], start: s });
    }
    out
}

/// Option-looking tokens start with `-` but are not negative numbers.
fn is_option_like(tok: &str) -> bool {
    let mut chars = tok.chars();
    chars.next() == Some('-')
        && chars
            .next()
            .is_some_and(|c| !c.is_ascii_digit() && c != '.')
}

/// Parses one command line against `grammar`.
pub fn parse_command(line: &str, grammar: &Grammar) -> Result<CommandAst, Diagnostic> {
    let line = line.trim_end_matches(['\n', '\r']);
    if line.contains(['\n', '\r']) {
        return Err(Diagnostic::new(
            Code::NotSingleLine,
            "command must be a single line".into(),
            None,
        ));
    }
    let toks = tokens(line);
    let head = &grammar.invocation;
    if toks.len() < head.len() || toks.iter().zip(head).any(|(t, h)| t.text != h) {
        return Err(Diagnostic::new(
            Code::BadPrefix,
            format!("command must start with `{}`", grammar.head()),
            Some((0, line.len())),
        ));
    }

    let mut options = Vec::new();
    let mut diagnostics = Vec::new();
    let mut i = head.len();
    while i < toks.len() {
        let tok = &toks[i];
        if !is_option_like(tok.text) {
            return Err(Diagnostic::new(
                Code::UnknownOption,
                format!("unrecognized argument `{}`", tok.text),
                Some((tok.start, tok.end())),
            ));
        }
        let (written, inline) = match tok.text.split_once('=') {
            Some((n, v)) if tok.text.starts_with("--") => (n, Some(v)),
            _ => (tok.text, None),
        };
        let (spec, abbreviated) = grammar.resolve(written, (tok.start, tok.start + written.len()))?;
        if abbreviated {
            diagnostics.push(Diagnostic::new(
                Code::AbbreviatedOption,
                format!("`{written}` expanded to `{}`", spec.long),
                Some((tok.start, tok.start + written.len())),
            ));
        }
        let mut end = tok.end();
        i += 1;
        let mut values: Vec<String> = Vec::new();
        if let Some(v) = inline {
            if spec.arity == Arity::Flag {
                return Err(Diagnostic::new(
                    Code::UnexpectedValue,
                    format!("flag `{}` takes no value", spec.long),
                    Some((tok.start, tok.end())),
                ));
            }
            values.push(v.to_string());
        }
        let greedy = matches!(spec.arity, Arity::OneOrMore | Arity::ZeroOrMore);
        let want_one = spec.arity == Arity::One && inline.is_none();
        if greedy || want_one {
            while i < toks.len() && !is_option_like(toks[i].text) {
                values.push(toks[i].text.to_string());
                end = toks[i].end();
                i += 1;
                if want_one {
                    break;
                }
            }
        }
        let needs_value = matches!(spec.arity, Arity::One | Arity::OneOrMore);
        if needs_value && values.is_empty() {
            return Err(Diagnostic::new(
                Code::MissingValue,
                format!("option `{}` expects a value", spec.long),
                Some((tok.start, tok.end())),
            ));
        }
        options.push(BoundOption {
            name: spec.long.clone(),
            written: written.to_string(),
            values,
            span: (tok.start, end),
        });
    }

    Ok(CommandAst {
        prefix: head.clone(),
        options,
        diagnostics,
    })
}

static OVERRIDE_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^[A-Za-z_][A-Za-z0-9_]*(?:\.[A-Za-z_][A-Za-z0-9_]*)*=\S+$").unwrap()
});

fn gin_stem(name: &str) -> &str {
    name.strip_suffix(".gin").unwrap_or(name)
}

/// Checks option values against the grammar's constraints.
pub fn validate(ast: &CommandAst, grammar: &Grammar, mode: ValidationMode) -> ValidationReport {
    let mut errors = Vec::new();
    let mut warnings = ast.diagnostics.clone();
    let mut seen = std::collections::HashSet::new();

    for opt in &ast.options {
        let Some(spec) = grammar.option(&opt.name) else {
            errors.push(Diagnostic::new(
                Code::UnknownOption,
                format!("unrecognized option `{}`", opt.name),
                Some(opt.span),
            ));
            continue;
        };
        if !seen.insert(opt.name.as_str()) {
            warnings.push(Diagnostic::new(
                Code::RepeatedOption,
                format!("`{}` given more than once; the last occurrence wins", opt.name),
                Some(opt.span),
            ));
        }
        let span = Some(opt.span);
        for v in &opt.values {
            match spec.kind {
                Some(ValueKind::Integer) if v.parse::<i64>().is_err() => {
                    errors.push(Diagnostic::new(
                        Code::NotAnInteger,
                        format!("`{}` expects an integer, got `{v}`", spec.long),
                        span,
                    ));
                }
                Some(ValueKind::Enum) => {
                    let allowed = spec.enum_values.as_deref().unwrap_or_default();
                    if !allowed.iter().any(|a| a == v) {
                        errors.push(Diagnostic::new(
                            Code::BadEnumValue,
                            format!(
                                "invalid choice `{v}` for `{}` (choose from {})",
                                spec.long,
                                allowed.join(", ")
                            ),
                            span,
                        ));
                    }
                }
                Some(ValueKind::TokenList) => {
                    let Some(list) = spec.whitelist.as_deref().and_then(|w| grammar.whitelist(w)) else {
                        continue;
                    };
                    if !list.iter().any(|g| gin_stem(g) == gin_stem(v)) {
                        let d = Diagnostic::new(
                            Code::UnknownGinFile,
                            format!("`{v}` is not a known gin file for `{}`", spec.long),
                            span,
                        );
                        match mode {
                            ValidationMode::Lenient => warnings.push(d),
                            ValidationMode::Strict => errors.push(d),
                        }
                    }
                }
                Some(ValueKind::KeyValueList) if !OVERRIDE_RE.is_match(v) => {
                    errors.push(Diagnostic::new(
                        Code::MalformedOverride,
                        format!("`{v}` is not of the form `name.attr=value`"),
                        span,
                    ));
                }
                _ => {}
            }
        }
    }
    ValidationReport::from_parts(errors, warnings)
}

/// Parses and validates in one step. Parse failures become the report's
/// only error.
pub fn check_line(
    line: &str,
    grammar: &Grammar,
    mode: ValidationMode,
) -> (Option<CommandAst>, ValidationReport) {
    match parse_command(line, grammar) {
        Ok(ast) => {
            let report = validate(&ast, grammar, mode);
            (Some(ast), report)
        }
        Err(d) => (None, ValidationReport::from_parts(vec![d], Vec::new())),
    }
}

#[derive(Debug, Clone, Error)]
#[error("command is not executable: {}", .0.errors.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
pub struct NotExecutable(pub ValidationReport);

/// Renders an executable command with canonical option names, in the
/// original option order.
pub fn canonicalize(ast: &CommandAst, grammar: &Grammar) -> Result<String, NotExecutable> {
    let report = validate(ast, grammar, ValidationMode::Lenient);
    if !report.executable {
        return Err(NotExecutable(report));
    }
    let mut out = ast.prefix.join(" ");
    for o in &ast.options {
        out.push(' ');
        out.push_str(&o.name);
        for v in &o.values {
            out.push(' ');
            out.push_str(v);
        }
    }
    Ok(out)
}
