//! Parsing and condensation of textual USD (`.usda`) scene descriptions.
//!
//! Only a pragmatic subset is understood: `def`/`over`/`class` prim blocks,
//! typed attribute lines (including values that span several lines), and
//! parenthesised metadata blocks. Anything else inside a metadata block is
//! carried through as opaque text.
//!
//! [`condense`] rewrites every numeric attribute payload to the `NUM`
//! placeholder and keeps the original text in a [`Sidecar`], so the rewrite can
//! always be undone with [`CondensedScene::rehydrate`].

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Token written in place of numeric payloads.
pub const PLACEHOLDER: &str = "NUM";

const INDENT: &str = "    ";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UsdaError {
    #[error("line {line}: unbalanced block delimiters: {detail}")]
    UnbalancedBraces { line: usize, detail: String },
    #[error("line {line}: malformed attribute `{text}`")]
    MalformedAttribute { line: usize, text: String },
    #[error("line {line}: duplicate prim path `{path}`")]
    DuplicatePath { line: usize, path: String },
    #[error("line {line}: duplicate attribute `{name}` on `{path}`")]
    DuplicateAttribute {
        line: usize,
        path: String,
        name: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Specifier {
    Def,
    Over,
    Class,
}

impl Specifier {
    fn as_str(self) -> &'static str {
        match self {
            Specifier::Def => "def",
            Specifier::Over => "over",
            Specifier::Class => "class",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AttrValue {
    Numeric(String),
    Text(String),
}

impl AttrValue {
    pub fn as_str(&self) -> &str {
        match self {
            AttrValue::Numeric(s) | AttrValue::Text(s) => s,
        }
    }

    /// Classifies raw value text.
    pub fn classify(raw: &str) -> Self {
        if is_numeric_payload(raw) {
            AttrValue::Numeric(raw.to_string())
        } else {
            AttrValue::Text(raw.to_string())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeEntry {
    pub name: String,
    /// Type token(s) as written, qualifiers included (`uniform token[]`).
    pub declared_type: String,
    pub value: AttrValue,
}

/// A metadata line. `key` is `None` for lines kept as opaque text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaEntry {
    pub key: Option<String>,
    pub value: String,
}

impl MetaEntry {
    fn parse(line: &str) -> Self {
        match META_RE.captures(line) {
            Some(c) => MetaEntry {
                key: Some(c[1].to_string()),
                value: c[2].trim().to_string(),
            },
            None => MetaEntry {
                key: None,
                value: line.to_string(),
            },
        }
    }

    fn render(&self) -> String {
        match &self.key {
            Some(k) => format!("{k} = {}", self.value),
            None => self.value.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenePrim {
    pub path: String,
    pub specifier: Specifier,
    /// Empty for typeless prims (`def "Group"`).
    pub prim_type: String,
    pub metadata: Vec<MetaEntry>,
    pub attributes: Vec<AttributeEntry>,
    pub children: Vec<ScenePrim>,
}

impl ScenePrim {
    pub fn name(&self) -> &str {
        self.path.rsplit('/').next().unwrap_or_default()
    }

    pub fn attribute(&self, name: &str) -> Option<&AttributeEntry> {
        self.attributes.iter().find(|a| a.name == name)
    }

    fn walk<'a>(&'a self, out: &mut Vec<&'a ScenePrim>) {
        out.push(self);
        for c in &self.children {
            c.walk(out);
        }
    }

    fn walk_mut(&mut self, f: &mut impl FnMut(&mut ScenePrim)) {
        f(self);
        for c in &mut self.children {
            c.walk_mut(f);
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SceneTree {
    /// The `#usda 1.0` line, if present.
    pub header: Option<String>,
    pub metadata: Vec<MetaEntry>,
    pub prims: Vec<ScenePrim>,
}

impl SceneTree {
    /// Prims in depth-first pre-order.
    pub fn flatten(&self) -> Vec<&ScenePrim> {
        let mut out = Vec::new();
        for p in &self.prims {
            p.walk(&mut out);
        }
        out
    }

    pub fn paths(&self) -> Vec<String> {
        self.flatten().into_iter().map(|p| p.path.clone()).collect()
    }

    pub fn find(&self, path: &str) -> Option<&ScenePrim> {
        self.flatten().into_iter().find(|p| p.path == path)
    }

    pub fn is_empty(&self) -> bool {
        self.header.is_none() && self.metadata.is_empty() && self.prims.is_empty()
    }

    fn for_each_prim_mut(&mut self, mut f: impl FnMut(&mut ScenePrim)) {
        for p in &mut self.prims {
            p.walk_mut(&mut f);
        }
    }

    /// Renders the tree back to `.usda` text. `parse_usda(&t.to_usda())`
    /// yields `t` again.
    pub fn to_usda(&self) -> String {
        let mut out = String::new();
        if let Some(h) = &self.header {
            out.push_str(h);
            out.push('\n');
        }
        if !self.metadata.is_empty() {
            write_meta_block(&mut out, &self.metadata, 0);
            out.push('\n');
        }
        if !out.is_empty() && !self.prims.is_empty() {
            out.push('\n');
        }
        for (i, p) in self.prims.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            write_prim(&mut out, p, 0);
        }
        out
    }
}

fn write_meta_block(out: &mut String, meta: &[MetaEntry], depth: usize) {
    let pad = INDENT.repeat(depth);
    out.push_str("(\n");
    for m in meta {
        let _ = writeln!(out, "{pad}{INDENT}{}", m.render());
    }
    out.push_str(&pad);
    out.push(')');
}

fn write_prim(out: &mut String, prim: &ScenePrim, depth: usize) {
    let pad = INDENT.repeat(depth);
    out.push_str(&pad);
    out.push_str(prim.specifier.as_str());
    if !prim.prim_type.is_empty() {
        out.push(' ');
        out.push_str(&prim.prim_type);
    }
    let _ = write!(out, " \"{}\"", prim.name());
    if !prim.metadata.is_empty() {
        out.push(' ');
        write_meta_block(out, &prim.metadata, depth);
    }
    out.push('\n');
    let _ = writeln!(out, "{pad}{{");
    for a in &prim.attributes {
        let _ = write!(out, "{pad}{INDENT}{} {}", a.declared_type, a.name);
        let v = a.value.as_str();
        if !v.is_empty() {
            let _ = write!(out, " = {v}");
        }
        out.push('\n');
    }
    for (i, c) in prim.children.iter().enumerate() {
        if i > 0 || !prim.attributes.is_empty() {
            out.push('\n');
        }
        write_prim(out, c, depth + 1);
    }
    let _ = writeln!(out, "{pad}}}");
}

static PRIM_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r#"^(def|over|class)\s+(?:([A-Za-z_][A-Za-z0-9_]*)\s+)?"([A-Za-z_][A-Za-z0-9_]*)"\s*(.*)$"#)
        .unwrap()
});

static ATTR_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(
        r"^((?:(?:uniform|custom|varying|prepend|append|delete|add|config)\s+)*[A-Za-z_][A-Za-z0-9_]*(?:\[\])?)\s+([A-Za-z_][A-Za-z0-9_:.]*)\s*(?:=\s*(.*))?$",
    )
    .unwrap()
});

static META_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^([A-Za-z_][A-Za-z0-9_:.]*)\s*=\s*(.*)$").unwrap());

static NUMBER_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"[-+]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?").unwrap());

/// True when `raw` is a number, tuple, matrix, array or time-sample map made
/// only of numeric literals.
pub fn is_numeric_payload(raw: &str) -> bool {
    let raw = raw.trim();
    if raw.is_empty() || !NUMBER_RE.is_match(raw) {
        return false;
    }
    NUMBER_RE
        .replace_all(raw, "")
        .chars()
        .all(|c| c.is_whitespace() || "()[]{},:".contains(c))
}

/// Net bracket depth change of `text`, ignoring anything inside double quotes.
fn bracket_delta(text: &str) -> i64 {
    let mut depth = 0i64;
    let mut in_str = false;
    let mut escaped = false;
    for c in text.chars() {
        if in_str {
            match c {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => in_str = false,
                _ => {}
            }
            continue;
        }
        match c {
            '"' => in_str = true,
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ => {}
        }
    }
    depth
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    /// Next line that is neither blank nor a comment, with its 1-based number.
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        while self.pos < self.lines.len() {
            let line = self.lines[self.pos].trim();
            self.pos += 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Some((self.pos, line));
        }
        None
    }

    fn peek_content(&self) -> Option<&'a str> {
        self.lines[self.pos..]
            .iter()
            .map(|l| l.trim())
            .find(|l| !l.is_empty() && !l.starts_with('#'))
    }

    /// Keeps appending lines to `first` until brackets balance.
    fn continue_balanced(&mut self, first: &str, start_line: usize) -> Result<String, UsdaError> {
        let mut text = first.to_string();
        let mut depth = bracket_delta(first);
        while depth > 0 {
            if self.pos >= self.lines.len() {
                return Err(UsdaError::UnbalancedBraces {
                    line: start_line,
                    detail: "value is never closed".into(),
                });
            }
            let line = self.lines[self.pos].trim();
            self.pos += 1;
            text.push('\n');
            text.push_str(line);
            depth += bracket_delta(line);
        }
        Ok(text)
    }

    /// Reads a `( ... )` metadata block whose opening text is `first`
    /// (starting with `(`). Returns the entries and any text after `)`.
    fn meta_block(
        &mut self,
        first: &str,
        line_no: usize,
    ) -> Result<(Vec<MetaEntry>, String), UsdaError> {
        let text = self.continue_balanced(first, line_no)?;
        let close = find_matching_close(&text).ok_or_else(|| UsdaError::UnbalancedBraces {
            line: line_no,
            detail: "metadata block is never closed".into(),
        })?;
        let inner = &text[1..close];
        let rest = text[close + 1..].trim().to_string();
        let meta = inner
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(MetaEntry::parse)
            .collect();
        Ok((meta, rest))
    }
}

fn find_matching_close(text: &str) -> Option<usize> {
    let mut depth = 0i64;
    let mut in_str = false;
    let mut escaped = false;
    for (i, c) in text.char_indices() {
        if in_str {
            match c {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => in_str = false,
                _ => {}
            }
            continue;
        }
        match c {
            '"' => in_str = true,
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

struct Open {
    prim: ScenePrim,
    line: usize,
}

/// Parses `.usda` text into a [`SceneTree`].
pub fn parse_usda(source: &str) -> Result<SceneTree, UsdaError> {
    let mut tree = SceneTree::default();
    let mut lines = Lines {
        lines: source.lines().collect(),
        pos: 0,
    };

    // `#usda` header and layer metadata.
    if let Some(first) = lines.lines.iter().map(|l| l.trim()).find(|l| !l.is_empty()) {
        if first.starts_with("#usda") {
            tree.header = Some(first.to_string());
            while lines.pos < lines.lines.len() {
                let l = lines.lines[lines.pos].trim();
                lines.pos += 1;
                if l == first {
                    break;
                }
            }
            if lines.peek_content().is_some_and(|l| l.starts_with('(')) {
                let (no, l) = lines.next_content().unwrap();
                let (meta, rest) = lines.meta_block(l, no)?;
                if !rest.is_empty() {
                    return Err(UsdaError::MalformedAttribute { line: no, text: rest });
                }
                tree.metadata = meta;
            }
        }
    }

    let mut stack: Vec<Open> = Vec::new();
    let mut seen_paths: HashSet<String> = HashSet::new();

    while let Some((no, line)) = lines.next_content() {
        if line == "}" {
            let Some(done) = stack.pop() else {
                return Err(UsdaError::UnbalancedBraces {
                    line: no,
                    detail: "`}` without an open block".into(),
                });
            };
            match stack.last_mut() {
                Some(parent) => parent.prim.children.push(done.prim),
                None => tree.prims.push(done.prim),
            }
            continue;
        }

        if let Some(c) = PRIM_RE.captures(line) {
            let specifier = match &c[1] {
                "def" => Specifier::Def,
                "over" => Specifier::Over,
                _ => Specifier::Class,
            };
            let name = &c[3];
            let path = match stack.last() {
                Some(parent) => format!("{}/{name}", parent.prim.path),
                None => format!("/{name}"),
            };
            if !seen_paths.insert(path.clone()) {
                return Err(UsdaError::DuplicatePath { line: no, path });
            }
            let mut rest = c[4].trim().to_string();
            let mut metadata = Vec::new();
            if rest.is_empty() && lines.peek_content().is_some_and(|l| l.starts_with('(')) {
                let (n, l) = lines.next_content().unwrap();
                let (m, r) = lines.meta_block(l, n)?;
                metadata = m;
                rest = r;
            } else if rest.starts_with('(') {
                let (m, r) = lines.meta_block(&rest, no)?;
                metadata = m;
                rest = r;
            }
            if rest.is_empty() {
                match lines.next_content() {
                    Some((_, "{")) => {}
                    _ => {
                        return Err(UsdaError::UnbalancedBraces {
                            line: no,
                            detail: format!("expected `{{` after prim `{path}`"),
                        })
                    }
                }
            } else if rest != "{" {
                return Err(UsdaError::UnbalancedBraces {
                    line: no,
                    detail: format!("unexpected `{rest}` after prim header"),
                });
            }
            stack.push(Open {
                prim: ScenePrim {
                    path,
                    specifier,
                    prim_type: c.get(2).map(|m| m.as_str().to_string()).unwrap_or_default(),
                    metadata,
                    attributes: Vec::new(),
                    children: Vec::new(),
                },
                line: no,
            });
            continue;
        }

        let Some(open) = stack.last_mut() else {
            return Err(UsdaError::MalformedAttribute {
                line: no,
                text: line.to_string(),
            });
        };

        if let Some(c) = ATTR_RE.captures(line) {
            let declared_type = c[1].split_whitespace().collect::<Vec<_>>().join(" ");
            let name = c[2].to_string();
            let raw = match c.get(3) {
                Some(v) => lines.continue_balanced(v.as_str().trim(), no)?,
                None => String::new(),
            };
            if open.prim.attributes.iter().any(|a| a.name == name) {
                return Err(UsdaError::DuplicateAttribute {
                    line: no,
                    path: open.prim.path.clone(),
                    name,
                });
            }
            open.prim.attributes.push(AttributeEntry {
                name,
                declared_type,
                value: AttrValue::classify(&raw),
            });
        } else if META_RE.is_match(line) {
            let text = lines.continue_balanced(line, no)?;
            open.prim.metadata.push(MetaEntry::parse(&text));
        } else {
            return Err(UsdaError::MalformedAttribute {
                line: no,
                text: line.to_string(),
            });
        }
    }

    if let Some(open) = stack.last() {
        return Err(UsdaError::UnbalancedBraces {
            line: open.line,
            detail: format!("prim `{}` is never closed", open.prim.path),
        });
    }
    Ok(tree)
}

/// Original numeric text keyed by (prim path, attribute name).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    entries: BTreeMap<(String, String), String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("sidecar line {line}: {reason}")]
pub struct SidecarError {
    pub line: usize,
    pub reason: String,
}

impl Sidecar {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, path: &str, attribute: &str) -> Option<&str> {
        self.entries
            .get(&(path.to_string(), attribute.to_string()))
            .map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str, &str)> {
        self.entries
            .iter()
            .map(|((p, a), v)| (p.as_str(), a.as_str(), v.as_str()))
    }

    /// `path<TAB>attribute<TAB>value` per line; `\`, tab and newline are
    /// backslash-escaped.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for ((p, a), v) in &self.entries {
            let _ = writeln!(out, "{}\t{}\t{}", escape(p), escape(a), escape(v));
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self, SidecarError> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(SidecarError {
                    line: i + 1,
                    reason: format!("expected 3 fields, found {}", fields.len()),
                });
            }
            let key = (unescape(fields[0]), unescape(fields[1]));
            entries.insert(key, unescape(fields[2]));
        }
        Ok(Sidecar { entries })
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out
}

fn unescape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some(other) => out.push(other),
            None => out.push('\\'),
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondensedScene {
    pub tree: SceneTree,
    pub sidecar: Sidecar,
}

impl CondensedScene {
    /// Puts the sidecar values back, reproducing the tree that was condensed.
    pub fn rehydrate(&self) -> SceneTree {
        let mut tree = self.tree.clone();
        tree.for_each_prim_mut(|prim| {
            for a in &mut prim.attributes {
                if let Some(v) = self.sidecar.get(&prim.path, &a.name) {
                    a.value = AttrValue::Numeric(v.to_string());
                }
            }
        });
        tree
    }
}

/// Replaces every numeric attribute payload with [`PLACEHOLDER`].
pub fn condense(tree: &SceneTree) -> CondensedScene {
    let mut out = tree.clone();
    let mut sidecar = Sidecar::default();
    out.for_each_prim_mut(|prim| {
        for a in &mut prim.attributes {
            if let AttrValue::Numeric(v) = &a.value {
                sidecar
                    .entries
                    .insert((prim.path.clone(), a.name.clone()), v.clone());
                a.value = AttrValue::Text(PLACEHOLDER.to_string());
            }
        }
    });
    CondensedScene { tree: out, sidecar }
}

/// Deterministic `prim path -> {type, attributes}` rendering of a condensed
/// scene, in depth-first prim order and source attribute order.
pub fn to_dictionary_text(scene: &CondensedScene) -> String {
    let mut root = serde_json::Map::new();
    for prim in scene.tree.flatten() {
        let mut attrs = serde_json::Map::new();
        for a in &prim.attributes {
            attrs.insert(a.name.clone(), display_value(a.value.as_str()).into());
        }
        let mut entry = serde_json::Map::new();
        entry.insert("type".into(), prim.prim_type.clone().into());
        entry.insert("attributes".into(), attrs.into());
        root.insert(prim.path.clone(), entry.into());
    }
    serde_json::to_string_pretty(&serde_json::Value::Object(root)).expect("json map renders")
}

/// Strips the quotes from a value that is a single string literal.
fn display_value(v: &str) -> String {
    let t = v.trim();
    if t.len() >= 2 && t.starts_with('"') && t.ends_with('"') && !t[1..t.len() - 1].contains('"') {
        t[1..t.len() - 1].to_string()
    } else {
        t.to_string()
    }
}

/// Prim paths listed in dictionary text produced by [`to_dictionary_text`].
pub fn dictionary_paths(text: &str) -> Result<Vec<String>, serde_json::Error> {
    let v: serde_json::Map<String, serde_json::Value> = serde_json::from_str(text)?;
    Ok(v.keys().cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const CAMERA: &str = r#"#usda 1.0
(
    defaultPrim = "World"
    metersPerUnit = 1
    upAxis = "Z"
)

def Xform "World"
{
    def Camera "Camera"
    {
        matrix4d xformOp:transform = ( (0.6859206557273865, 0.7276763319969177, 0, 0), (-0.32401347160339355, 0.305420845746994, 0.8953956365585327, 0), (0.6515582203865051, -0.6141703724861145, 0.44527140259742737, 0), (7.358891487121582, -6.925790786743164, 4.958309173583984, 1) )
        uniform token[] xformOpOrder = ["xformOp:transform"]
        float2 clippingRange = (0.1, 100)
        float focalLength = 50
        float horizontalAperture = 36
        float horizontalApertureOffset = 0
        token projection = "perspective"
        float verticalAperture = 24
        string purpose = "render"
    }
}
"#;

    #[test]
    fn camera_attributes_in_source_order() {
        let tree = parse_usda(CAMERA).unwrap();
        assert_eq!(tree.paths(), vec!["/World", "/World/Camera"]);
        let cam = tree.find("/World/Camera").unwrap();
        assert_eq!(cam.prim_type, "Camera");
        let names: Vec<_> = cam.attributes.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(
            names,
            [
                "xformOp:transform",
                "xformOpOrder",
                "clippingRange",
                "focalLength",
                "horizontalAperture",
                "horizontalApertureOffset",
                "projection",
                "verticalAperture",
                "purpose"
            ]
        );
        assert_eq!(cam.attributes[0].declared_type, "matrix4d");
        assert_eq!(cam.attributes[1].declared_type, "uniform token[]");
        assert_eq!(tree.metadata.len(), 3);
    }

    #[test]
    fn empty_source_is_empty_tree() {
        let tree = parse_usda("").unwrap();
        assert!(tree.is_empty());
        assert_eq!(tree.to_usda(), "");
        assert_eq!(to_dictionary_text(&condense(&tree)), "{}");
    }

    #[test]
    fn transform_condenses_to_placeholder() {
        let tree = parse_usda(CAMERA).unwrap();
        let c = condense(&tree);
        let cam = c.tree.find("/World/Camera").unwrap();
        let xf = cam.attribute("xformOp:transform").unwrap();
        assert_eq!(xf.value, AttrValue::Text("NUM".into()));
        assert!(c.tree.to_usda().contains("matrix4d xformOp:transform = NUM"));
        let original = tree
            .find("/World/Camera")
            .unwrap()
            .attribute("xformOp:transform")
            .unwrap()
            .value
            .as_str()
            .to_string();
        assert_eq!(c.sidecar.get("/World/Camera", "xformOp:transform"), Some(original.as_str()));
        // clippingRange, focalLength and the three apertures.
        assert_eq!(c.sidecar.len(), 6);
    }

    #[test]
    fn string_attribute_untouched() {
        let src = "def Scope \"S\"\n{\n    string purpose = \"render\"\n    string label = \"Snake.002 at 30\"\n}\n";
        let tree = parse_usda(src).unwrap();
        let c = condense(&tree);
        assert!(c.sidecar.is_empty());
        assert_eq!(c.tree, tree);
    }

    #[test]
    fn dictionary_has_placeholders() {
        let c = condense(&parse_usda(CAMERA).unwrap());
        let text = to_dictionary_text(&c);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let attrs = &v["/World/Camera"]["attributes"];
        assert_eq!(attrs["xformOp:transform"], "NUM");
        assert_eq!(attrs["focalLength"], "NUM");
        assert_eq!(attrs["purpose"], "render");
        assert_eq!(text, to_dictionary_text(&c));
        assert_eq!(dictionary_paths(&text).unwrap(), vec!["/World", "/World/Camera"]);
    }

    #[test]
    fn lossless_and_idempotent() {
        let tree = parse_usda(CAMERA).unwrap();
        let c = condense(&tree);
        assert_eq!(c.rehydrate(), tree);
        let again = condense(&parse_usda(&c.tree.to_usda()).unwrap());
        assert!(again.sidecar.is_empty());
    }

    #[test]
    fn round_trip_serialization() {
        let tree = parse_usda(CAMERA).unwrap();
        assert_eq!(parse_usda(&tree.to_usda()).unwrap(), tree);
    }

    #[test]
    fn multiline_values_and_time_samples() {
        let src = r#"def Xform "Snake"
{
    double3 xformOp:translate.timeSamples = {
        1: (0, 0, 0),
        48: (2.5, -1, 0),
    }
    int[] faceVertexCounts = [4, 4,
        4, 4]
    rel material:binding = </Looks/Skin>
    float3 extent
}
"#;
        let tree = parse_usda(src).unwrap();
        let snake = &tree.prims[0];
        assert_eq!(snake.attributes.len(), 4);
        assert!(matches!(snake.attributes[0].value, AttrValue::Numeric(_)));
        assert!(matches!(snake.attributes[1].value, AttrValue::Numeric(_)));
        assert!(matches!(snake.attributes[2].value, AttrValue::Text(_)));
        assert_eq!(snake.attributes[3].value, AttrValue::Text(String::new()));
        assert_eq!(parse_usda(&tree.to_usda()).unwrap(), tree);
        let c = condense(&tree);
        assert_eq!(c.sidecar.len(), 2);
        assert_eq!(c.rehydrate(), tree);
    }

    #[test]
    fn prim_metadata_forms() {
        let src = "def Xform \"A\" (\n    kind = \"component\"\n)\n{\n    def Mesh \"B\" (instanceable = true)\n    {\n    }\n}\nover \"C\"\n(\n    active = false\n)\n{\n}\n";
        let tree = parse_usda(src).unwrap();
        assert_eq!(tree.paths(), vec!["/A", "/A/B", "/C"]);
        assert_eq!(tree.prims[0].metadata[0].key.as_deref(), Some("kind"));
        assert_eq!(tree.prims[0].children[0].metadata[0].value, "true");
        assert_eq!(tree.prims[1].specifier, Specifier::Over);
        assert_eq!(tree.prims[1].prim_type, "");
        assert_eq!(parse_usda(&tree.to_usda()).unwrap(), tree);
    }

    #[test]
    fn unbalanced_braces_report_line() {
        let err = parse_usda("def Xform \"A\"\n{\n    float x = 1\n").unwrap_err();
        assert!(matches!(err, UsdaError::UnbalancedBraces { line: 1, .. }), "{err:?}");
        let err = parse_usda("def Xform \"A\"\n{\n}\n}\n").unwrap_err();
        assert!(matches!(err, UsdaError::UnbalancedBraces { line: 4, .. }), "{err:?}");
        let err = parse_usda("def Xform \"A\"\nfloat x = 1\n").unwrap_err();
        assert!(matches!(err, UsdaError::UnbalancedBraces { .. }), "{err:?}");
    }

    #[test]
    fn malformed_attribute_reports_line() {
        let err = parse_usda("def Xform \"A\"\n{\n    ??? nonsense\n}\n").unwrap_err();
        assert_eq!(
            err,
            UsdaError::MalformedAttribute {
                line: 3,
                text: "??? nonsense".into()
            }
        );
        let err = parse_usda("float x = 1\n").unwrap_err();
        assert!(matches!(err, UsdaError::MalformedAttribute { line: 1, .. }));
    }

    #[test]
    fn duplicates_rejected() {
        let err = parse_usda("def X \"A\"\n{\n}\ndef X \"A\"\n{\n}\n").unwrap_err();
        assert!(matches!(err, UsdaError::DuplicatePath { line: 4, .. }));
        let err = parse_usda("def X \"A\"\n{\n    float a = 1\n    float a = 2\n}\n").unwrap_err();
        assert!(matches!(err, UsdaError::DuplicateAttribute { .. }));
    }

    #[test]
    fn numeric_classification() {
        for s in ["1", "-2.5e-3", "(1, 2, 3)", "[(0,0),(1,1)]", "{ 1: 5, 2: 6 }", ".5", "1."] {
            assert!(is_numeric_payload(s), "{s}");
        }
        for s in ["\"1\"", "NUM", "[]", "true", "Snake.002", "</A/B>", "1e", ""] {
            assert!(!is_numeric_payload(s), "{s}");
        }
    }

    #[test]
    fn sidecar_tsv_round_trip() {
        let tree = parse_usda("def X \"A\"\n{\n    int[] v = [1,\n        2]\n    float f = 3\n}\n").unwrap();
        let c = condense(&tree);
        let tsv = c.sidecar.to_tsv();
        assert!(tsv.contains("/A\tv\t[1,\\n2]\n"));
        assert_eq!(Sidecar::from_tsv(&tsv).unwrap(), c.sidecar);
        assert!(Sidecar::from_tsv("only\ttwo\n").is_err());
    }
}
