//! Fixture generators and brute-force reference implementations used by the
//! property and acceptance tests. Nothing here calls into the library code
//! it is checking.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use scene_copilot::grammar::Code;
use scene_copilot::nodegraph::{Link, Node, NodeGraph};

// ---------------------------------------------------------------- usda

pub struct UsdaFixture {
    pub text: String,
    pub prim_count: usize,
    /// (prim path, attribute name) of every attribute written with a purely
    /// numeric value.
    pub numeric: HashSet<(String, String)>,
    /// Same for attributes written with any other value.
    pub textual: HashSet<(String, String)>,
}

fn number(rng: &mut impl Rng) -> String {
    match rng.random_range(0..5) {
        0 => rng.random_range(-1000..1000).to_string(),
        1 => format!("{:.3}", rng.random_range(-100.0..100.0)),
        2 => format!("{}e-{}", rng.random_range(1..9), rng.random_range(1..6)),
        3 => format!("-{}.5", rng.random_range(0..50)),
        _ => format!(".{}", rng.random_range(1..99)),
    }
}

fn tuple(rng: &mut impl Rng, n: usize) -> String {
    let parts: Vec<String> = (0..n).map(|_| number(rng)).collect();
    format!("({})", parts.join(", "))
}

/// A numeric payload and a type to declare it with.
fn numeric_value(rng: &mut impl Rng) -> (&'static str, String) {
    match rng.random_range(0..7) {
        0 => ("float", number(rng)),
        1 => ("int", rng.random_range(0..100000).to_string()),
        2 => ("double3", tuple(rng, 3)),
        3 => {
            let rows: Vec<String> = (0..4).map(|_| tuple(rng, 4)).collect();
            ("matrix4d", format!("( {} )", rows.join(", ")))
        }
        4 => {
            let n = rng.random_range(1..6);
            let items: Vec<String> = (0..n).map(|_| number(rng)).collect();
            ("float[]", format!("[{}]", items.join(", ")))
        }
        5 => {
            // multi-line array, continuation lines at column zero
            let n = rng.random_range(1..5);
            let items: Vec<String> = (0..n).map(|_| tuple(rng, 3)).collect();
            ("point3f[]", format!("[\n{},\n]", items.join(",\n")))
        }
        _ => {
            let n = rng.random_range(1..4);
            let items: Vec<String> = (0..n).map(|i| format!("{}: {},", i * 24, number(rng))).collect();
            ("double", format!("{{\n{}\n}}", items.join("\n")))
        }
    }
}

/// Values with digits or brackets that are still not numeric.
fn text_value(rng: &mut impl Rng) -> (&'static str, String) {
    match rng.random_range(0..9) {
        8 => ("float[]", "[]".into()),
        0 => ("string", format!("\"frame {}\"", rng.random_range(0..999))),
        1 => ("string", format!("\"{}\"", rng.random_range(0..999))),
        2 => ("asset", format!("@./textures/tex_{}.png@", rng.random_range(0..99))),
        3 => ("bool", if rng.random_bool(0.5) { "true" } else { "false" }.into()),
        4 => ("token", "\"inherited\"".into()),
        5 => ("uniform token[]", "[\"xformOp:translate\", \"xformOp:scale\"]".into()),
        6 => ("rel", format!("</World/Looks/Mat{}>", rng.random_range(0..9))),
        _ => ("float", String::new()),
    }
}

const PRIM_TYPES: [&str; 6] = ["Xform", "Mesh", "Sphere", "Camera", "Scope", ""];

struct GenPrim {
    name: String,
    spec: &'static str,
    ty: &'static str,
    meta: bool,
    attrs: Vec<(String, String, String, bool)>,
    children: Vec<GenPrim>,
}

fn write_gen(out: &mut String, p: &GenPrim, depth: usize) {
    let pad = "    ".repeat(depth);
    out.push_str(&pad);
    out.push_str(p.spec);
    if !p.ty.is_empty() {
        out.push(' ');
        out.push_str(p.ty);
    }
    out.push_str(&format!(" \"{}\"", p.name));
    if p.meta {
        out.push_str(&format!(" (\n{pad}    kind = \"component\"\n{pad})"));
    }
    out.push('\n');
    out.push_str(&format!("{pad}{{\n"));
    for (ty, name, v, _) in &p.attrs {
        if v.is_empty() {
            out.push_str(&format!("{pad}    {ty} {name}\n"));
        } else {
            out.push_str(&format!("{pad}    {ty} {name} = {v}\n"));
        }
    }
    for (i, c) in p.children.iter().enumerate() {
        if i > 0 || !p.attrs.is_empty() {
            out.push('\n');
        }
        write_gen(out, c, depth + 1);
    }
    out.push_str(&format!("{pad}}}\n"));
}

fn collect_labels(p: &GenPrim, parent: &str, f: &mut UsdaFixture) {
    let path = format!("{parent}/{}", p.name);
    f.prim_count += 1;
    for (_, name, _, numeric) in &p.attrs {
        let key = (path.clone(), name.clone());
        if *numeric {
            f.numeric.insert(key);
        } else {
            f.textual.insert(key);
        }
    }
    for c in &p.children {
        collect_labels(c, &path, f);
    }
}

/// A scene of up to `max_prims` prims in the layout the writer produces.
pub fn usda_fixture(rng: &mut impl Rng, max_prims: usize) -> UsdaFixture {
    let target = rng.random_range(1..=max_prims);
    let mut flat: Vec<GenPrim> = Vec::new();
    let mut parent_of: Vec<Option<usize>> = Vec::new();
    for i in 0..target {
        let mut attrs = Vec::new();
        for a in 0..rng.random_range(0..6) {
            let numeric = rng.random_bool(0.6);
            let (ty, v) = if numeric { numeric_value(rng) } else { text_value(rng) };
            let name = match (numeric, ty == "double") {
                (true, true) => format!("xformOp:rotateY{a}.timeSamples"),
                _ => format!("attr_{a}"),
            };
            let numeric = numeric && !v.is_empty();
            attrs.push((ty.to_string(), name, v, numeric));
        }
        flat.push(GenPrim {
            name: format!("P{i}"),
            spec: ["def", "def", "def", "over", "class"][rng.random_range(0..5)],
            ty: PRIM_TYPES[rng.random_range(0..PRIM_TYPES.len())],
            meta: rng.random_bool(0.1),
            attrs,
            children: Vec::new(),
        });
        parent_of.push(if i == 0 || rng.random_bool(0.2) { None } else { Some(rng.random_range(0..i)) });
    }
    // attach children bottom-up so indices stay valid
    let mut slots: Vec<Option<GenPrim>> = flat.into_iter().map(Some).collect();
    for i in (0..target).rev() {
        if let Some(p) = parent_of[i] {
            let child = slots[i].take().unwrap();
            slots[p].as_mut().unwrap().children.insert(0, child);
        }
    }
    let roots: Vec<GenPrim> = slots.into_iter().flatten().collect();

    let mut text = String::from("#usda 1.0\n(\n    defaultPrim = \"P0\"\n    metersPerUnit = 1\n    upAxis = \"Z\"\n)\n\n");
    for (i, r) in roots.iter().enumerate() {
        if i > 0 {
            text.push('\n');
        }
        write_gen(&mut text, r, 0);
    }
    let mut f = UsdaFixture {
        text,
        prim_count: 0,
        numeric: HashSet::new(),
        textual: HashSet::new(),
    };
    for r in &roots {
        collect_labels(r, "", &mut f);
    }
    f
}

/// Whether `value` is made only of numeric literals and punctuation. Written
/// as a hand scanner, independent of the library's classifier.
pub fn looks_numeric(value: &str) -> bool {
    let mut saw_number = false;
    for piece in value.split(|c: char| c.is_whitespace() || "()[]{},:".contains(c)) {
        if piece.is_empty() {
            continue;
        }
        let ok = piece.parse::<f64>().is_ok() && piece.chars().all(|c| c.is_ascii_digit() || "+-.eE".contains(c));
        if !ok {
            return false;
        }
        saw_number = true;
    }
    saw_number
}

// ---------------------------------------------------------------- bm25

pub fn oracle_tokens(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        if c.is_alphanumeric() {
            cur.extend(c.to_lowercase());
        } else if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Exhaustive BM25 over `chunks` (k1 = 1.2, b = 0.75): every chunk scored,
/// positives kept, sorted by score descending then index ascending.
pub fn brute_force_top_k(chunks: &[String], query: &str, k: usize) -> Vec<(u32, f64)> {
    let (k1, b) = (1.2f64, 0.75f64);
    let docs: Vec<Vec<String>> = chunks.iter().map(|c| oracle_tokens(c)).collect();
    let n = docs.len();
    if n == 0 || k == 0 {
        return Vec::new();
    }
    let total: u64 = docs.iter().map(|d| d.len() as u64).sum();
    let avg = total as f64 / n as f64;
    let mut terms: Vec<String> = Vec::new();
    for t in oracle_tokens(query) {
        if !terms.contains(&t) {
            terms.push(t);
        }
    }
    let df: Vec<usize> = terms.iter().map(|t| docs.iter().filter(|d| d.contains(t)).count()).collect();
    let mut scored = Vec::new();
    for (i, d) in docs.iter().enumerate() {
        let mut s = 0.0f64;
        for (t, &df) in terms.iter().zip(&df) {
            let tf = d.iter().filter(|x| *x == t).count();
            if tf == 0 {
                continue;
            }
            let idf = (1.0 + (n as f64 - df as f64 + 0.5) / (df as f64 + 0.5)).ln();
            let norm = if avg > 0.0 { d.len() as f64 / avg } else { 0.0 };
            let tf = tf as f64;
            s += idf * (tf * (k1 + 1.0)) / (tf + k1 * (1.0 - b + b * norm));
        }
        if s > 0.0 {
            scored.push((i as u32, s));
        }
    }
    // selection by repeated max keeps the tie rule explicit
    let mut out = Vec::new();
    while out.len() < k && !scored.is_empty() {
        let mut best = 0;
        for j in 1..scored.len() {
            let (id, s) = scored[j];
            let (bid, bs) = scored[best];
            if s > bs || (s == bs && id < bid) {
                best = j;
            }
        }
        out.push(scored.swap_remove(best));
    }
    out
}

/// Zipf-ish vocabulary draws so some terms are common and many are rare.
pub fn random_text(rng: &mut impl Rng, vocab: usize, len: usize) -> String {
    let words: Vec<String> = (0..len)
        .map(|_| {
            let r: f64 = rng.random();
            let idx = ((vocab as f64).powf(r) as usize).saturating_sub(1).min(vocab - 1);
            let sep = ["", "", "", "-", "_", "."][rng.random_range(0..6)];
            if sep.is_empty() { format!("w{idx}") } else { format!("w{idx}{sep}W{}", idx % 7) }
        })
        .collect();
    words.join(" ")
}

// ---------------------------------------------------------------- cot

pub const COT_TAGS: [&str; 6] = ["<thinking>", "</thinking>", "<reflection>", "</reflection>", "<output>", "</output>"];

const DECOYS: [&str; 12] = [
    "<think>",
    "< thinking>",
    "<output",
    "</outputs>",
    "a < b > c",
    "<reflections>",
    "<Output>",
    "</ reflection>",
    "<<>>",
    "<thinking/>",
    "<outputs>",
    "x<y and y>z",
];

pub fn decoy_text(rng: &mut impl Rng) -> String {
    let n = rng.random_range(1..8);
    let mut parts = Vec::new();
    for i in 0..n {
        if rng.random_bool(0.3) {
            parts.push(DECOYS[rng.random_range(0..DECOYS.len())].to_string());
        } else {
            parts.push(format!("word{}", rng.random_range(0..100)));
        }
        if i % 3 == 2 {
            parts.push("\n".into());
        }
    }
    let s = parts.join(" ");
    debug_assert!(COT_TAGS.iter().all(|t| !s.contains(t)));
    s
}

fn pad(rng: &mut impl Rng) -> &'static str {
    ["", " ", "\n", "\n\n", "  \n "][rng.random_range(0..5)]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotRegions {
    pub thinking: String,
    pub reflection: String,
    pub adjustments: String,
    pub output: String,
}

/// A well-formed tagged response: optional thinking (optionally with a
/// reflection inside), then a non-empty output. Free text may surround it.
pub fn cot_fixture(rng: &mut impl Rng) -> String {
    let mut s = String::new();
    if rng.random_bool(0.2) {
        s.push_str(&decoy_text(rng));
        s.push('\n');
    }
    if rng.random_bool(0.8) {
        s.push_str("<thinking>");
        s.push_str(pad(rng));
        s.push_str(&decoy_text(rng));
        s.push_str(pad(rng));
        if rng.random_bool(0.7) {
            s.push_str("<reflection>");
            s.push_str(pad(rng));
            s.push_str(&decoy_text(rng));
            s.push_str(pad(rng));
            s.push_str("</reflection>");
            s.push_str(pad(rng));
            if rng.random_bool(0.7) {
                s.push_str(&decoy_text(rng));
            }
            s.push_str(pad(rng));
        }
        s.push_str("</thinking>");
        s.push_str(pad(rng));
    }
    if rng.random_bool(0.2) {
        s.push_str(&decoy_text(rng));
    }
    s.push_str("<output>");
    s.push_str(pad(rng));
    s.push_str(&decoy_text(rng));
    s.push_str(pad(rng));
    s.push_str("</output>");
    if rng.random_bool(0.3) {
        s.push_str(pad(rng));
        s.push_str(&decoy_text(rng));
    }
    s
}

/// Single left-to-right pass: record each tag as it is met, then read the
/// regions off the tag sequence. `None` when the sequence is not one of the
/// three well-formed shapes.
pub fn linear_scan_cot(text: &str) -> Option<CotRegions> {
    let bytes = text.as_bytes();
    let mut events: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let hit = COT_TAGS.iter().position(|t| bytes[i..].starts_with(t.as_bytes()));
        match hit {
            Some(t) => {
                events.push((t, i));
                i += COT_TAGS[t].len();
            }
            None => i += 1,
        }
    }
    let kinds: Vec<usize> = events.iter().map(|e| e.0).collect();
    let between = |a: usize, b: usize| {
        let (ta, pa) = events[a];
        let (_, pb) = events[b];
        text[pa + COT_TAGS[ta].len()..pb].trim().to_string()
    };
    let mut r = CotRegions {
        thinking: String::new(),
        reflection: String::new(),
        adjustments: String::new(),
        output: String::new(),
    };
    match kinds.as_slice() {
        [4, 5] => r.output = between(0, 1),
        [0, 1, 4, 5] => {
            r.thinking = between(0, 1);
            r.output = between(2, 3);
        }
        [0, 2, 3, 1, 4, 5] => {
            r.thinking = between(0, 1);
            r.reflection = between(1, 2);
            r.adjustments = between(2, 3);
            r.output = between(4, 5);
        }
        _ => return None,
    }
    if r.output.is_empty() {
        return None;
    }
    Some(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CotClass {
    MissingOutput,
    UnclosedOutput,
    DuplicateTag,
    ReflectionOutsideThinking,
    UnclosedThinking,
    OutputInsideThinking,
    UnclosedReflection,
    EmptyOutput,
    ClosedBeforeOpened,
}

pub const COT_CLASSES: [CotClass; 9] = [
    CotClass::MissingOutput,
    CotClass::UnclosedOutput,
    CotClass::DuplicateTag,
    CotClass::ReflectionOutsideThinking,
    CotClass::UnclosedThinking,
    CotClass::OutputInsideThinking,
    CotClass::UnclosedReflection,
    CotClass::EmptyOutput,
    CotClass::ClosedBeforeOpened,
];

/// Designated error name for each malformed class.
pub fn cot_expected(class: CotClass) -> &'static str {
    match class {
        CotClass::MissingOutput | CotClass::UnclosedOutput => "MissingOutputTag",
        CotClass::EmptyOutput => "EmptyOutput",
        _ => "UnbalancedTags",
    }
}

pub fn malformed_cot(rng: &mut impl Rng, class: CotClass) -> String {
    let t = decoy_text(rng);
    let o = decoy_text(rng);
    match class {
        CotClass::MissingOutput => format!("<thinking>{t}</thinking>\n{o}"),
        CotClass::UnclosedOutput => format!("<thinking>{t}</thinking><output>{o}"),
        CotClass::DuplicateTag => format!("<thinking>{t}</thinking><output>{o}</output><output>{o}</output>"),
        CotClass::ReflectionOutsideThinking => format!("<reflection>{t}</reflection><output>{o}</output>"),
        CotClass::UnclosedThinking => format!("<thinking>{t}\n<output>{o}</output>"),
        CotClass::OutputInsideThinking => format!("<thinking>{t}<output>{o}</output></thinking>"),
        CotClass::UnclosedReflection => format!("<thinking><reflection>{t}</thinking><output>{o}</output>"),
        CotClass::EmptyOutput => format!("<thinking>{t}</thinking><output>{}</output>", pad(rng)),
        CotClass::ClosedBeforeOpened => format!("</output>{t}<output>{o}"),
    }
}

// ---------------------------------------------------------------- graphs

const NODE_TYPES: [&str; 8] = [
    "ShaderNodeTexNoise",
    "ShaderNodeMath",
    "ShaderNodeMixRGB",
    "GeometryNodeMeshGrid",
    "GeometryNodeSetPosition",
    "ShaderNodeBsdfPrincipled",
    "ShaderNodeValToRGB",
    "GroupOutput",
];

fn param_value(rng: &mut impl Rng) -> Value {
    match rng.random_range(0..6) {
        0 => json!(rng.random_range(-50..50)),
        1 => json!(rng.random_range(-10.0..10.0)),
        2 => json!(rng.random_bool(0.5)),
        3 => json!(["MULTIPLY", "ADD", "a, b", "x) = (y", "{to}", "quote\"d", "new\nline"][rng.random_range(0..7)]),
        4 => json!([rng.random_range(0..9), 0.5, "z"]),
        _ => json!({"r": rng.random_range(0.0..1.0), "tag": "{from}"}),
    }
}

/// A random DAG with `n` nodes: links only go from lower to higher position
/// in a hidden order, and node ids are shuffled so that order is not the
/// listing order.
pub fn random_dag(rng: &mut impl Rng, n: usize) -> NodeGraph {
    let mut ids: Vec<String> = (0..n).map(|i| format!("node_{i}")).collect();
    ids.shuffle(rng);
    let nodes: Vec<Node> = ids
        .iter()
        .map(|id| {
            let mut params = BTreeMap::new();
            for p in 0..rng.random_range(0..4) {
                params.insert(format!("p{p}"), param_value(rng));
            }
            Node {
                id: id.clone(),
                type_name: NODE_TYPES[rng.random_range(0..NODE_TYPES.len())].to_string(),
                params,
            }
        })
        .collect();
    let mut links = HashSet::new();
    if n > 1 {
        for _ in 0..rng.random_range(0..n * 2) {
            let a = rng.random_range(0..n - 1);
            let b = rng.random_range(a + 1..n);
            links.insert(Link {
                from: ids[a].clone(),
                from_socket: ["Value", "Color", "Fac", "Geometry"][rng.random_range(0..4)].into(),
                to: ids[b].clone(),
                to_socket: format!("In{}", rng.random_range(0..3)),
            });
        }
    }
    let mut links: Vec<Link> = links.into_iter().collect();
    links.sort();
    links.shuffle(rng);
    let mut listed = nodes;
    listed.shuffle(rng);
    let outputs = ids.iter().filter(|_| rng.random_bool(0.1)).cloned().collect();
    NodeGraph {
        nodes: listed,
        links,
        outputs,
    }
}

/// Adds links that close at least one cycle.
pub fn make_cyclic(rng: &mut impl Rng, g: &mut NodeGraph) {
    let n = g.nodes.len();
    let a = rng.random_range(0..n);
    let b = rng.random_range(0..n);
    let (x, y) = (g.nodes[a].id.clone(), g.nodes[b].id.clone());
    g.links.push(Link {
        from: x.clone(),
        from_socket: "Loop".into(),
        to: y.clone(),
        to_socket: "Back".into(),
    });
    if a != b {
        g.links.push(Link {
            from: y,
            from_socket: "Loop".into(),
            to: x,
            to_socket: "Back".into(),
        });
    }
}

/// Checks that the id-preserving map between `a` and `b` is a graph
/// isomorphism respecting node types, params, socket-labelled links and the
/// output list.
pub fn isomorphic(a: &NodeGraph, b: &NodeGraph) -> Result<(), String> {
    if a.nodes.len() != b.nodes.len() {
        return Err(format!("node count {} vs {}", a.nodes.len(), b.nodes.len()));
    }
    let bn: HashMap<&str, &Node> = b.nodes.iter().map(|n| (n.id.as_str(), n)).collect();
    for n in &a.nodes {
        let Some(m) = bn.get(n.id.as_str()) else {
            return Err(format!("node {} missing", n.id));
        };
        if n.type_name != m.type_name || n.params != m.params {
            return Err(format!("node {} differs: {:?} vs {:?}", n.id, n, m));
        }
    }
    let mut la: Vec<&Link> = a.links.iter().collect();
    let mut lb: Vec<&Link> = b.links.iter().collect();
    la.sort();
    lb.sort();
    if la != lb {
        return Err("link multisets differ".into());
    }
    let oa: HashSet<&String> = a.outputs.iter().collect();
    let ob: HashSet<&String> = b.outputs.iter().collect();
    if oa != ob {
        return Err("outputs differ".into());
    }
    Ok(())
}

/// A valid cycle certificate lists distinct nodes, each linked to the next
/// and the last linked back to the first.
pub fn valid_cycle_certificate(g: &NodeGraph, cycle: &[String]) -> bool {
    if cycle.is_empty() {
        return false;
    }
    let distinct: HashSet<&String> = cycle.iter().collect();
    if distinct.len() != cycle.len() {
        return false;
    }
    let edge = |u: &str, v: &str| g.links.iter().any(|l| l.from == u && l.to == v);
    (0..cycle.len()).all(|i| edge(&cycle[i], &cycle[(i + 1) % cycle.len()]))
}

// ---------------------------------------------------------------- normal

/// Standard normal CDF by composite Simpson integration of the density from
/// -12 to `z`.
pub fn simpson_phi(z: f64) -> f64 {
    let lo = -12.0;
    if z <= lo {
        return 0.0;
    }
    let n = 20_000;
    let h = (z - lo) / n as f64;
    let pdf = |x: f64| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut s = pdf(lo) + pdf(z);
    for i in 1..n {
        let x = lo + i as f64 * h;
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * pdf(x);
    }
    s * h / 3.0
}

// ---------------------------------------------------------------- grammar

pub struct Mutation {
    pub line: String,
    pub expected: Code,
}

fn option_starts(tokens: &[&str]) -> Vec<usize> {
    tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.starts_with("--"))
        .map(|(i, _)| i)
        .collect()
}

fn with_value(tokens: &[&str], option: &str, value: &str, replace: bool) -> String {
    let mut out: Vec<String> = tokens.iter().map(|t| t.to_string()).collect();
    match tokens.iter().position(|t| *t == option) {
        Some(i) if replace => out[i + 1] = value.to_string(),
        Some(i) => out.insert(i + 1, value.to_string()),
        None => {
            out.push(option.to_string());
            out.push(value.to_string());
        }
    }
    out.join(" ")
}

const BAD_ENUMS: [&str; 15] = [
    "sometimes",
    "ALL",
    "big-files",
    "bigfiles",
    "except_log",
    "nothing",
    "0",
    "true",
    "all_files",
    "except",
    "logs",
    "crashed",
    "None",
    "big_files,all",
    "except_crashes",
];

const BAD_OVERRIDES: [&str; 15] = [
    "rain_particles_chance",
    "=1.0",
    "compose_nature.rain=",
    "1abc=2",
    "a..b=1",
    ".a=1",
    "a.=1",
    "a-b=1",
    "compose_nature.rain",
    "=",
    "a/b=1",
    "9=9",
    "a.b.=x",
    "@x=1",
    "a.1b=2",
];

/// Fifteen mutations of each of four kinds, spread over `bases`
/// (commands that are executable with no errors in strict mode).
pub fn mutation_suite(bases: &[String]) -> Vec<Mutation> {
    let mut out = Vec::new();
    for i in 0..15 {
        let base = &bases[i % bases.len()];
        let tokens: Vec<&str> = base.split_whitespace().collect();

        let starts = option_starts(&tokens);
        let at = starts[i % starts.len()];
        let mut t: Vec<String> = tokens.iter().map(|t| t.to_string()).collect();
        t.insert(at, format!("--zz_unknown_{i}"));
        out.push(Mutation {
            line: t.join(" "),
            expected: Code::UnknownOption,
        });

        out.push(Mutation {
            line: with_value(&tokens, "--cleanup", BAD_ENUMS[i], true),
            expected: Code::BadEnumValue,
        });

        let list = if i % 2 == 0 { "--configs" } else { "--pipeline_configs" };
        out.push(Mutation {
            line: with_value(&tokens, list, &format!("nonexistent_{i}.gin"), false),
            expected: Code::UnknownGinFile,
        });

        let kv = if i % 2 == 0 { "--overrides" } else { "--pipeline_overrides" };
        out.push(Mutation {
            line: with_value(&tokens, kv, BAD_OVERRIDES[i], false),
            expected: Code::MalformedOverride,
        });
    }
    out
}

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

