//! Node graphs (geometry and material nodes) to imperative scripting code,
//! and back.
//!
//! Graphs are read from a JSON schema:
//!
//! ```json
//! {"nodes": [{"id": "n1", "type": "Noise Texture", "params": {"scale": 5.0}}],
//!  "links": [{"from": "n1", "from_socket": "Fac", "to": "n2", "to_socket": "Height"}],
//!  "outputs": ["n2"]}
//! ```

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph document: {0}")]
    Schema(String),
    #[error("duplicate node id `{0}`")]
    DuplicateNodeId(String),
    #[error("link or output references unknown node `{node}`")]
    DanglingLink { node: String },
    #[error("cycle detected: {}", .0.join(" -> "))]
    CycleDetected(Vec<String>),
    #[error("line {line}: unknown instruction `{text}`")]
    UnknownInstruction { line: usize, text: String },
    #[error("line {line}: `{var}` used before it is created")]
    UseBeforeCreate { line: usize, var: String },
    #[error("unknown template `{0}`")]
    UnknownTemplate(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    #[serde(rename = "type")]
    pub type_name: String,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Link {
    pub from: String,
    pub from_socket: String,
    pub to: String,
    pub to_socket: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct NodeGraph {
    #[serde(default)]
    pub nodes: Vec<Node>,
    #[serde(default)]
    pub links: Vec<Link>,
    #[serde(default)]
    pub outputs: Vec<String>,
}

impl NodeGraph {
    /// Checks ids, link endpoints and acyclicity.
    pub fn validate(&self) -> Result<(), GraphError> {
        let mut ids = HashSet::new();
        for n in &self.nodes {
            if !ids.insert(n.id.as_str()) {
                return Err(GraphError::DuplicateNodeId(n.id.clone()));
            }
        }
        let endpoints = self
            .links
            .iter()
            .flat_map(|l| [&l.from, &l.to])
            .chain(self.outputs.iter());
        for id in endpoints {
            if !ids.contains(id.as_str()) {
                return Err(GraphError::DanglingLink { node: id.clone() });
            }
        }
        if let Some(cycle) = self.find_cycle() {
            return Err(GraphError::CycleDetected(cycle));
        }
        Ok(())
    }

    /// Node ids along one directed cycle, if the graph has one. Each id links
    /// to the next and the last links back to the first.
    pub fn find_cycle(&self) -> Option<Vec<String>> {
        let mut adj: BTreeMap<&str, Vec<&str>> = self.nodes.iter().map(|n| (n.id.as_str(), Vec::new())).collect();
        for l in &self.links {
            adj.entry(&l.from).or_default().push(&l.to);
        }
        for v in adj.values_mut() {
            v.sort_unstable();
            v.dedup();
        }
        // 0 unvisited, 1 on stack, 2 done
        let mut color: HashMap<&str, u8> = HashMap::new();
        for &start in adj.keys() {
            if color.get(start).copied().unwrap_or(0) != 0 {
                continue;
            }
            let mut path: Vec<&str> = vec![start];
            let mut iters: Vec<usize> = vec![0];
            color.insert(start, 1);
            while let Some(&top) = path.last() {
                let i = iters.last_mut().unwrap();
                let next = adj.get(top).and_then(|v| v.get(*i)).copied();
                *i += 1;
                match next {
                    Some(n) => match color.get(n).copied().unwrap_or(0) {
                        0 => {
                            color.insert(n, 1);
                            path.push(n);
                            iters.push(0);
                        }
                        1 => {
                            let at = path.iter().position(|&p| p == n).unwrap();
                            return Some(path[at..].iter().map(|s| s.to_string()).collect());
                        }
                        _ => {}
                    },
                    None => {
                        color.insert(top, 2);
                        path.pop();
                        iters.pop();
                    }
                }
            }
        }
        None
    }

    /// Node ids in topological order, ties broken by ascending id.
    pub fn topo_order(&self) -> Result<Vec<String>, GraphError> {
        let mut indeg: BTreeMap<&str, usize> = self.nodes.iter().map(|n| (n.id.as_str(), 0)).collect();
        let mut adj: HashMap<&str, Vec<&str>> = HashMap::new();
        for l in &self.links {
            adj.entry(&l.from).or_default().push(&l.to);
            *indeg.get_mut(l.to.as_str()).ok_or_else(|| GraphError::DanglingLink { node: l.to.clone() })? += 1;
        }
        let mut ready: BinaryHeap<Reverse<&str>> =
            indeg.iter().filter(|(_, &d)| d == 0).map(|(&id, _)| Reverse(id)).collect();
        let mut out = Vec::with_capacity(self.nodes.len());
        while let Some(Reverse(id)) = ready.pop() {
            out.push(id.to_string());
            for &to in adj.get(id).map(Vec::as_slice).unwrap_or(&[]) {
                let d = indeg.get_mut(to).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.push(Reverse(to));
                }
            }
        }
        if out.len() < self.nodes.len() {
            return Err(GraphError::CycleDetected(self.find_cycle().unwrap_or_default()));
        }
        Ok(out)
    }

    /// Same graph with nodes sorted by id and links sorted.
    pub fn normalized(&self) -> NodeGraph {
        let mut g = self.clone();
        g.nodes.sort_by(|a, b| a.id.cmp(&b.id));
        g.links.sort();
        g
    }
}

pub fn parse_graph(doc: &str) -> Result<NodeGraph, GraphError> {
    let graph: NodeGraph = if doc.trim().is_empty() {
        NodeGraph::default()
    } else {
        serde_json::from_str(doc).map_err(|e| GraphError::Schema(e.to_string()))?
    };
    graph.validate()?;
    Ok(graph)
}

/// Statement shapes for one target dialect. Placeholders: `{var}`, `{type}`,
/// `{id}`, `{param}`, `{value}`, `{from}`, `{from_socket}`, `{to}`,
/// `{to_socket}`. String arguments are substituted as JSON string literals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmitTemplate {
    pub name: String,
    pub create: String,
    pub set: String,
    pub connect: String,
    pub output: String,
}

impl EmitTemplate {
    /// The instruction dialect read back by [`ungraph`].
    pub fn instructions() -> Self {
        EmitTemplate {
            name: "instructions".into(),
            create: "{var} = create({type}, {id})".into(),
            set: "set({var}, {param}, {value})".into(),
            connect: "connect({from}, {from_socket}, {to}, {to_socket})".into(),
            output: "output({var})".into(),
        }
    }

    /// Blender scripting calls against `nodes`, `links` and `outputs` in scope.
    pub fn bpy() -> Self {
        EmitTemplate {
            name: "bpy".into(),
            create: "{var} = nodes.new({type}); {var}.name = {id}".into(),
            set: "{var}.inputs[{param}].default_value = {value}".into(),
            connect: "links.new({from}.outputs[{from_socket}], {to}.inputs[{to_socket}])".into(),
            output: "outputs.append({var})".into(),
        }
    }

    pub fn by_name(name: &str) -> Result<Self, GraphError> {
        match name {
            "instructions" => Ok(Self::instructions()),
            "bpy" => Ok(Self::bpy()),
            other => Err(GraphError::UnknownTemplate(other.to_string())),
        }
    }
}

fn fill(template: &str, pairs: &[(&str, &str)]) -> String {
    let mut out = String::new();
    let mut rest = template;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let after = &rest[open + 1..];
        let hit = after
            .find('}')
            .and_then(|close| pairs.iter().find(|(k, _)| *k == &after[..close]).map(|(_, v)| (close, v)));
        match hit {
            Some((close, v)) => {
                out.push_str(v);
                rest = &after[close + 1..];
            }
            None => {
                out.push('{');
                rest = after;
            }
        }
    }
    out.push_str(rest);
    out
}

fn lit(s: &str) -> String {
    Value::String(s.to_string()).to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmittedProgram {
    pub statements: Vec<String>,
    /// Node id to variable name.
    pub symbol_table: BTreeMap<String, String>,
}

impl EmittedProgram {
    pub fn text(&self) -> String {
        let mut s = self.statements.join("\n");
        if !s.is_empty() {
            s.push('\n');
        }
        s
    }
}

pub fn transpile(graph: &NodeGraph) -> Result<EmittedProgram, GraphError> {
    transpile_with(graph, &EmitTemplate::instructions())
}

/// Creates nodes in topological order with their parameters, then connects
/// links and marks outputs.
pub fn transpile_with(graph: &NodeGraph, t: &EmitTemplate) -> Result<EmittedProgram, GraphError> {
    graph.validate()?;
    let order = graph.topo_order()?;
    let by_id: HashMap<&str, &Node> = graph.nodes.iter().map(|n| (n.id.as_str(), n)).collect();
    let mut symbols = BTreeMap::new();
    let mut pos = HashMap::new();
    let mut statements = Vec::new();
    for (i, id) in order.iter().enumerate() {
        let var = format!("node_{i}");
        let node = by_id[id.as_str()];
        statements.push(fill(&t.create, &[("var", &var), ("type", &lit(&node.type_name)), ("id", &lit(id))]));
        for (param, value) in &node.params {
            statements.push(fill(&t.set, &[("var", &var), ("param", &lit(param)), ("value", &value.to_string())]));
        }
        pos.insert(id.as_str(), i);
        symbols.insert(id.clone(), var);
    }
    let mut links: Vec<&Link> = graph.links.iter().collect();
    links.sort_by(|a, b| {
        (pos[a.from.as_str()], &a.from_socket, pos[a.to.as_str()], &a.to_socket)
            .cmp(&(pos[b.from.as_str()], &b.from_socket, pos[b.to.as_str()], &b.to_socket))
    });
    for l in links {
        statements.push(fill(
            &t.connect,
            &[
                ("from", &symbols[&l.from]),
                ("from_socket", &lit(&l.from_socket)),
                ("to", &symbols[&l.to]),
                ("to_socket", &lit(&l.to_socket)),
            ],
        ));
    }
    for o in &graph.outputs {
        statements.push(fill(&t.output, &[("var", &symbols[o])]));
    }
    Ok(EmittedProgram {
        statements,
        symbol_table: symbols,
    })
}

#[derive(Debug, PartialEq)]
enum Arg {
    Var(String),
    Lit(Value),
}

fn is_var(s: &str) -> bool {
    s.strip_prefix("node_")
        .is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
}

fn parse_args(s: &str) -> Option<Vec<Arg>> {
    let mut out = Vec::new();
    let mut rest = s.trim_start();
    if rest.is_empty() {
        return Some(out);
    }
    loop {
        let end = rest.find([',', ' ', ')']).unwrap_or(rest.len());
        if is_var(&rest[..end]) {
            out.push(Arg::Var(rest[..end].to_string()));
            rest = &rest[end..];
        } else {
            let mut stream = serde_json::Deserializer::from_str(rest).into_iter::<Value>();
            let v = stream.next()?.ok()?;
            let used = stream.byte_offset();
            out.push(Arg::Lit(v));
            rest = &rest[used..];
        }
        rest = rest.trim_start();
        if rest.is_empty() {
            return Some(out);
        }
        rest = rest.strip_prefix(',')?.trim_start();
    }
}

fn call<'a>(line: &'a str, name: &str) -> Option<&'a str> {
    line.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')
}

/// Rebuilds a graph from a program in the instruction dialect.
pub fn ungraph(program: &str) -> Result<NodeGraph, GraphError> {
    let mut graph = NodeGraph::default();
    let mut vars: HashMap<String, usize> = HashMap::new();
    for (i, raw) in program.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let unknown = || GraphError::UnknownInstruction {
            line: line_no,
            text: line.to_string(),
        };
        let lookup = |vars: &HashMap<String, usize>, v: &str| {
            vars.get(v).copied().ok_or_else(|| GraphError::UseBeforeCreate {
                line: line_no,
                var: v.to_string(),
            })
        };
        let str_arg = |a: &Arg| match a {
            Arg::Lit(Value::String(s)) => Some(s.clone()),
            _ => None,
        };
        if let Some((var, rhs)) = line.split_once(" = ").filter(|(v, _)| is_var(v)) {
            let args = call(rhs, "create").and_then(parse_args).ok_or_else(unknown)?;
            let [ty, id] = args.as_slice() else { return Err(unknown()) };
            let (Some(ty), Some(id)) = (str_arg(ty), str_arg(id)) else { return Err(unknown()) };
            if vars.contains_key(var) || graph.nodes.iter().any(|n| n.id == id) {
                return Err(GraphError::DuplicateNodeId(id));
            }
            vars.insert(var.to_string(), graph.nodes.len());
            graph.nodes.push(Node {
                id,
                type_name: ty,
                params: BTreeMap::new(),
            });
        } else if let Some(args) = call(line, "set") {
            let args = parse_args(args).ok_or_else(unknown)?;
            let [Arg::Var(v), p, Arg::Lit(value)] = args.as_slice() else { return Err(unknown()) };
            let p = str_arg(p).ok_or_else(unknown)?;
            let n = lookup(&vars, v)?;
            graph.nodes[n].params.insert(p, value.clone());
        } else if let Some(args) = call(line, "connect") {
            let args = parse_args(args).ok_or_else(unknown)?;
            let [Arg::Var(a), fs, Arg::Var(b), ts] = args.as_slice() else { return Err(unknown()) };
            let (Some(fs), Some(ts)) = (str_arg(fs), str_arg(ts)) else { return Err(unknown()) };
            let (a, b) = (lookup(&vars, a)?, lookup(&vars, b)?);
            graph.links.push(Link {
                from: graph.nodes[a].id.clone(),
                from_socket: fs,
                to: graph.nodes[b].id.clone(),
                to_socket: ts,
            });
        } else if let Some(args) = call(line, "output") {
            let args = parse_args(args).ok_or_else(unknown)?;
            let [Arg::Var(v)] = args.as_slice() else { return Err(unknown()) };
            let n = lookup(&vars, v)?;
            graph.outputs.push(graph.nodes[n].id.clone());
        } else {
            return Err(unknown());
        }
    }
    Ok(graph)
}
