//! File formats: adjacency text and JSON for graphs, JSON for maps and
//! walks, DOT export.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use raagpath_core::cover::Walk;
use raagpath_core::graph::StandardKind;
use raagpath_core::morphism::{cycle_to_path_map, folded_square};
use raagpath_core::{Graph, GraphMap, TotalOrder};
use serde::{Deserialize, Serialize};

/// A malformed input, located by line and column (both 1-based; 0 when the
/// position is unknown).
#[derive(Debug, thiserror::Error)]
#[error("{file}:{line}:{column}: {message}")]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(file: &str, line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            file: file.into(),
            line,
            column,
            message: message.into(),
        }
    }

    fn from_json(file: &str, e: serde_json::Error) -> Self {
        ParseError::new(file, e.line(), e.column(), e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Json,
    Adjacency,
}

impl GraphFormat {
    pub fn from_path(p: &Path) -> Self {
        match p.extension().and_then(|e| e.to_str()) {
            Some("json") => GraphFormat::Json,
            _ => GraphFormat::Adjacency,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            vertices: g.names().to_vec(),
            edges: g
                .edges()
                .map(|(u, v)| (g.name(u).to_string(), g.name(v).to_string()))
                .collect(),
        }
    }

    pub fn into_graph(self) -> raagpath_core::Result<Graph> {
        Graph::new(self.vertices, self.edges)
    }
}

/// Parses adjacency text: one `vertex: neighbor neighbor …` line per vertex,
/// `#` starts a comment. Edges may be listed from either end; every neighbor
/// must be declared on a line of its own.
pub fn parse_adjacency(file: &str, text: &str) -> Result<Graph, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut declared: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut mentions: Vec<(String, String, usize, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(ParseError::new(
                file,
                line,
                col,
                "expected `vertex: neighbors`",
            ));
        };
        let head = content[..colon].trim();
        let head_col = content.len() - content.trim_start().len() + 1;
        if head.is_empty() || head.contains(char::is_whitespace) {
            return Err(ParseError::new(file, line, head_col, "bad vertex name"));
        }
        if declared
            .insert(head.to_string(), (line, head_col))
            .is_some()
        {
            return Err(ParseError::new(
                file,
                line,
                head_col,
                format!("vertex `{head}` declared twice"),
            ));
        }
        names.push(head.to_string());
        let rest = &content[colon + 1..];
        let mut offset = colon + 1;
        for tok in rest.split_whitespace() {
            let at = content[offset..].find(tok).unwrap() + offset;
            offset = at + tok.len();
            if tok == head {
                return Err(ParseError::new(
                    file,
                    line,
                    at + 1,
                    format!("loop at `{head}`"),
                ));
            }
            mentions.push((head.to_string(), tok.to_string(), line, at + 1));
        }
    }
    let mut edges = Vec::new();
    for (a, b, line, col) in mentions {
        if !declared.contains_key(&b) {
            return Err(ParseError::new(
                file,
                line,
                col,
                format!("neighbor `{b}` is not declared"),
            ));
        }
        let e = if a < b { (a, b) } else { (b, a) };
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Graph::new(names, edges).map_err(|e| ParseError::new(file, 0, 0, e.to_string()))
}

pub fn to_adjacency(g: &Graph) -> String {
    let mut s = String::new();
    for v in g.vertices() {
        s.push_str(g.name(v));
        s.push(':');
        for &x in g.neighbors(v) {
            s.push(' ');
            s.push_str(g.name(x));
        }
        s.push('\n');
    }
    s
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&GraphJson::from_graph(g)).expect("graph serializes")
}

pub fn parse_graph_json(file: &str, text: &str) -> Result<Graph, ParseError> {
    let gj: GraphJson = serde_json::from_str(text).map_err(|e| ParseError::from_json(file, e))?;
    gj.into_graph()
        .map_err(|e| ParseError::new(file, 0, 0, e.to_string()))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT. Vertices listed in `highlight` are drawn filled.
pub fn to_dot(g: &Graph, name: &str, highlight: &[usize]) -> String {
    let mut s = format!("graph {} {{\n", quote(name));
    for v in g.vertices() {
        if highlight.contains(&v) {
            let _ = writeln!(s, "  {} [style=filled];", quote(g.name(v)));
        } else {
            let _ = writeln!(s, "  {};", quote(g.name(v)));
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {} -- {};", quote(g.name(u)), quote(g.name(v)));
    }
    s.push_str("}\n");
    s
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))
}

pub fn load_graph_file(path: &Path) -> anyhow::Result<Graph> {
    let text = read(path)?;
    let file = path.display().to_string();
    Ok(match GraphFormat::from_path(path) {
        GraphFormat::Json => parse_graph_json(&file, &text)?,
        GraphFormat::Adjacency => parse_adjacency(&file, &text)?,
    })
}

pub fn save_graph_file(path: &Path, g: &Graph) -> anyhow::Result<()> {
    let text = match GraphFormat::from_path(path) {
        GraphFormat::Json => to_json(g),
        GraphFormat::Adjacency => to_adjacency(g),
    };
    fs::write(path, text)?;
    Ok(())
}

/// Parses a family name: `C5`, `P8`, `K4`, `K2,3`, `G9` (the lower-bound
/// graph `Γ_9`).
pub fn parse_family(spec: &str) -> Option<Graph> {
    let (head, rest) = spec.split_at(spec.find(|c: char| c.is_ascii_digit())?);
    let kind = match (head, rest.split_once(',')) {
        ("K", Some((a, b))) => StandardKind::CompleteBipartite(a.parse().ok()?, b.parse().ok()?),
        ("C", None) => StandardKind::Cycle(rest.parse().ok()?),
        ("P", None) => StandardKind::Path(rest.parse().ok()?),
        ("K", None) => StandardKind::Complete(rest.parse().ok()?),
        ("G", None) => return Graph::lowerbound(rest.parse().ok()?).ok(),
        _ => return None,
    };
    Graph::standard(kind).ok()
}

/// A graph from a file path or a family name.
pub fn load_graph(spec: &str) -> anyhow::Result<Graph> {
    let p = PathBuf::from(spec);
    if p.exists() {
        return load_graph_file(&p);
    }
    parse_family(spec)
        .ok_or_else(|| anyhow::anyhow!("`{spec}` is neither a file nor a graph family"))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    Inline(GraphJson),
    File(String),
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MapJson {
    pub domain: GraphRef,
    pub codomain: GraphRef,
    pub assignment: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain_order: Option<Vec<String>>,
}

/// A map together with the product order from its file, if any.
pub struct LoadedMap {
    pub map: GraphMap,
    pub domain_order: Option<TotalOrder>,
}

pub fn parse_map_json(file: &str, text: &str, dir: &Path) -> anyhow::Result<LoadedMap> {
    let mj: MapJson = serde_json::from_str(text).map_err(|e| ParseError::from_json(file, e))?;
    let resolve = |r: GraphRef| -> anyhow::Result<Graph> {
        match r {
            GraphRef::Inline(g) => Ok(g.into_graph()?),
            GraphRef::File(f) => {
                let p = dir.join(&f);
                if p.exists() {
                    load_graph_file(&p)
                } else {
                    load_graph(&f)
                }
            }
        }
    };
    let domain = resolve(mj.domain)?;
    let codomain = resolve(mj.codomain)?;
    let pairs: Vec<(String, String)> = mj.assignment.into_iter().collect();
    let map = GraphMap::from_names(domain, codomain, &pairs)?;
    let domain_order = match mj.domain_order {
        Some(names) => Some(TotalOrder::from_names(map.domain(), &names)?),
        None => None,
    };
    Ok(LoadedMap { map, domain_order })
}

pub fn map_to_json(f: &GraphMap, order: Option<&TotalOrder>) -> String {
    let d = f.domain();
    let mj = MapJson {
        domain: GraphRef::Inline(GraphJson::from_graph(d)),
        codomain: GraphRef::Inline(GraphJson::from_graph(f.codomain())),
        assignment: d
            .vertices()
            .map(|v| {
                (
                    d.name(v).to_string(),
                    f.codomain().name(f.image(v)).to_string(),
                )
            })
            .collect(),
        domain_order: order.map(|o| {
            o.sequence()
                .iter()
                .map(|&v| d.name(v).to_string())
                .collect()
        }),
    };
    serde_json::to_string_pretty(&mj).expect("map serializes")
}

/// A map from a file or a built-in: `phi:N,M` (`P_N → C_M`) or
/// `folded-square`.
pub fn load_map(spec: &str) -> anyhow::Result<LoadedMap> {
    if let Some(rest) = spec.strip_prefix("phi:") {
        let (n, m) = rest
            .split_once(',')
            .ok_or_else(|| anyhow::anyhow!("expected phi:N,M"))?;
        let map = cycle_to_path_map(n.trim().parse()?, m.trim().parse()?)?;
        return Ok(LoadedMap {
            map,
            domain_order: None,
        });
    }
    if spec == "folded-square" {
        return Ok(LoadedMap {
            map: folded_square(),
            domain_order: None,
        });
    }
    let p = PathBuf::from(spec);
    let text = read(&p)?;
    let dir = p.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_map_json(&p.display().to_string(), &text, &dir)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WalkJson {
    pub base: String,
    #[serde(default)]
    pub steps: Vec<String>,
}

impl WalkJson {
    pub fn from_walk(g: &Graph, w: &Walk) -> Self {
        WalkJson {
            base: g.name(w.base()).into(),
            steps: w.steps().iter().map(|&s| g.name(s).to_string()).collect(),
        }
    }

    pub fn to_walk(&self, g: &Graph) -> raagpath_core::Result<Walk> {
        Walk::from_names(g, &self.base, &self.steps)
    }
}

/// A list of walks, used for base sets `F`.
pub fn load_walks(path: &Path, g: &Graph) -> anyhow::Result<Vec<Walk>> {
    let text = read(path)?;
    let ws: Vec<WalkJson> = serde_json::from_str(&text)
        .map_err(|e| ParseError::from_json(&path.display().to_string(), e))?;
    Ok(ws.iter().map(|w| w.to_walk(g)).collect::<Result<_, _>>()?)
}
