use std::fmt;
use std::fs;
use std::path::Path;

use catlin::generators::{gnp, named, random_triangle_free_subcubic};
use catlin::io::{decode_graph6, encode_graph6, parse_dimacs, parse_edge_list, write_dimacs, write_edge_list};
use catlin::Graph;
use clap::{Args, ValueEnum};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    G6,
    Col,
    Json,
    Edges,
}

impl Format {
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") => Format::G6,
            Some("col" | "dimacs") => Format::Col,
            Some("json") => Format::Json,
            _ => Format::Edges,
        }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Read the graph from a file (.g6, .col, .json, anything else: edge list)
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<String>,
    /// Use a built-in graph (petersen, pc5, c7, k4, k3,3, ...)
    #[arg(long)]
    pub named: Option<String>,
    /// Generate a graph: "gnp:N,P" or "tfree:N"
    #[arg(long, value_name = "SPEC")]
    pub gen: Option<String>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[command(flatten)]
    pub source: Source,
    /// Seed for --gen
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Format of --in; inferred from the extension when omitted
    #[arg(long, value_enum)]
    pub from: Option<Format>,
}

/// Where a graph came from, echoed in run records.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Descriptor {
    File { path: String },
    Named { name: String },
    Generated { spec: String, seed: u64 },
}

#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn err(msg: impl fmt::Display) -> InputError {
    InputError(msg.to_string())
}

impl InputArgs {
    pub fn load(&self) -> Result<(Graph, Descriptor), InputError> {
        let s = &self.source;
        if let Some(path) = &s.input {
            let format = self.from.unwrap_or_else(|| Format::from_path(Path::new(path)));
            let text = fs::read_to_string(path).map_err(|e| err(format!("{path}: {e}")))?;
            let g = parse(&text, format).map_err(|e| err(format!("{path}: {e}")))?;
            return Ok((g, Descriptor::File { path: path.clone() }));
        }
        if let Some(name) = &s.named {
            let g = named(name).map_err(err)?;
            return Ok((g, Descriptor::Named { name: name.clone() }));
        }
        let spec = s.gen.as_deref().expect("clap requires one source");
        let g = generate(spec, self.seed)?;
        Ok((
            g,
            Descriptor::Generated {
                spec: spec.to_string(),
                seed: self.seed,
            },
        ))
    }
}

fn generate(spec: &str, seed: u64) -> Result<Graph, InputError> {
    let bad = || err(format!("bad generator spec {spec:?}, expected gnp:N,P or tfree:N"));
    let (kind, args) = spec.split_once(':').ok_or_else(bad)?;
    match kind {
        "gnp" => {
            let (n, p) = args.split_once(',').ok_or_else(bad)?;
            let n = n.trim().parse().map_err(|_| bad())?;
            let p = p.trim().parse().map_err(|_| bad())?;
            gnp(n, p, seed).map_err(err)
        }
        "tfree" => Ok(random_triangle_free_subcubic(
            args.trim().parse().map_err(|_| bad())?,
            seed,
        )),
        _ => Err(bad()),
    }
}

pub fn parse(text: &str, format: Format) -> Result<Graph, String> {
    match format {
        Format::G6 => decode_graph6(text.trim()).map_err(|e| e.to_string()),
        Format::Col => {
            let parsed = parse_dimacs(text).map_err(|e| e.to_string())?;
            for w in &parsed.warnings {
                eprintln!("warning: {w}");
            }
            Ok(parsed.graph)
        }
        Format::Json => serde_json::from_str(text).map_err(|e| e.to_string()),
        Format::Edges => parse_edge_list(text).map_err(|e| e.to_string()),
    }
}

pub fn render(g: &Graph, format: Format) -> Result<String, String> {
    match format {
        Format::G6 => encode_graph6(g).map(|s| s + "\n").map_err(|e| e.to_string()),
        Format::Col => Ok(write_dimacs(g)),
        Format::Json => serde_json::to_string(g).map(|s| s + "\n").map_err(|e| e.to_string()),
        Format::Edges => Ok(write_edge_list(g)),
    }
}
