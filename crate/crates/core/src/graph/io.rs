//! Edge-list text format.
//!
//! ```text
//! # comment
//! u v [weight] [edge_label]
//! u                      (declares a vertex with no edges)
//! ```
//!
//! A companion labels file holds `v node_label` lines. Original ids are
//! non-negative integers; they are compacted to `0..n` in ascending order.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{Graph, GraphBuilder, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    pub directed: bool,
    pub weighted: bool,
    pub labeled: bool,
    pub labels_path: Option<PathBuf>,
}

pub fn load_edge_list(path: &Path, options: &LoadOptions) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    let labels = match &options.labels_path {
        Some(p) => Some(std::fs::read_to_string(p)?),
        None => None,
    };
    parse_edge_list(&text, labels.as_deref(), options)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn parse_id(tok: &str, line: usize) -> Result<u64> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        reason: format!("invalid vertex id {tok:?}"),
    })
}

pub fn parse_edge_list(text: &str, labels: Option<&str>, options: &LoadOptions) -> Result<Graph> {
    let expected = 2 + options.weighted as usize + options.labeled as usize;
    let mut raw_edges = Vec::new();
    let mut ids = BTreeSet::new();
    let mut seen = HashSet::new();

    for (line, toks) in content_lines(text) {
        if toks.len() == 1 {
            ids.insert(parse_id(toks[0], line)?);
            continue;
        }
        if toks.len() != expected {
            return Err(Error::Parse {
                line,
                reason: format!("expected {expected} tokens, found {}", toks.len()),
            });
        }
        let u = parse_id(toks[0], line)?;
        let v = parse_id(toks[1], line)?;
        if u == v {
            return Err(Error::Parse {
                line,
                reason: format!("self-loop at vertex {u}"),
            });
        }
        let weight = if options.weighted {
            Some(toks[2].parse::<i64>().map_err(|_| Error::Parse {
                line,
                reason: format!("weight {:?} is not a 64-bit integer", toks[2]),
            })?)
        } else {
            None
        };
        let label = options.labeled.then(|| toks[expected - 1].to_string());
        let key = if options.directed || u < v {
            (u, v)
        } else {
            (v, u)
        };
        if !seen.insert(key) {
            return Err(Error::DuplicateEdge {
                u: u.to_string(),
                v: v.to_string(),
                line,
            });
        }
        ids.insert(u);
        ids.insert(v);
        raw_edges.push((u, v, weight, label));
    }

    let id_map: Vec<u64> = ids.into_iter().collect();
    let dense: BTreeMap<u64, VertexId> = id_map
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, i as VertexId))
        .collect();

    let mut b = GraphBuilder::new(id_map.len(), options.directed);
    for (u, v, w, l) in raw_edges {
        b.push(dense[&u], dense[&v], w, l);
    }

    if let Some(text) = labels {
        let mut node_labels: Vec<Option<String>> = vec![None; id_map.len()];
        for (line, toks) in content_lines(text) {
            if toks.len() != 2 {
                return Err(Error::Parse {
                    line,
                    reason: format!("label line needs 2 tokens, found {}", toks.len()),
                });
            }
            let id = parse_id(toks[0], line)?;
            let Some(&v) = dense.get(&id) else {
                return Err(Error::DanglingLabel {
                    vertex: toks[0].to_string(),
                    line,
                });
            };
            node_labels[v as usize] = Some(toks[1].to_string());
        }
        if let Some(v) = node_labels.iter().position(Option::is_none) {
            return Err(Error::InvalidGraph(format!(
                "vertex {} has no node label",
                id_map[v]
            )));
        }
        b.node_labels(node_labels.into_iter().map(Option::unwrap).collect());
    }

    b.build()?.with_id_map(id_map)
}

/// Serializes `g` to edge-list text plus, when labeled, labels-file text.
pub fn save_edge_list(g: &Graph) -> (String, Option<String>) {
    let mut out = String::new();
    let mut touched = vec![false; g.n()];
    for (u, v, w, l) in g.edges() {
        touched[u as usize] = true;
        touched[v as usize] = true;
        let _ = write!(out, "{} {}", g.original_id(u), g.original_id(v));
        if let Some(w) = w {
            let _ = write!(out, " {w}");
        }
        if let Some(l) = l {
            let _ = write!(out, " {l}");
        }
        out.push('\n');
    }
    for v in g.vertices().filter(|&v| !touched[v as usize]) {
        let _ = writeln!(out, "{}", g.original_id(v));
    }
    let labels = g.has_node_labels().then(|| {
        g.vertices()
            .map(|v| {
                format!(
                    "{} {}\n",
                    g.original_id(v),
                    g.node_label(v).unwrap_or_default()
                )
            })
            .collect()
    });
    (out, labels)
}
