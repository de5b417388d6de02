//! Immutable adjacency-list graphs with dense vertex ids.
//!
//! Adjacency is stored in compressed sparse row form with every vertex's
//! neighbor list sorted ascending by neighbor id. Undirected graphs store
//! each edge as two arcs with equal weight and label. Directed graphs also
//! keep the reverse (in-neighbor) adjacency.

mod generate;
mod io;

pub use generate::{generate, Family, GraphSpec, WeightSpec};
pub use io::{load_edge_list, parse_edge_list, save_edge_list, LoadOptions};

use crate::error::{Error, Result};

pub type VertexId = u32;

/// One outgoing arc as seen from its tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc<'a> {
    pub target: VertexId,
    pub weight: Option<i64>,
    pub label: Option<&'a str>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    weights: Option<Vec<i64>>,
    edge_labels: Option<Vec<String>>,
    in_offsets: Vec<usize>,
    in_sources: Vec<VertexId>,
    node_labels: Option<Vec<String>>,
    id_map: Vec<u64>,
    m: usize,
}

impl Graph {
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of edges; an undirected edge counts once.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn has_edge_labels(&self) -> bool {
        self.edge_labels.is_some()
    }

    pub fn has_node_labels(&self) -> bool {
        self.node_labels.is_some()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.n() as VertexId
    }

    /// Sorted out-neighbors (all neighbors for undirected graphs).
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Sorted in-neighbors (all neighbors for undirected graphs).
    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        if !self.directed {
            return self.neighbors(v);
        }
        let v = v as usize;
        &self.in_sources[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    /// Index range of `v`'s arcs in the global arc numbering.
    pub fn arc_range(&self, v: VertexId) -> std::ops::Range<usize> {
        let v = v as usize;
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn arc_target(&self, arc: usize) -> VertexId {
        self.targets[arc]
    }

    pub fn arc_weight(&self, arc: usize) -> Option<i64> {
        self.weights.as_ref().map(|w| w[arc])
    }

    pub fn arc_label(&self, arc: usize) -> Option<&str> {
        self.edge_labels.as_ref().map(|l| l[arc].as_str())
    }

    /// Global arc index of `u -> v`, if present.
    pub fn find_arc(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let start = self.offsets[u as usize];
        self.neighbors(u).binary_search(&v).ok().map(|i| start + i)
    }

    pub fn arcs(&self, v: VertexId) -> impl Iterator<Item = Arc<'_>> + '_ {
        self.arc_range(v).map(move |a| Arc {
            target: self.targets[a],
            weight: self.arc_weight(a),
            label: self.arc_label(a),
        })
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_neighbors(v).len()
    }

    /// Degree used for balance ratios: d(v) for undirected graphs,
    /// d_in(v) + d_out(v) for directed graphs.
    pub fn balance_degree(&self, v: VertexId) -> usize {
        if self.directed {
            self.out_degree(v) + self.in_degree(v)
        } else {
            self.out_degree(v)
        }
    }

    pub fn node_label(&self, v: VertexId) -> Option<&str> {
        self.node_labels.as_ref().map(|l| l[v as usize].as_str())
    }

    /// Original id of a dense vertex id.
    pub fn original_id(&self, v: VertexId) -> u64 {
        self.id_map[v as usize]
    }

    pub fn id_map(&self) -> &[u64] {
        &self.id_map
    }

    /// Each edge once, in arc order: `(u, v, weight, label)` with `u < v` for
    /// undirected graphs.
    pub fn edges(
        &self,
    ) -> impl Iterator<Item = (VertexId, VertexId, Option<i64>, Option<&str>)> + '_ {
        self.vertices().flat_map(move |u| {
            self.arc_range(u).filter_map(move |a| {
                let v = self.targets[a];
                if !self.directed && v < u {
                    None
                } else {
                    Some((u, v, self.arc_weight(a), self.arc_label(a)))
                }
            })
        })
    }

    pub fn with_id_map(mut self, id_map: Vec<u64>) -> Result<Self> {
        if id_map.len() != self.n() {
            return Err(Error::InvalidGraph(format!(
                "id map has {} entries for {} vertices",
                id_map.len(),
                self.n()
            )));
        }
        self.id_map = id_map;
        Ok(self)
    }

    pub fn with_node_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidGraph(format!(
                "{} node labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.node_labels = Some(labels);
        Ok(self)
    }
}

#[derive(Debug, Clone)]
struct PendingEdge {
    u: VertexId,
    v: VertexId,
    weight: Option<i64>,
    label: Option<String>,
}

/// Collects edges and validates them into a [`Graph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    directed: bool,
    edges: Vec<PendingEdge>,
    node_labels: Option<Vec<String>>,
}

impl GraphBuilder {
    pub fn new(n: usize, directed: bool) -> Self {
        Self {
            n,
            directed,
            edges: Vec::new(),
            node_labels: None,
        }
    }

    pub fn edge(&mut self, u: VertexId, v: VertexId) -> &mut Self {
        self.push(u, v, None, None)
    }

    pub fn weighted_edge(&mut self, u: VertexId, v: VertexId, w: i64) -> &mut Self {
        self.push(u, v, Some(w), None)
    }

    pub fn push(
        &mut self,
        u: VertexId,
        v: VertexId,
        weight: Option<i64>,
        label: Option<String>,
    ) -> &mut Self {
        self.edges.push(PendingEdge {
            u,
            v,
            weight,
            label,
        });
        self
    }

    pub fn node_labels(&mut self, labels: Vec<String>) -> &mut Self {
        self.node_labels = Some(labels);
        self
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn build(&self) -> Result<Graph> {
        let n = self.n;
        if n > VertexId::MAX as usize {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceed the id space"
            )));
        }
        let weighted = self.edges.iter().any(|e| e.weight.is_some());
        let labeled = self.edges.iter().any(|e| e.label.is_some());
        if weighted && self.edges.iter().any(|e| e.weight.is_none()) {
            return Err(Error::InvalidGraph(
                "some edges are weighted and some are not".into(),
            ));
        }
        if labeled && self.edges.iter().any(|e| e.label.is_none()) {
            return Err(Error::InvalidGraph(
                "some edges are labeled and some are not".into(),
            ));
        }

        let mut arcs: Vec<(VertexId, VertexId, Option<i64>, Option<&str>)> =
            Vec::with_capacity(self.edges.len() * if self.directed { 1 } else { 2 });
        for e in &self.edges {
            if e.u as usize >= n || e.v as usize >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) out of range for {n} vertices",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {}", e.u)));
            }
            arcs.push((e.u, e.v, e.weight, e.label.as_deref()));
            if !self.directed {
                arcs.push((e.v, e.u, e.weight, e.label.as_deref()));
            }
        }
        arcs.sort_by_key(|a| (a.0, a.1));
        if let Some(w) = arcs
            .windows(2)
            .find(|w| w[0].0 == w[1].0 && w[0].1 == w[1].1)
        {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }

        let mut offsets = vec![0usize; n + 1];
        for a in &arcs {
            offsets[a.0 as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets: Vec<VertexId> = arcs.iter().map(|a| a.1).collect();
        let weights = weighted.then(|| arcs.iter().map(|a| a.2.unwrap_or(0)).collect());
        let edge_labels = labeled.then(|| {
            arcs.iter()
                .map(|a| a.3.unwrap_or_default().to_string())
                .collect()
        });

        let (in_offsets, in_sources) = if self.directed {
            let mut rev: Vec<(VertexId, VertexId)> = arcs.iter().map(|a| (a.1, a.0)).collect();
            rev.sort_unstable();
            let mut in_offsets = vec![0usize; n + 1];
            for r in &rev {
                in_offsets[r.0 as usize + 1] += 1;
            }
            for i in 0..n {
                in_offsets[i + 1] += in_offsets[i];
            }
            (in_offsets, rev.into_iter().map(|r| r.1).collect())
        } else {
            (Vec::new(), Vec::new())
        };

        if let Some(labels) = &self.node_labels {
            if labels.len() != n {
                return Err(Error::InvalidGraph(format!(
                    "{} node labels for {n} vertices",
                    labels.len()
                )));
            }
        }

        Ok(Graph {
            directed: self.directed,
            offsets,
            targets,
            weights,
            edge_labels,
            in_offsets,
            in_sources,
            node_labels: self.node_labels.clone(),
            id_map: (0..n as u64).collect(),
            m: self.edges.len(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    pub max: usize,
    pub sum: usize,
}

/// Per-vertex degree (out-degree for directed graphs), maximum and sum.
pub fn degree_stats(g: &Graph) -> DegreeStats {
    let degrees: Vec<usize> = g.vertices().map(|v| g.out_degree(v)).collect();
    let max = degrees.iter().copied().max().unwrap_or(0);
    let sum = degrees.iter().sum();
    DegreeStats { degrees, max, sum }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_sorts_and_symmetrizes() {
        let g = GraphBuilder::new(4, false)
            .edge(2, 0)
            .edge(0, 1)
            .edge(3, 0)
            .build()
            .unwrap();
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        assert_eq!(g.neighbors(2), &[0]);
        assert_eq!(g.m(), 3);
        assert_eq!(g.arc_count(), 6);
    }

    #[test]
    fn builder_rejects_duplicates_and_loops() {
        assert!(GraphBuilder::new(2, false)
            .edge(0, 1)
            .edge(1, 0)
            .build()
            .is_err());
        assert!(GraphBuilder::new(2, true).edge(0, 0).build().is_err());
        assert!(GraphBuilder::new(2, true).edge(0, 2).build().is_err());
        // opposite arcs are distinct in a digraph
        assert!(GraphBuilder::new(2, true)
            .edge(0, 1)
            .edge(1, 0)
            .build()
            .is_ok());
    }

    #[test]
    fn directed_keeps_in_adjacency() {
        let g = GraphBuilder::new(3, true)
            .edge(0, 2)
            .edge(1, 2)
            .edge(2, 0)
            .build()
            .unwrap();
        assert_eq!(g.in_neighbors(2), &[0, 1]);
        assert_eq!(g.in_neighbors(0), &[2]);
        assert_eq!(g.balance_degree(2), 3);
    }

    #[test]
    fn star_degree_stats() {
        let mut b = GraphBuilder::new(5, false);
        for leaf in 1..5 {
            b.edge(0, leaf);
        }
        let s = degree_stats(&b.build().unwrap());
        assert_eq!(s.degrees, vec![4, 1, 1, 1, 1]);
        assert_eq!(s.max, 4);
        assert_eq!(s.sum, 8);
    }

    #[test]
    fn empty_degree_stats() {
        let s = degree_stats(&GraphBuilder::new(0, false).build().unwrap());
        assert!(s.degrees.is_empty());
        assert_eq!(s.sum, 0);
    }

    #[test]
    fn find_arc_and_weights() {
        let g = GraphBuilder::new(3, false)
            .weighted_edge(0, 1, 4)
            .weighted_edge(1, 2, 9)
            .build()
            .unwrap();
        let a = g.find_arc(2, 1).unwrap();
        assert_eq!(g.arc_weight(a), Some(9));
        assert!(g.find_arc(0, 2).is_none());
        let edges: Vec<_> = g.edges().map(|e| (e.0, e.1, e.2)).collect();
        assert_eq!(edges, vec![(0, 1, Some(4)), (1, 2, Some(9))]);
    }
}
