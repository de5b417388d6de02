//! Single-threaded reference algorithms with operation counters.
//!
//! Each oracle returns its output in the same shape as the matching
//! vertex-centric extractor, plus the number of scalar operations it
//! performed (vertex visits, edge scans, heap operations, comparisons in
//! sorting). Practical stand-ins are used where the asymptotically best
//! algorithm is impractical: binary-heap Dijkstra, Kruskal with sorting and
//! a worklist fixpoint for graph simulation.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult<T> {
    pub output: T,
    pub op_count: u64,
}

/// Component label of each vertex: the smallest vertex id in its component.
pub fn bfs_components(g: &Graph) -> OracleResult<Vec<VertexId>> {
    let n = g.n();
    let mut label = vec![VertexId::MAX; n];
    let mut ops = 0u64;
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        ops += 1;
        if label[s as usize] != VertexId::MAX {
            continue;
        }
        label[s as usize] = s;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            ops += 1;
            let nbrs = g.neighbors(v).iter().chain(if g.is_directed() {
                g.in_neighbors(v)
            } else {
                &[]
            });
            for &u in nbrs {
                ops += 1;
                if label[u as usize] == VertexId::MAX {
                    label[u as usize] = s;
                    queue.push_back(u);
                }
            }
        }
    }
    OracleResult {
        output: label,
        op_count: ops,
    }
}

/// Hop distances from `s` along out-edges; `u32::MAX` when unreachable.
fn bfs_from(g: &Graph, s: VertexId, ops: &mut u64) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.n()];
    dist[s as usize] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        *ops += 1;
        for &u in g.neighbors(v) {
            *ops += 1;
            if dist[u as usize] == u32::MAX {
                dist[u as usize] = dist[v as usize] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AllPairs {
    pub diameter: u32,
    pub eccentricities: Vec<u32>,
    /// `distances[v][u]` = hops from `u` to `v`; present when requested.
    pub distances: Option<Vec<Vec<u32>>>,
}

/// BFS from every vertex. Errors on disconnected input.
pub fn bfs_all_pairs(g: &Graph, keep_matrix: bool) -> Result<OracleResult<AllPairs>> {
    let mut ops = 0u64;
    let n = g.n();
    let mut ecc = vec![0u32; n];
    let mut matrix = keep_matrix.then(|| vec![vec![0u32; n]; n]);
    for s in g.vertices() {
        let dist = bfs_from(g, s, &mut ops);
        if dist.contains(&u32::MAX) {
            return Err(Error::Disconnected);
        }
        ecc[s as usize] = dist.iter().copied().max().unwrap_or(0);
        if let Some(m) = matrix.as_mut() {
            // distances are symmetric on undirected graphs; store by receiver
            for (v, &d) in dist.iter().enumerate() {
                m[v][s as usize] = d;
            }
        }
    }
    let diameter = ecc.iter().copied().max().unwrap_or(0);
    Ok(OracleResult {
        output: AllPairs {
            diameter,
            eccentricities: ecc,
            distances: matrix,
        },
        op_count: ops,
    })
}

/// Checks that `g` is an undirected tree containing `root`.
pub fn check_tree(g: &Graph, root: VertexId) -> Result<()> {
    if g.is_directed() {
        return Err(Error::NotATree("graph is directed".into()));
    }
    if (root as usize) >= g.n() {
        return Err(Error::InvalidParameter(format!(
            "root {root} is not a vertex"
        )));
    }
    if g.m() + 1 != g.n() {
        return Err(Error::NotATree(format!(
            "{} vertices but {} edges",
            g.n(),
            g.m()
        )));
    }
    let mut ops = 0;
    if bfs_from(g, root, &mut ops).contains(&u32::MAX) {
        return Err(Error::NotATree("graph is not connected".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DfsSuite {
    /// Arc indices in tour order, starting with `(root, first(root))`.
    pub tour: Vec<usize>,
    /// Successor of every arc in the circuit, indexed by arc.
    pub successor: Vec<usize>,
    pub pre: Vec<u32>,
    pub post: Vec<u32>,
}

/// Depth-first traversal over sorted adjacency. At a vertex entered from
/// `parent`, children are taken cyclically starting just after `parent` in
/// the sorted neighbor list; the root starts at its first neighbor.
pub fn dfs_suite(t: &Graph, root: VertexId) -> Result<OracleResult<DfsSuite>> {
    check_tree(t, root)?;
    let n = t.n();
    let mut ops = 0u64;
    let mut pre = vec![0u32; n];
    let mut post = vec![0u32; n];
    let mut tour = Vec::with_capacity(2 * n.saturating_sub(1));
    let (mut pre_next, mut post_next) = (0u32, 0u32);

    // (vertex, arc we entered by (into vertex), start offset, visited count)
    struct Frame {
        v: VertexId,
        entry: Option<usize>,
        start: usize,
        step: usize,
    }
    pre[root as usize] = pre_next;
    pre_next += 1;
    let mut stack = vec![Frame {
        v: root,
        entry: None,
        start: 0,
        step: 0,
    }];
    while let Some(top) = stack.last_mut() {
        ops += 1;
        let v = top.v;
        let d = t.out_degree(v);
        let children = if top.entry.is_some() { d - 1 } else { d };
        if top.step < children {
            let idx = (top.start + top.step) % d;
            top.step += 1;
            let arc = t.arc_range(v).start + idx;
            let c = t.arc_target(arc);
            tour.push(arc);
            pre[c as usize] = pre_next;
            pre_next += 1;
            let parent_pos = t
                .neighbors(c)
                .binary_search(&v)
                .expect("tree arcs are symmetric");
            ops += 1;
            stack.push(Frame {
                v: c,
                entry: Some(arc),
                start: (parent_pos + 1) % t.out_degree(c),
                step: 0,
            });
        } else {
            post[v as usize] = post_next;
            post_next += 1;
            let entry = top.entry;
            stack.pop();
            if let (Some(arc), Some(parent)) = (entry, stack.last()) {
                tour.push(t.find_arc(v, parent.v).expect("reverse arc"));
                let _ = arc;
            }
        }
    }
    let mut successor = vec![0usize; t.arc_count()];
    for i in 0..tour.len() {
        successor[tour[i]] = tour[(i + 1) % tour.len()];
        ops += 1;
    }
    Ok(OracleResult {
        output: DfsSuite {
            tour,
            successor,
            pre,
            post,
        },
        op_count: ops,
    })
}

/// Power iteration with the same update, dangling rule and stopping rule as
/// the vertex program: `K` iterations, or earlier once the L1 change of the
/// previous iteration drops below `tol` (when `tol > 0`).
pub fn power_iteration(g: &Graph, alpha: f64, k: usize, tol: f64) -> OracleResult<Vec<f64>> {
    let n = g.n();
    let mut ops = 0u64;
    if n == 0 {
        return OracleResult {
            output: Vec::new(),
            op_count: 0,
        };
    }
    let nf = n as f64;
    let mut rank = vec![1.0 / nf; n];
    let mut delta = f64::INFINITY;
    for iter in 1..=k {
        if tol > 0.0 && iter >= 2 && delta < tol {
            break;
        }
        let dangling: f64 = g
            .vertices()
            .filter(|&v| g.out_degree(v) == 0)
            .map(|v| rank[v as usize])
            .sum();
        let mut incoming = vec![0.0f64; n];
        for u in g.vertices() {
            let d = g.out_degree(u);
            ops += 1;
            for &v in g.neighbors(u) {
                incoming[v as usize] += rank[u as usize] / d as f64;
                ops += 1;
            }
        }
        delta = 0.0;
        for v in 0..n {
            let next = (1.0 - alpha) / nf + alpha * (incoming[v] + dangling / nf);
            delta += (next - rank[v]).abs();
            rank[v] = next;
            ops += 1;
        }
    }
    OracleResult {
        output: rank,
        op_count: ops,
    }
}

/// Binary-heap Dijkstra; `u64::MAX` marks unreachable vertices.
pub fn dijkstra(g: &Graph, source: VertexId) -> Result<OracleResult<Vec<u64>>> {
    if (source as usize) >= g.n() {
        return Err(Error::InvalidParameter(format!(
            "source {source} is not a vertex"
        )));
    }
    if let Some((u, v, Some(w), _)) = g.edges().find(|e| e.2.is_some_and(|w| w < 0)) {
        return Err(Error::NegativeWeight { u, v, weight: w });
    }
    let mut ops = 0u64;
    let mut dist = vec![u64::MAX; g.n()];
    dist[source as usize] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, source))]);
    while let Some(Reverse((d, v))) = heap.pop() {
        ops += 1;
        if d > dist[v as usize] {
            continue;
        }
        for a in g.arc_range(v) {
            ops += 1;
            let u = g.arc_target(a);
            let nd = d + g.arc_weight(a).unwrap_or(1) as u64;
            if nd < dist[u as usize] {
                dist[u as usize] = nd;
                heap.push(Reverse((nd, u)));
            }
        }
    }
    Ok(OracleResult {
        output: dist,
        op_count: ops,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningForest {
    /// `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(VertexId, VertexId)>,
    pub total_weight: i64,
    /// More than one tree was needed.
    pub is_forest: bool,
}

/// Canonical edge order: weight, then smaller endpoint, then larger endpoint.
pub fn canonical_key(w: i64, u: VertexId, v: VertexId) -> (i64, VertexId, VertexId) {
    (w, u.min(v), u.max(v))
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize, ops: &mut u64) -> usize {
        while self.parent[x] != x {
            *ops += 1;
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize, ops: &mut u64) -> bool {
        let (ra, rb) = (self.find(a, ops), self.find(b, ops));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Kruskal under the canonical edge order.
pub fn kruskal(g: &Graph) -> OracleResult<SpanningForest> {
    let mut edges: Vec<(i64, VertexId, VertexId)> = g
        .edges()
        .map(|(u, v, w, _)| canonical_key(w.unwrap_or(1), u, v))
        .collect();
    let m = edges.len().max(1) as f64;
    let mut ops = (m * m.log2().max(1.0)) as u64;
    edges.sort_unstable();
    let mut ds = DisjointSets::new(g.n());
    let mut out = Vec::new();
    let mut total = 0i64;
    for (w, u, v) in edges {
        ops += 1;
        if ds.union(u as usize, v as usize, &mut ops) {
            out.push((u, v));
            total += w;
        }
    }
    out.sort_unstable();
    let is_forest = g.n() > 0 && out.len() + 1 < g.n();
    OracleResult {
        output: SpanningForest {
            edges: out,
            total_weight: total,
            is_forest,
        },
        op_count: ops,
    }
}

/// Repeated lexicographically-first MIS: class `c` is the greedy MIS (in
/// ascending id order) of the vertices left uncolored by classes `< c`.
pub fn greedy_mis_coloring(g: &Graph) -> OracleResult<Vec<u32>> {
    let n = g.n();
    let mut color = vec![u32::MAX; n];
    let mut ops = 0u64;
    let mut remaining = n;
    let mut c = 0u32;
    while remaining > 0 {
        for v in g.vertices() {
            ops += 1;
            if color[v as usize] != u32::MAX {
                continue;
            }
            let blocked = g.neighbors(v).iter().any(|&u| {
                ops += 1;
                color[u as usize] == c
            });
            if !blocked {
                color[v as usize] = c;
                remaining -= 1;
            }
        }
        c += 1;
    }
    OracleResult {
        output: color,
        op_count: ops,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simulation {
    /// `(query vertex, data vertex)` pairs, sorted; empty when not simulated.
    pub relation: Vec<(VertexId, VertexId)>,
    pub simulated: bool,
}

/// Coarsest simulation by repeated refinement until nothing changes.
pub fn simulation_fixpoint(data: &Graph, query: &Graph) -> Result<OracleResult<Simulation>> {
    crate::algorithms::simulation::check_labels(data, query)?;
    let mut ops = 0u64;
    let mut sim: Vec<Vec<bool>> = query
        .vertices()
        .map(|q| {
            data.vertices()
                .map(|v| data.node_label(v) == query.node_label(q))
                .collect()
        })
        .collect();
    ops += (query.n() * data.n()) as u64;
    let mut changed = true;
    while changed {
        changed = false;
        for q in query.vertices() {
            for v in data.vertices() {
                if !sim[q as usize][v as usize] {
                    continue;
                }
                ops += 1;
                let ok = query.arc_range(q).all(|qa| {
                    let q2 = query.arc_target(qa) as usize;
                    let ql = query.arc_label(qa);
                    data.arc_range(v).any(|da| {
                        ops += 1;
                        data.arc_label(da) == ql && sim[q2][data.arc_target(da) as usize]
                    })
                });
                if !ok {
                    sim[q as usize][v as usize] = false;
                    changed = true;
                }
            }
        }
    }
    let simulated = sim.iter().all(|row| row.iter().any(|&b| b));
    let relation = if simulated {
        query
            .vertices()
            .flat_map(|q| {
                let row = &sim[q as usize];
                data.vertices()
                    .filter(move |&v| row[v as usize])
                    .map(move |v| (q, v))
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(OracleResult {
        output: Simulation {
            relation,
            simulated,
        },
        op_count: ops,
    })
}

/// Prefix sums over a predecessor-linked list: `sum(v)` is the total of `val`
/// from `v` back to the head.
pub fn prefix_sum(vals: &[i64], preds: &[Option<VertexId>]) -> Result<OracleResult<Vec<i64>>> {
    let n = vals.len();
    if preds.len() != n {
        return Err(Error::InvalidParameter(
            "vals and preds differ in length".into(),
        ));
    }
    let mut succ = vec![None; n];
    let mut head = None;
    for (v, p) in preds.iter().enumerate() {
        match *p {
            None if head.is_none() => head = Some(v),
            None => {
                return Err(Error::InvalidParameter(
                    "list has more than one head".into(),
                ))
            }
            Some(p) if (p as usize) < n && succ[p as usize].is_none() => succ[p as usize] = Some(v),
            Some(p) => {
                return Err(Error::InvalidParameter(format!(
                    "bad predecessor link {p} at {v}"
                )))
            }
        }
    }
    let mut sums = vec![0i64; n];
    let mut ops = 0u64;
    let mut cur = head;
    let mut acc = 0i64;
    let mut visited = 0;
    while let Some(v) = cur {
        acc += vals[v];
        sums[v] = acc;
        visited += 1;
        ops += 1;
        cur = succ[v];
    }
    if visited != n {
        return Err(Error::InvalidParameter(
            "predecessor links do not form a single chain".into(),
        ));
    }
    Ok(OracleResult {
        output: sums,
        op_count: ops,
    })
}
