//! Deterministic graph families. Output is a pure function of the spec.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, GraphBuilder, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum Family {
    /// 0 - 1 - ... - (n-1)
    Path,
    /// Center 0 joined to every other vertex.
    Star,
    Complete,
    /// Uniform labeled tree (Prüfer decoding).
    RandomTree,
    /// Random tree plus independent extra edges with probability `p`.
    RandomConnected {
        p: f64,
    },
    /// Erdős–Rényi G(n, p); may be disconnected.
    Gnp {
        p: f64,
    },
    /// `left` vertices `0..left`, `right` vertices after; cross edges with probability `p`.
    BipartiteRandom {
        left: usize,
        p: f64,
    },
    /// `rows x (n / rows)` lattice.
    Grid {
        rows: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub min: i64,
    pub max: i64,
    /// Assign a random permutation of `min..min+m` instead of i.i.d. draws.
    pub distinct: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub family: Family,
    pub n: usize,
    pub directed: bool,
    pub weights: Option<WeightSpec>,
    /// Number of distinct node labels, drawn uniformly per vertex.
    pub labels: Option<usize>,
    pub seed: u64,
}

impl GraphSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        Self {
            family,
            n,
            directed: false,
            weights: None,
            labels: None,
            seed,
        }
    }

    pub fn directed(mut self) -> Self {
        self.directed = true;
        self
    }

    pub fn weighted(mut self, min: i64, max: i64, distinct: bool) -> Self {
        self.weights = Some(WeightSpec { min, max, distinct });
        self
    }

    pub fn labeled(mut self, k: usize) -> Self {
        self.labels = Some(k);
        self
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    Ok(())
}

/// Pairs `(i, j)` with `i < j < n` (or all ordered pairs `i != j` when
/// `ordered`) kept independently with probability `p`, via geometric skips.
fn sample_pairs(
    rng: &mut ChaCha8Rng,
    n: usize,
    p: f64,
    ordered: bool,
) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    if p <= 0.0 || n < 2 {
        return out;
    }
    let total: u64 = if ordered {
        (n as u64) * (n as u64 - 1)
    } else {
        (n as u64) * (n as u64 - 1) / 2
    };
    let decode = |k: u64| -> (VertexId, VertexId) {
        if ordered {
            let row = (k / (n as u64 - 1)) as usize;
            let col = (k % (n as u64 - 1)) as usize;
            let col = if col >= row { col + 1 } else { col };
            (row as VertexId, col as VertexId)
        } else {
            // k = j(j-1)/2 + i with i < j
            let j = ((1.0 + ((1 + 8 * k) as f64).sqrt()) / 2.0).floor() as u64;
            let mut j = j.max(1);
            while j * (j - 1) / 2 > k {
                j -= 1;
            }
            while (j + 1) * j / 2 <= k {
                j += 1;
            }
            let i = k - j * (j - 1) / 2;
            (i as VertexId, j as VertexId)
        }
    };
    if p >= 1.0 {
        return (0..total).map(decode).collect();
    }
    let log_q = (1.0 - p).ln();
    let mut k: u64 = 0;
    loop {
        let r: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let skip = (r.ln() / log_q).floor() as u64;
        k = match k.checked_add(skip) {
            Some(k) => k,
            None => break,
        };
        if k >= total {
            break;
        }
        out.push(decode(k));
        k += 1;
    }
    out
}

fn prufer_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<(VertexId, VertexId)> {
    if n < 2 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding always has a leaf");
        edges.push((leaf as VertexId, s as VertexId));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a as VertexId, b as VertexId));
    edges
}

/// Builds the graph described by `spec`.
pub fn generate(spec: &GraphSpec) -> Result<Graph> {
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges: Vec<(VertexId, VertexId)> = match spec.family {
        Family::Path => (1..n)
            .map(|v| ((v - 1) as VertexId, v as VertexId))
            .collect(),
        Family::Star => (1..n).map(|v| (0, v as VertexId)).collect(),
        Family::Complete => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u as VertexId, v as VertexId)))
            .collect(),
        Family::RandomTree => prufer_tree(&mut rng, n),
        Family::RandomConnected { p } => {
            check_p(p)?;
            let tree = prufer_tree(&mut rng, n);
            let mut set: BTreeSet<(VertexId, VertexId)> =
                tree.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            let mut edges = tree;
            for (a, b) in sample_pairs(&mut rng, n, p, false) {
                if set.insert((a, b)) {
                    edges.push((a, b));
                }
            }
            edges
        }
        Family::Gnp { p } => {
            check_p(p)?;
            sample_pairs(&mut rng, n, p, spec.directed)
        }
        Family::BipartiteRandom { left, p } => {
            check_p(p)?;
            if left > n {
                return Err(Error::InvalidParameter(format!(
                    "left side {left} exceeds n = {n}"
                )));
            }
            let mut edges = Vec::new();
            for u in 0..left {
                for v in left..n {
                    if rng.gen_bool(p) {
                        edges.push((u as VertexId, v as VertexId));
                    }
                }
            }
            edges
        }
        Family::Grid { rows } => {
            if rows == 0 || n % rows != 0 {
                return Err(Error::InvalidParameter(format!(
                    "grid with {rows} rows cannot hold {n} vertices"
                )));
            }
            let cols = n / rows;
            let id = |r: usize, c: usize| (r * cols + c) as VertexId;
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        edges.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < rows {
                        edges.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            edges
        }
    };

    // Directed variants of undirected families get a random orientation for
    // random families and low-to-high orientation for structured ones.
    let random_family = matches!(
        spec.family,
        Family::RandomTree | Family::RandomConnected { .. } | Family::BipartiteRandom { .. }
    );
    if spec.directed && random_family {
        for e in edges.iter_mut() {
            if rng.gen_bool(0.5) {
                *e = (e.1, e.0);
            }
        }
    } else if spec.directed && !matches!(spec.family, Family::Gnp { .. }) {
        for e in edges.iter_mut() {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
    }

    let weights: Option<Vec<i64>> = match spec.weights {
        None => None,
        Some(ws) => {
            if ws.min > ws.max {
                return Err(Error::InvalidParameter(format!(
                    "weight range {}..={} is empty",
                    ws.min, ws.max
                )));
            }
            if ws.distinct {
                let span = (ws.max as i128 - ws.min as i128 + 1) as u128;
                if span < edges.len() as u128 {
                    return Err(Error::InvalidParameter(format!(
                        "{} distinct weights do not fit in {}..={}",
                        edges.len(),
                        ws.min,
                        ws.max
                    )));
                }
                let mut w: Vec<i64> = (0..edges.len() as i64).map(|i| ws.min + i).collect();
                w.shuffle(&mut rng);
                Some(w)
            } else {
                Some(
                    edges
                        .iter()
                        .map(|_| rng.gen_range(ws.min..=ws.max))
                        .collect(),
                )
            }
        }
    };

    let mut b = GraphBuilder::new(n, spec.directed);
    for (i, &(u, v)) in edges.iter().enumerate() {
        b.push(u, v, weights.as_ref().map(|w| w[i]), None);
    }
    if let Some(k) = spec.labels {
        if k == 0 {
            return Err(Error::InvalidParameter(
                "label alphabet must be non-empty".into(),
            ));
        }
        b.node_labels((0..n).map(|_| label_name(rng.gen_range(0..k))).collect());
    }
    b.build()
}

/// `A`..`Z`, then `L26`, `L27`, ...
pub fn label_name(i: usize) -> String {
    if i < 26 {
        ((b'A' + i as u8) as char).to_string()
    } else {
        format!("L{i}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, save_edge_list, LoadOptions};

    fn connected(g: &Graph) -> bool {
        if g.n() == 0 {
            return true;
        }
        let mut seen = vec![false; g.n()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    #[test]
    fn path_and_complete() {
        let g = generate(&GraphSpec::new(Family::Path, 4, 0)).unwrap();
        let e: Vec<_> = g.edges().map(|e| (e.0, e.1)).collect();
        assert_eq!(e, vec![(0, 1), (1, 2), (2, 3)]);
        let k3 = generate(&GraphSpec::new(Family::Complete, 3, 0)).unwrap();
        assert_eq!(k3.m(), 3);
    }

    #[test]
    fn random_tree_is_spanning_tree() {
        let g = generate(&GraphSpec::new(Family::RandomTree, 100, 7)).unwrap();
        assert_eq!((g.n(), g.m()), (100, 99));
        assert!(connected(&g));
    }

    #[test]
    fn random_connected_is_connected_and_degree_sum_matches() {
        let g = generate(&GraphSpec::new(Family::RandomConnected { p: 0.05 }, 50, 3)).unwrap();
        assert!(connected(&g));
        assert_eq!(crate::graph::degree_stats(&g).sum, 2 * g.m());
    }

    #[test]
    fn gnp_complete_when_p_is_one() {
        let g = generate(&GraphSpec::new(Family::Gnp { p: 1.0 }, 7, 1)).unwrap();
        assert_eq!(g.m(), 21);
        let d = generate(&GraphSpec::new(Family::Gnp { p: 1.0 }, 5, 1).directed()).unwrap();
        assert_eq!(d.m(), 20);
    }

    #[test]
    fn invalid_probability() {
        assert!(generate(&GraphSpec::new(Family::Gnp { p: 1.5 }, 5, 1)).is_err());
        assert!(generate(&GraphSpec::new(Family::Grid { rows: 3 }, 10, 1)).is_err());
    }

    #[test]
    fn grid_and_bipartite() {
        let g = generate(&GraphSpec::new(Family::Grid { rows: 2 }, 6, 0)).unwrap();
        assert_eq!(g.m(), 7);
        let b = generate(&GraphSpec::new(
            Family::BipartiteRandom { left: 3, p: 1.0 },
            5,
            0,
        ))
        .unwrap();
        assert_eq!(b.m(), 6);
        assert!(b.edges().all(|(u, v, _, _)| u < 3 && v >= 3));
    }

    #[test]
    fn distinct_weights_are_a_permutation() {
        let g = generate(
            &GraphSpec::new(Family::RandomConnected { p: 0.1 }, 40, 6).weighted(1, 100_000, true),
        )
        .unwrap();
        let mut w: Vec<i64> = g.edges().map(|e| e.2.unwrap()).collect();
        w.sort_unstable();
        w.dedup();
        assert_eq!(w.len(), g.m());
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn generation_is_deterministic(seed in 0u64..1000, n in 0usize..60, p in 0.0f64..0.3) {
            let spec = GraphSpec::new(Family::RandomConnected { p }, n, seed).weighted(0, 50, false).labeled(3);
            prop_assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        }

        #[test]
        fn undirected_symmetry_and_round_trip(seed in 0u64..1000, n in 0usize..60, p in 0.0f64..0.3) {
            let g = generate(&GraphSpec::new(Family::Gnp { p }, n, seed).weighted(-5, 5, false)).unwrap();
            for u in g.vertices() {
                for a in g.arcs(u) {
                    let back = g.find_arc(a.target, u).expect("symmetric arc");
                    prop_assert_eq!(g.arc_weight(back), a.weight);
                }
            }
            let (text, _) = save_edge_list(&g);
            let opts = LoadOptions { weighted: true, ..Default::default() };
            prop_assert_eq!(parse_edge_list(&text, None, &opts).unwrap(), g);
        }
    }
}
