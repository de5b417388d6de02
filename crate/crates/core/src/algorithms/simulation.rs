//! Graph simulation of a labeled query pattern by shrinking match sets.
//!
//! `matchSet(v)` is a bitmask of query vertices (so the query has at most 64
//! vertices). Superstep 0 seeds it by node label and sends it to the
//! in-neighbors. From superstep 1 a vertex keeps the latest set of each
//! child, drops every query vertex whose out-edges are not all witnessed by
//! some child under a matching edge label, and notifies its parents only
//! when its set shrank. The terminate aggregator fires in the first
//! superstep in which nobody removes anything.

use serde::{Deserialize, Serialize};

use super::Outcome;
use crate::engine::{
    run_bsp, AggValue, AggregatorSpec, Context, EngineConfig, VertexProgram, TERMINATE,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::oracles::Simulation;

pub const MAX_QUERY_VERTICES: usize = 64;

/// Input checks shared with the fixpoint oracle.
pub fn check_labels(data: &Graph, query: &Graph) -> Result<()> {
    if !data.is_directed() || !query.is_directed() {
        return Err(Error::Unsupported(
            "simulation needs directed data and query graphs".into(),
        ));
    }
    if !query.has_node_labels() {
        return Err(Error::InvalidParameter(
            "query graph has no node labels".into(),
        ));
    }
    if !data.has_node_labels() {
        return Err(Error::InvalidGraph(
            "data graph is unlabeled but the query is labeled".into(),
        ));
    }
    if query.n() > MAX_QUERY_VERTICES {
        return Err(Error::Unsupported(format!(
            "query has {} vertices, at most {MAX_QUERY_VERTICES} are supported",
            query.n()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchState {
    pub match_set: u64,
    /// Latest match set of the target of each out-arc.
    children: Vec<u64>,
}

struct Simulate<'a> {
    query: &'a Graph,
}

impl Simulate<'_> {
    /// Query vertices in `set` whose out-edges are all witnessed.
    fn refine(&self, set: u64, children: &[u64], ctx: &mut Context<'_, (VertexId, u64)>) -> u64 {
        let g = ctx.graph();
        let arcs = g.arc_range(ctx.vertex());
        let mut keep = set;
        for q in (0..self.query.n()).filter(|&q| set & (1 << q) != 0) {
            let q = q as VertexId;
            for qa in self.query.arc_range(q) {
                let target = 1u64 << self.query.arc_target(qa);
                let label = self.query.arc_label(qa);
                ctx.op_tick(1 + arcs.len() as u64);
                let witnessed = arcs
                    .clone()
                    .zip(children)
                    .any(|(a, &c)| c & target != 0 && g.arc_label(a) == label);
                if !witnessed {
                    keep &= !(1 << q);
                    break;
                }
            }
        }
        keep
    }

    fn notify(&self, set: u64, ctx: &mut Context<'_, (VertexId, u64)>) {
        let v = ctx.vertex();
        let parents = ctx.graph().in_neighbors(v);
        ctx.op_tick(parents.len() as u64);
        for &p in parents {
            ctx.send(p, (v, set));
        }
    }
}

impl VertexProgram for Simulate<'_> {
    type State = MatchState;
    type Message = (VertexId, u64);

    fn init(&self, v: VertexId, g: &Graph) -> MatchState {
        let label = g.node_label(v);
        let match_set = self
            .query
            .vertices()
            .filter(|&q| self.query.node_label(q) == label)
            .fold(0u64, |m, q| m | 1 << q);
        MatchState {
            match_set,
            children: vec![u64::MAX; g.out_degree(v)],
        }
    }

    fn compute(
        &self,
        s: &mut MatchState,
        msgs: &[(VertexId, u64)],
        ctx: &mut Context<'_, (VertexId, u64)>,
    ) {
        if ctx.superstep() == 0 {
            self.notify(s.match_set, ctx);
            return;
        }
        let nbrs = ctx.graph().neighbors(ctx.vertex());
        for &(child, set) in msgs {
            let i = nbrs
                .binary_search(&child)
                .expect("updates come from children");
            s.children[i] = set;
        }
        let next = self.refine(s.match_set, &s.children, ctx);
        let removed = next != s.match_set;
        if removed {
            s.match_set = next;
            self.notify(next, ctx);
        }
        ctx.aggregate(TERMINATE, AggValue::Bool(!removed));
        ctx.vote_to_halt();
    }

    fn state_size(&self, s: &MatchState) -> usize {
        1 + s.children.len()
    }

    fn aggregators(&self) -> Vec<AggregatorSpec> {
        vec![AggregatorSpec::and(TERMINATE)]
    }
}

fn extract(query: &Graph, sets: &[u64]) -> Simulation {
    let union = sets.iter().fold(0u64, |a, &b| a | b);
    let simulated = query.vertices().all(|q| union & (1 << q) != 0);
    let relation = if simulated {
        query
            .vertices()
            .flat_map(|q| {
                sets.iter()
                    .enumerate()
                    .filter(move |(_, &m)| m & (1 << q) != 0)
                    .map(move |(v, _)| (q, v as VertexId))
            })
            .collect()
    } else {
        Vec::new()
    };
    Simulation {
        relation,
        simulated,
    }
}

pub fn graph_simulation(
    data: &Graph,
    query: &Graph,
    engine: &EngineConfig,
) -> Result<Outcome<Simulation>> {
    Ok(graph_simulation_recorded(data, query, engine)?.0)
}

/// Also returns the match sets after every superstep.
pub fn graph_simulation_recorded(
    data: &Graph,
    query: &Graph,
    engine: &EngineConfig,
) -> Result<(Outcome<Simulation>, Vec<Vec<u64>>)> {
    check_labels(data, query)?;
    let run = run_bsp(data, &Simulate { query }, engine)?;
    super::expect_halt(&run)?;
    let sets: Vec<u64> = run.states.iter().map(|s| s.match_set).collect();
    let snaps = run
        .snapshots
        .iter()
        .map(|ss| ss.iter().map(|s| s.match_set).collect())
        .collect();
    Ok((Outcome::from_run(extract(query, &sets), run), snaps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use crate::oracles;

    fn labeled(n: usize, labels: &[&str], edges: &[(VertexId, VertexId)]) -> Graph {
        let mut b = GraphBuilder::new(n, true);
        for &(u, v) in edges {
            b.edge(u, v);
        }
        b.node_labels(labels.iter().map(|s| s.to_string()).collect());
        b.build().unwrap()
    }

    fn sim(data: &Graph, q: &Graph) -> Simulation {
        graph_simulation(data, q, &EngineConfig::default())
            .unwrap()
            .output
    }

    #[test]
    fn single_vertex_query() {
        let data = labeled(2, &["A", "B"], &[]);
        let q = labeled(1, &["A"], &[]);
        assert_eq!(sim(&data, &q).relation, vec![(0, 0)]);
    }

    #[test]
    fn edge_query_on_chain() {
        let data = labeled(2, &["A", "B"], &[(0, 1)]);
        let q = labeled(2, &["A", "B"], &[(0, 1)]);
        let r = sim(&data, &q);
        assert!(r.simulated);
        assert_eq!(r.relation, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn missing_witness_is_not_simulated() {
        let data = labeled(1, &["A"], &[]);
        let q = labeled(2, &["A", "B"], &[(0, 1)]);
        let r = sim(&data, &q);
        assert!(!r.simulated);
        assert!(r.relation.is_empty());
        assert_eq!(r, oracles::simulation_fixpoint(&data, &q).unwrap().output);
    }

    #[test]
    fn unlabeled_data_is_rejected() {
        let data = GraphBuilder::new(2, true).edge(0, 1).build().unwrap();
        let q = labeled(1, &["A"], &[]);
        assert!(matches!(
            graph_simulation(&data, &q, &EngineConfig::default()),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn edge_labels_must_match() {
        let mut b = GraphBuilder::new(2, true);
        b.push(0, 1, None, Some("knows".into()));
        b.node_labels(vec!["A".into(), "B".into()]);
        let data = b.build().unwrap();
        let mut q = GraphBuilder::new(2, true);
        q.push(0, 1, None, Some("likes".into()));
        q.node_labels(vec!["A".into(), "B".into()]);
        let q = q.build().unwrap();
        assert!(!sim(&data, &q).simulated);
    }
}
