//! Boruvka minimum spanning tree.
//!
//! Each phase is one engine run over the current contracted graph:
//!
//! * superstep 0: every vertex picks its lightest incident edge under the
//!   canonical order (weight, smaller endpoint, larger endpoint of the
//!   original edge), points at the other end and tells it so;
//! * superstep 1: a vertex that is pointed at by its own pointer target sits
//!   on the 2-cycle of a conjoined tree; the smaller of the two becomes the
//!   supervertex (root);
//! * then simple pointer jumping by request and reply until every vertex
//!   points at its root.
//!
//! Between phases the graph is rebuilt: endpoints are relabelled to their
//! supervertex, self-loops dropped and only the lightest parallel edge kept.

use std::collections::BTreeMap;

use super::Outcome;
use crate::engine::{run_bsp, Context, EngineConfig, VertexProgram};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexId};
use crate::oracles::{canonical_key, SpanningForest};

type Key = (i64, VertexId, VertexId);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoruvkaState {
    pub picked: Option<usize>,
    pub pointer: VertexId,
    pub root: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Msg {
    Picked(VertexId),
    Ask(VertexId),
    Reply { pointer: VertexId, root: bool },
}

struct Phase<'a> {
    /// Original edge carried by every arc of the phase graph.
    keys: &'a [Key],
}

impl VertexProgram for Phase<'_> {
    type State = BoruvkaState;
    type Message = Msg;

    fn init(&self, v: VertexId, _: &Graph) -> BoruvkaState {
        BoruvkaState {
            picked: None,
            pointer: v,
            root: false,
        }
    }

    fn compute(&self, s: &mut BoruvkaState, msgs: &[Msg], ctx: &mut Context<'_, Msg>) {
        let v = ctx.vertex();
        let k = ctx.superstep();
        if k == 0 {
            let arcs = ctx.graph().arc_range(v);
            ctx.op_tick(arcs.len() as u64);
            s.picked = arcs.min_by_key(|&a| self.keys[a]);
            match s.picked {
                Some(a) => {
                    s.pointer = ctx.graph().arc_target(a);
                    ctx.send(s.pointer, Msg::Picked(v));
                }
                None => s.root = true,
            }
            // stay awake: superstep 1 must run even without incoming picks
            return;
        } else if k == 1 {
            if !s.root {
                let mutual = msgs.binary_search(&Msg::Picked(s.pointer)).is_ok();
                s.root = mutual && v < s.pointer;
                if s.root {
                    s.pointer = v;
                } else {
                    ctx.send(s.pointer, Msg::Ask(v));
                }
            }
        } else if k % 2 == 0 {
            for m in msgs {
                if let Msg::Ask(child) = *m {
                    ctx.send(
                        child,
                        Msg::Reply {
                            pointer: s.pointer,
                            root: s.root,
                        },
                    );
                }
            }
        } else {
            for m in msgs {
                if let Msg::Reply { pointer, root } = *m {
                    if !root {
                        s.pointer = pointer;
                        ctx.send(pointer, Msg::Ask(v));
                    }
                }
            }
        }
        ctx.vote_to_halt();
    }

    fn state_size(&self, _: &BoruvkaState) -> usize {
        3
    }
}

/// Contracted graph of one phase plus the original edge behind each arc.
struct PhaseGraph {
    graph: Graph,
    keys: Vec<Key>,
}

impl PhaseGraph {
    fn build(n: usize, edges: &BTreeMap<(VertexId, VertexId), Key>) -> Result<Self> {
        let mut b = GraphBuilder::new(n, false);
        for &(u, v) in edges.keys() {
            b.edge(u, v);
        }
        let graph = b.build()?;
        let mut keys = Vec::with_capacity(graph.arc_count());
        for v in graph.vertices() {
            for a in graph.arc_range(v) {
                let u = graph.arc_target(a);
                keys.push(edges[&(v.min(u), v.max(u))]);
            }
        }
        Ok(PhaseGraph { graph, keys })
    }
}

/// Spanning forest plus the vertex count entering each phase.
pub fn mcst_boruvka_phases(
    g: &Graph,
    engine: &EngineConfig,
) -> Result<(Outcome<SpanningForest>, Vec<usize>)> {
    if g.is_directed() {
        return Err(Error::Unsupported(
            "spanning trees need an undirected graph".into(),
        ));
    }
    let mut edges: BTreeMap<(VertexId, VertexId), Key> = g
        .edges()
        .map(|(u, v, w, _)| ((u, v), canonical_key(w.unwrap_or(1), u, v)))
        .collect();
    let mut size = g.n();
    let mut out = Outcome::empty(SpanningForest {
        edges: Vec::new(),
        total_weight: 0,
        is_forest: false,
    });
    let mut chosen: Vec<Key> = Vec::new();
    let mut sizes = Vec::new();

    while size > 1 && !edges.is_empty() {
        sizes.push(size);
        let pg = PhaseGraph::build(size, &edges)?;
        let run = run_bsp(&pg.graph, &Phase { keys: &pg.keys }, engine)?;
        super::expect_halt(&run)?;
        chosen.extend(
            run.states
                .iter()
                .filter_map(|s| s.picked.map(|a| pg.keys[a])),
        );

        let mut relabel = vec![0 as VertexId; size];
        let mut next = 0;
        for (v, s) in run.states.iter().enumerate() {
            if s.root {
                relabel[v] = next;
                next += 1;
            }
        }
        let super_of: Vec<VertexId> = run
            .states
            .iter()
            .map(|s| relabel[s.pointer as usize])
            .collect();
        out.append(run);

        let mut contracted: BTreeMap<(VertexId, VertexId), Key> = BTreeMap::new();
        for (&(u, v), &key) in &edges {
            let (a, b) = (super_of[u as usize], super_of[v as usize]);
            if a != b {
                let slot = contracted.entry((a.min(b), a.max(b))).or_insert(key);
                *slot = (*slot).min(key);
            }
        }
        edges = contracted;
        size = next as usize;
    }

    chosen.sort_unstable();
    chosen.dedup();
    out.output = SpanningForest {
        total_weight: chosen.iter().map(|k| k.0).sum(),
        edges: chosen.iter().map(|k| (k.1, k.2)).collect(),
        is_forest: size > 1,
    };
    out.output.edges.sort_unstable();
    Ok((out, sizes))
}

pub fn mcst_boruvka(g: &Graph, engine: &EngineConfig) -> Result<Outcome<SpanningForest>> {
    Ok(mcst_boruvka_phases(g, engine)?.0)
}
