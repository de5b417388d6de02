//! Euler tour of a tree in two supersteps.
//!
//! Directed tree edges are CSR arcs. For the arc `(u, v)` the successor is
//! `(v, next_v(u))`, where `next_v` steps cyclically through `v`'s sorted
//! neighbor list. In superstep 0 each vertex `v` tells every neighbor `u`
//! the successor of `(u, v)`; in superstep 1 `u` stores it.

use serde::{Deserialize, Serialize};

use super::{AlgoConfig, Outcome};
use crate::engine::{run_bsp, Context, EngineConfig, VertexProgram};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::oracles::check_tree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerTour {
    /// Successor arc of every arc, indexed by CSR arc index.
    pub successor: Vec<usize>,
}

impl EulerTour {
    /// Arcs in circuit order starting at `(root, first(root))`.
    pub fn order_from(&self, g: &Graph, root: VertexId) -> Vec<usize> {
        let Some(start) = g.arc_range(root).next() else {
            return Vec::new();
        };
        let mut out = vec![start];
        let mut a = self.successor[start];
        while a != start && out.len() <= self.successor.len() {
            out.push(a);
            a = self.successor[a];
        }
        out
    }
}

struct Tour;

impl VertexProgram for Tour {
    type State = Vec<usize>;
    /// `(sender v, successor of (receiver, v))`
    type Message = (VertexId, usize);

    fn init(&self, v: VertexId, g: &Graph) -> Vec<usize> {
        vec![usize::MAX; g.out_degree(v)]
    }

    fn compute(
        &self,
        succ: &mut Vec<usize>,
        msgs: &[(VertexId, usize)],
        ctx: &mut Context<'_, (VertexId, usize)>,
    ) {
        let g = ctx.graph();
        let v = ctx.vertex();
        if ctx.superstep() == 0 {
            let arcs = g.arc_range(v);
            let d = arcs.len();
            ctx.op_tick(d as u64);
            for (i, &u) in g.neighbors(v).iter().enumerate() {
                ctx.send(u, (v, arcs.start + (i + 1) % d));
            }
        } else {
            let nbrs = g.neighbors(v);
            for &(from, next) in msgs {
                let i = nbrs
                    .binary_search(&from)
                    .expect("messages come from neighbors");
                succ[i] = next;
            }
            ctx.vote_to_halt();
        }
    }

    fn state_size(&self, succ: &Vec<usize>) -> usize {
        succ.len()
    }
}

pub(crate) fn tour_run(t: &Graph, engine: &EngineConfig) -> Result<Outcome<EulerTour>> {
    let run = run_bsp(t, &Tour, engine)?;
    let successor = run.states.concat();
    Ok(Outcome::from_run(EulerTour { successor }, run))
}

/// Rejects input that is not a tree. The root, when given, must exist.
pub fn euler_tour(
    t: &Graph,
    cfg: &AlgoConfig,
    engine: &EngineConfig,
) -> Result<Outcome<EulerTour>> {
    if t.n() == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    check_tree(t, cfg.root.unwrap_or(0))?;
    tour_run(t, engine)
}
