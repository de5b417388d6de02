//! Pre-order and post-order numbers of a rooted tree.
//!
//! Pipeline: Euler tour, ranking of the tour (broken at `(root,
//! first(root))`) with unit values, a two-superstep pass where each arc
//! compares its rank with its reverse arc's (the earlier one is the forward
//! arc), and a second two-lane ranking that counts forward arcs for pre-order
//! and backward arcs for post-order. All engine traces are concatenated.

use serde::{Deserialize, Serialize};

use super::list_ranking::rank_lanes;
use super::{euler, AlgoConfig, Outcome};
use crate::engine::{run_bsp, Context, EngineConfig, VertexProgram};
use crate::error::Result;
use crate::graph::{Graph, GraphBuilder, VertexId};
use crate::oracles::check_tree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrePost {
    pub pre: Vec<u32>,
    pub post: Vec<u32>,
}

/// Each arc-vertex learns its reverse arc's rank and decides its direction.
struct Mark<'a> {
    rank: &'a [i64],
}

impl VertexProgram for Mark<'_> {
    /// `(rank, forward)`
    type State = (i64, bool);
    type Message = i64;

    fn init(&self, a: VertexId, _: &Graph) -> (i64, bool) {
        (self.rank[a as usize], false)
    }

    fn compute(&self, s: &mut (i64, bool), msgs: &[i64], ctx: &mut Context<'_, i64>) {
        if ctx.superstep() == 0 {
            ctx.send_to_neighbors(s.0);
        } else {
            s.1 = msgs.first().is_some_and(|&other| s.0 < other);
            ctx.vote_to_halt();
        }
    }

    fn state_size(&self, _: &(i64, bool)) -> usize {
        2
    }
}

pub fn pre_post_order(
    t: &Graph,
    cfg: &AlgoConfig,
    engine: &EngineConfig,
) -> Result<Outcome<PrePost>> {
    let root = cfg.require_root()?;
    check_tree(t, root)?;
    let n = t.n();
    let arcs = t.arc_count();

    let tour = euler::tour_run(t, engine)?;
    let succ = tour.output.successor.clone();
    let mut out = tour.map(|_| PrePost {
        pre: vec![0; n],
        post: vec![0; n],
    });
    out.output.post[root as usize] = (n - 1) as u32;
    if arcs == 0 {
        return Ok(out);
    }

    let head = t.arc_range(root).start;
    let mut preds: Vec<Option<VertexId>> = vec![None; arcs];
    for (a, &s) in succ.iter().enumerate() {
        if s != head {
            preds[s] = Some(a as VertexId);
        }
    }

    let ones = vec![[1i64]; arcs];
    let first = rank_lanes(&ones, &preds, engine)?;
    let rank: Vec<i64> = out.absorb(first).iter().map(|x| x[0]).collect();

    let mut source = vec![0 as VertexId; arcs];
    let mut pairs = GraphBuilder::new(arcs, false);
    for v in t.vertices() {
        for a in t.arc_range(v) {
            source[a] = v;
            let u = t.arc_target(a);
            if v < u {
                let back = t.find_arc(u, v).expect("tree arcs are symmetric");
                pairs.edge(a as VertexId, back as VertexId);
            }
        }
    }
    let mark = run_bsp(&pairs.build()?, &Mark { rank: &rank }, engine)?;
    let forward: Vec<bool> = mark.states.iter().map(|s| s.1).collect();
    out.append(mark);

    let lanes: Vec<[i64; 2]> = forward.iter().map(|&f| [f as i64, !f as i64]).collect();
    let second = rank_lanes(&lanes, &preds, engine)?;
    for (a, sums) in out.absorb(second).iter().enumerate() {
        if forward[a] {
            out.output.pre[t.arc_target(a) as usize] = sums[0] as u32;
        } else {
            out.output.post[source[a] as usize] = (sums[1] - 1) as u32;
        }
    }
    Ok(out)
}
