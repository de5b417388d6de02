//! Prefix sums over a linked list by pointer doubling.
//!
//! Elements are vertices of a directed graph with one edge `v -> pred(v)`.
//! Superstep 0 introduces every element to its predecessor. From then on an
//! element pushes `(sum, pred)` to its successor and `succ` to its
//! predecessor, and applies what it receives:
//! `sum += sum(pred)`, `pred = pred(pred)`, `succ = succ(succ)`.
//! After `ceil(log2 n) + 2` supersteps every link is null.

use super::Outcome;
use crate::engine::{run_bsp, Context, EngineConfig, VertexProgram};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankState<const K: usize> {
    pub sum: [i64; K],
    pub pred: Option<VertexId>,
    pub succ: Option<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Link<const K: usize> {
    Hello(VertexId),
    FromPred {
        sum: [i64; K],
        pred: Option<VertexId>,
    },
    FromSucc {
        succ: Option<VertexId>,
    },
}

struct Doubling<'a, const K: usize> {
    vals: &'a [[i64; K]],
}

impl<const K: usize> VertexProgram for Doubling<'_, K> {
    type State = RankState<K>;
    type Message = Link<K>;

    fn init(&self, v: VertexId, g: &Graph) -> RankState<K> {
        RankState {
            sum: self.vals[v as usize],
            pred: g.neighbors(v).first().copied(),
            succ: None,
        }
    }

    fn compute(&self, s: &mut RankState<K>, msgs: &[Link<K>], ctx: &mut Context<'_, Link<K>>) {
        if ctx.superstep() == 0 {
            match s.pred {
                Some(p) => ctx.send(p, Link::Hello(ctx.vertex())),
                None => ctx.vote_to_halt(),
            }
            return;
        }
        for m in msgs {
            match m {
                Link::Hello(from) => s.succ = Some(*from),
                Link::FromPred { sum, pred } => {
                    for (a, b) in s.sum.iter_mut().zip(sum) {
                        *a += b;
                    }
                    s.pred = *pred;
                }
                Link::FromSucc { succ } => s.succ = *succ,
            }
        }
        if let Some(next) = s.succ {
            ctx.send(
                next,
                Link::FromPred {
                    sum: s.sum,
                    pred: s.pred,
                },
            );
        }
        if let Some(prev) = s.pred {
            ctx.send(prev, Link::FromSucc { succ: s.succ });
        }
        ctx.vote_to_halt();
    }

    fn state_size(&self, _: &RankState<K>) -> usize {
        K + 2
    }
}

pub(crate) fn ceil_log2(n: usize) -> usize {
    n.max(1).next_power_of_two().trailing_zeros() as usize
}

/// Superstep budget of a ranking run on `n` elements.
pub fn superstep_limit(n: usize) -> usize {
    if n <= 1 {
        1
    } else {
        ceil_log2(n) + 2
    }
}

fn link_graph(preds: &[Option<VertexId>]) -> Result<Graph> {
    let n = preds.len();
    let mut has_succ = vec![false; n];
    let mut b = GraphBuilder::new(n, true);
    let mut heads = 0;
    for (v, p) in preds.iter().enumerate() {
        match *p {
            None => heads += 1,
            Some(p) if (p as usize) < n && p as usize != v && !has_succ[p as usize] => {
                has_succ[p as usize] = true;
                b.edge(v as VertexId, p);
            }
            Some(p) => {
                return Err(Error::InvalidParameter(format!(
                    "bad predecessor link {p} at element {v}"
                )))
            }
        }
    }
    if n > 0 && heads != 1 {
        return Err(Error::InvalidParameter(format!(
            "list needs exactly one head, found {heads}"
        )));
    }
    b.build()
}

/// Ranks `K` value lanes at once over the list given by `preds`.
pub(crate) fn rank_lanes<const K: usize>(
    vals: &[[i64; K]],
    preds: &[Option<VertexId>],
    engine: &EngineConfig,
) -> Result<Outcome<Vec<[i64; K]>>> {
    if vals.len() != preds.len() {
        return Err(Error::InvalidParameter(
            "vals and preds differ in length".into(),
        ));
    }
    let g = link_graph(preds)?;
    let cfg = engine.clone().with_max_supersteps(superstep_limit(g.n()));
    let run = run_bsp(&g, &Doubling { vals }, &cfg)?;
    if run
        .states
        .iter()
        .any(|s| s.pred.is_some() || s.succ.is_some())
    {
        return Err(Error::NoProgress {
            supersteps: run.supersteps,
        });
    }
    Ok(Outcome::from_run(
        run.states.iter().map(|s| s.sum).collect(),
        run,
    ))
}

/// `sum(v)` = total of `vals` from `v` back to the head. Errors on links
/// that are not a single chain.
pub fn list_ranking(
    vals: &[i64],
    preds: &[Option<VertexId>],
    engine: &EngineConfig,
) -> Result<Outcome<Vec<i64>>> {
    let lanes: Vec<[i64; 1]> = vals.iter().map(|&x| [x]).collect();
    Ok(rank_lanes(&lanes, preds, engine)?.map(|s| s.into_iter().map(|[x]| x).collect()))
}
