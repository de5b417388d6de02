//! Shiloach-Vishkin style connected components with parent pointers `D`.
//!
//! One iteration is three supersteps:
//!
//! 0. roots apply the smallest hook request they received; every vertex
//!    sends `D[v]` to its neighbors and asks its parent for `D[D[v]]`;
//! 1. vertices note the smallest neighbor pointer and parents answer;
//! 2. a vertex whose grandparent differs from its parent shortcuts
//!    (`D[v] = D[D[v]]`). Otherwise its parent is a root and the vertex asks
//!    that root to hook under the smallest neighbor pointer, if smaller.
//!
//! Star hooking falls out of the last rule, since every member of a star
//! has a root parent. The run ends through the terminate aggregator in the
//! first iteration where every vertex sits in a star and nobody hooks.

use super::Outcome;
use crate::engine::{
    run_bsp, AggValue, AggregatorSpec, Context, EngineConfig, VertexProgram, TERMINATE,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvState {
    pub d: VertexId,
    pub min_nbr: VertexId,
    pub star: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum SvMsg {
    Hook(VertexId),
    Pointer(VertexId),
    Ask(VertexId),
    Grandparent(VertexId),
}

struct ShiloachVishkin;

impl VertexProgram for ShiloachVishkin {
    type State = SvState;
    type Message = SvMsg;

    fn init(&self, v: VertexId, _: &Graph) -> SvState {
        SvState {
            d: v,
            min_nbr: VertexId::MAX,
            star: false,
        }
    }

    fn compute(&self, s: &mut SvState, msgs: &[SvMsg], ctx: &mut Context<'_, SvMsg>) {
        let v = ctx.vertex();
        match ctx.superstep() % 3 {
            0 => {
                for m in msgs {
                    if let SvMsg::Hook(x) = *m {
                        if s.d == v && x < s.d {
                            s.d = x;
                        }
                    }
                }
                ctx.send_to_neighbors(SvMsg::Pointer(s.d));
                ctx.send(s.d, SvMsg::Ask(v));
            }
            1 => {
                s.min_nbr = VertexId::MAX;
                for m in msgs {
                    match *m {
                        SvMsg::Pointer(x) => s.min_nbr = s.min_nbr.min(x),
                        SvMsg::Ask(child) => ctx.send(child, SvMsg::Grandparent(s.d)),
                        _ => {}
                    }
                }
            }
            _ => {
                let gp = msgs
                    .iter()
                    .find_map(|m| match *m {
                        SvMsg::Grandparent(x) => Some(x),
                        _ => None,
                    })
                    .expect("every vertex asks its parent");
                let mut hooked = false;
                if gp != s.d {
                    s.d = gp;
                    s.star = false;
                } else {
                    s.star = true;
                    if s.min_nbr < s.d {
                        ctx.send(s.d, SvMsg::Hook(s.min_nbr));
                        hooked = true;
                    }
                }
                ctx.aggregate(TERMINATE, AggValue::Bool(s.star && !hooked));
            }
        }
    }

    fn state_size(&self, _: &SvState) -> usize {
        3
    }

    fn aggregators(&self) -> Vec<AggregatorSpec> {
        vec![AggregatorSpec::and(TERMINATE)]
    }
}

/// Component root of every vertex; roots are component minima.
pub fn cc_sv(g: &Graph, engine: &EngineConfig) -> Result<Outcome<Vec<VertexId>>> {
    if g.is_directed() {
        return Err(Error::Unsupported(
            "connected components need an undirected graph".into(),
        ));
    }
    let run = run_bsp(g, &ShiloachVishkin, engine)?;
    super::expect_halt(&run)?;
    Ok(Outcome::from_run(
        run.states.iter().map(|s| s.d).collect(),
        run,
    ))
}

/// Like [`cc_sv`] but keeps per-superstep pointer snapshots.
pub fn cc_sv_recorded(
    g: &Graph,
    engine: &EngineConfig,
) -> Result<(Outcome<Vec<VertexId>>, Vec<Vec<VertexId>>)> {
    let cfg = engine.clone().recording();
    let run = run_bsp(g, &ShiloachVishkin, &cfg)?;
    super::expect_halt(&run)?;
    let snaps = run
        .snapshots
        .iter()
        .map(|s| s.iter().map(|x| x.d).collect())
        .collect();
    Ok((
        Outcome::from_run(run.states.iter().map(|s| s.d).collect(), run),
        snaps,
    ))
}
