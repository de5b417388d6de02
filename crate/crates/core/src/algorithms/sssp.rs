//! Single-source shortest paths by distance relaxation with a min combiner.

use super::{AlgoConfig, Outcome};
use crate::engine::{run_bsp, Combiner, Context, EngineConfig, VertexProgram};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub const UNREACHABLE: u64 = u64::MAX;

struct Relax {
    source: VertexId,
}

impl Relax {
    fn offer(&self, dist: u64, ctx: &mut Context<'_, u64>) {
        let g = ctx.graph();
        let arcs = g.arc_range(ctx.vertex());
        ctx.op_tick(arcs.len() as u64);
        for a in arcs {
            let w = g.arc_weight(a).unwrap_or(1) as u64;
            ctx.send(g.arc_target(a), dist + w);
        }
    }
}

impl VertexProgram for Relax {
    type State = u64;
    type Message = u64;

    fn init(&self, v: VertexId, _: &Graph) -> u64 {
        if v == self.source {
            0
        } else {
            UNREACHABLE
        }
    }

    fn compute(&self, dist: &mut u64, msgs: &[u64], ctx: &mut Context<'_, u64>) {
        if ctx.superstep() == 0 {
            if ctx.vertex() == self.source {
                self.offer(0, ctx);
            }
        } else if let Some(&best) = msgs.iter().min() {
            if best < *dist {
                *dist = best;
                self.offer(best, ctx);
            }
        }
        ctx.vote_to_halt();
    }

    fn state_size(&self, _: &u64) -> usize {
        1
    }

    fn combiner(&self) -> Option<Combiner<u64>> {
        Some(|a, b| *a.min(b))
    }
}

/// Distances from the configured source; [`UNREACHABLE`] when no path exists.
pub fn sssp(g: &Graph, cfg: &AlgoConfig, engine: &EngineConfig) -> Result<Outcome<Vec<u64>>> {
    let source = cfg.require_source()?;
    if (source as usize) >= g.n() {
        return Err(Error::InvalidParameter(format!(
            "source {source} is not a vertex"
        )));
    }
    if let Some((u, v, Some(w), _)) = g.edges().find(|e| e.2.is_some_and(|w| w < 0)) {
        return Err(Error::NegativeWeight { u, v, weight: w });
    }
    let run = run_bsp(g, &Relax { source }, engine)?;
    super::expect_halt(&run)?;
    Ok(Outcome::from_run(run.states.clone(), run))
}
