//! Hash-Min connected components: every vertex adopts the smallest id it
//! has heard of and passes improvements on.

use super::Outcome;
use crate::engine::{run_bsp, Combiner, Context, EngineConfig, VertexProgram};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

struct HashMin;

impl VertexProgram for HashMin {
    type State = VertexId;
    type Message = VertexId;

    fn init(&self, v: VertexId, _: &Graph) -> VertexId {
        v
    }

    fn compute(&self, min: &mut VertexId, msgs: &[VertexId], ctx: &mut Context<'_, VertexId>) {
        if ctx.superstep() == 0 {
            let nbrs = ctx.neighbors();
            ctx.op_tick(nbrs.len() as u64);
            *min = nbrs.iter().copied().fold(ctx.vertex(), VertexId::min);
            ctx.send_to_neighbors(*min);
        } else if let Some(&m) = msgs.iter().min() {
            if m < *min {
                *min = m;
                ctx.send_to_neighbors(m);
            }
        }
        ctx.vote_to_halt();
    }

    fn state_size(&self, _: &VertexId) -> usize {
        1
    }

    fn combiner(&self) -> Option<Combiner<VertexId>> {
        Some(|a, b| *a.min(b))
    }
}

/// Component color of every vertex: the smallest id in its component.
pub fn cc_hashmin(g: &Graph, engine: &EngineConfig) -> Result<Outcome<Vec<VertexId>>> {
    if g.is_directed() {
        return Err(Error::Unsupported(
            "connected components need an undirected graph".into(),
        ));
    }
    let run = run_bsp(g, &HashMin, engine)?;
    super::expect_halt(&run)?;
    Ok(Outcome::from_run(run.states.clone(), run))
}
