//! Diameter, eccentricities and all-pairs hop distances by id flooding.
//!
//! Every vertex floods its id. A vertex keeps a bitset history of ids seen
//! and forwards each id the first time it arrives, batched into one message
//! per neighbor per superstep; ids that a neighbor itself delivered in the
//! same superstep are not sent back to it. The run stops through the
//! terminate aggregator once every vertex that computed holds all `n` ids,
//! so `supersteps - 1` is the diameter.

use super::{AlgoConfig, Outcome};
use crate::engine::{
    run_bsp, AggValue, AggregatorSpec, Context, EngineConfig, VertexProgram, TERMINATE,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::oracles::AllPairs;

#[derive(Debug, Clone)]
pub struct EccentricityState {
    history: Vec<u64>,
    seen: usize,
    last_new_superstep: u32,
    dist: Option<Vec<u32>>,
}

impl EccentricityState {
    fn insert(&mut self, id: VertexId) -> bool {
        let (w, b) = (id as usize / 64, id % 64);
        let fresh = self.history[w] & (1 << b) == 0;
        self.history[w] |= 1 << b;
        self.seen += fresh as usize;
        fresh
    }
}

/// `(sender, ids)`; ids sorted.
type Batch = (VertexId, Vec<VertexId>);

struct Flood {
    apsp: bool,
}

impl VertexProgram for Flood {
    type State = EccentricityState;
    type Message = Batch;

    fn init(&self, _: VertexId, g: &Graph) -> EccentricityState {
        EccentricityState {
            history: vec![0; g.n().div_ceil(64)],
            seen: 0,
            last_new_superstep: 0,
            dist: self.apsp.then(|| vec![u32::MAX; g.n()]),
        }
    }

    fn compute(&self, s: &mut EccentricityState, msgs: &[Batch], ctx: &mut Context<'_, Batch>) {
        let v = ctx.vertex();
        let t = ctx.superstep() as u32;
        let mut fresh = Vec::new();
        if t == 0 {
            s.insert(v);
            fresh.push(v);
        }
        for (_, ids) in msgs {
            ctx.op_tick(ids.len() as u64);
            for &id in ids {
                if s.insert(id) {
                    fresh.push(id);
                }
            }
        }
        fresh.sort_unstable();
        if let Some(d) = s.dist.as_mut() {
            for &id in &fresh {
                d[id as usize] = t;
            }
        }
        if !fresh.is_empty() {
            s.last_new_superstep = t;
            for &w in ctx.neighbors() {
                ctx.op_tick(1 + fresh.len() as u64);
                let theirs: &[VertexId] = match msgs.binary_search_by_key(&w, |m| m.0) {
                    Ok(i) => &msgs[i].1,
                    Err(_) => &[],
                };
                let out: Vec<VertexId> = fresh
                    .iter()
                    .copied()
                    .filter(|x| theirs.binary_search(x).is_err())
                    .collect();
                if !out.is_empty() {
                    ctx.send(w, (v, out));
                }
            }
        }
        ctx.aggregate(TERMINATE, AggValue::Bool(s.seen == ctx.num_vertices()));
        ctx.vote_to_halt();
    }

    fn state_size(&self, s: &EccentricityState) -> usize {
        s.seen + 2 + s.dist.as_ref().map_or(0, Vec::len)
    }

    fn aggregators(&self) -> Vec<AggregatorSpec> {
        vec![AggregatorSpec::and(TERMINATE)]
    }
}

/// Errors on directed, empty or disconnected input.
pub fn diameter_apsp(
    g: &Graph,
    cfg: &AlgoConfig,
    engine: &EngineConfig,
) -> Result<Outcome<AllPairs>> {
    if g.is_directed() {
        return Err(Error::Unsupported(
            "diameter needs an undirected graph".into(),
        ));
    }
    if g.n() == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    let run = run_bsp(g, &Flood { apsp: cfg.apsp }, engine)?;
    super::expect_halt(&run)?;
    if run.states.iter().any(|s| s.seen < g.n()) {
        return Err(Error::Disconnected);
    }
    let eccentricities: Vec<u32> = run.states.iter().map(|s| s.last_new_superstep).collect();
    let diameter = (run.supersteps - 1) as u32;
    debug_assert_eq!(eccentricities.iter().copied().max(), Some(diameter));
    let distances = cfg.apsp.then(|| {
        run.states
            .iter()
            .map(|s| s.dist.clone().unwrap_or_default())
            .collect()
    });
    let out = AllPairs {
        diameter,
        eccentricities,
        distances,
    };
    Ok(Outcome::from_run(out, run))
}
