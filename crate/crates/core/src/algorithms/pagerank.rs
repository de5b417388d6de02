//! PageRank with uniform redistribution of dangling mass.
//!
//! Superstep 0 sets every rank to `1/n`; supersteps `1..=K` apply
//! `(1 - alpha)/n + alpha * (incoming + dangling/n)`. Undirected edges count
//! in both directions. With `tol > 0`, a vertex stops as soon as the L1
//! change of the previous update is below `tol`, keeping its current rank.

use std::cmp::Ordering;

use super::{AlgoConfig, Outcome};
use crate::engine::{run_bsp, AggValue, AggregatorSpec, Context, EngineConfig, VertexProgram};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

const DANGLING: &str = "dangling";
const DELTA: &str = "delta";
const RANK_SUM: &str = "rank_sum";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Share(pub f64);

impl Eq for Share {}

impl PartialOrd for Share {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Share {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

struct PageRank {
    alpha: f64,
    iterations: usize,
    tol: f64,
}

impl PageRank {
    fn publish(&self, rank: f64, ctx: &mut Context<'_, Share>) {
        let d = ctx.neighbors().len();
        ctx.aggregate(RANK_SUM, AggValue::Float(rank));
        if d == 0 {
            ctx.aggregate(DANGLING, AggValue::Float(rank));
        }
        if ctx.superstep() < self.iterations {
            if d > 0 {
                ctx.send_to_neighbors(Share(rank / d as f64));
            }
        } else {
            ctx.vote_to_halt();
        }
    }
}

impl VertexProgram for PageRank {
    type State = f64;
    type Message = Share;

    fn init(&self, _: VertexId, g: &Graph) -> f64 {
        1.0 / g.n() as f64
    }

    fn compute(&self, rank: &mut f64, msgs: &[Share], ctx: &mut Context<'_, Share>) {
        let k = ctx.superstep();
        if k == 0 {
            self.publish(*rank, ctx);
            return;
        }
        if self.tol > 0.0 && k >= 2 && ctx.read_aggregate(DELTA).as_float() < self.tol {
            ctx.aggregate(RANK_SUM, AggValue::Float(*rank));
            ctx.vote_to_halt();
            return;
        }
        let n = ctx.num_vertices() as f64;
        let incoming: f64 = msgs.iter().map(|m| m.0).sum();
        let next = (1.0 - self.alpha) / n
            + self.alpha * (incoming + ctx.read_aggregate(DANGLING).as_float() / n);
        ctx.aggregate(DELTA, AggValue::Float((next - *rank).abs()));
        *rank = next;
        self.publish(next, ctx);
    }

    fn state_size(&self, _: &f64) -> usize {
        1
    }

    fn aggregators(&self) -> Vec<AggregatorSpec> {
        vec![
            AggregatorSpec::sum_float(DANGLING),
            AggregatorSpec::sum_float(DELTA),
            AggregatorSpec::sum_float(RANK_SUM),
        ]
    }
}

pub fn pagerank(g: &Graph, cfg: &AlgoConfig, engine: &EngineConfig) -> Result<Outcome<Vec<f64>>> {
    cfg.validate()?;
    if g.n() == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    let prog = PageRank {
        alpha: cfg.alpha,
        iterations: cfg.iterations,
        tol: cfg.tol,
    };
    let run = run_bsp(g, &prog, engine)?;
    Ok(Outcome::from_run(run.states.clone(), run))
}

/// Rank mass recorded at each superstep of a PageRank trace.
pub fn rank_sums(trace: &[crate::cost::SuperstepMetrics]) -> Vec<f64> {
    trace
        .iter()
        .filter(|m| m.active_vertices > 0)
        .filter_map(|m| m.aggregates.get(RANK_SUM).map(|v| v.as_float()))
        .collect()
}
