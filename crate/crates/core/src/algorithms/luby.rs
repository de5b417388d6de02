//! Graph coloring by repeated Luby maximal independent sets.
//!
//! Phase `c` computes an MIS of the still-uncolored vertices and gives it
//! color `c`. A phase is a sequence of three-superstep rounds over the
//! candidate vertices:
//!
//! * select: a candidate with no candidate neighbors joins outright,
//!   otherwise it becomes tentative with probability `1/(2 d)` (`d` = its
//!   candidate degree) and announces its id;
//! * resolve: a tentative vertex joins when every tentative neighbor has a
//!   larger id, and says so;
//! * exclude: neighbors of joiners drop out and tell their candidate
//!   neighbors to delete them.
//!
//! When no candidates remain, a transition superstep colors the MIS; its
//! members notify their uncolored neighbors and deactivate themselves, and
//! the neighbors remove the edges at the start of the next phase. Every
//! uncolored vertex stays awake, so all of them follow the same stage
//! sequence from the shared aggregate values.

use super::Outcome;
use crate::engine::{
    run_bsp, AggValue, AggregatorSpec, Context, EngineConfig, Mutation, VertexProgram,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

const CANDIDATES: &str = "candidates";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stage {
    Select,
    Resolve,
    Exclude,
    Transition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Candidate,
    Tentative,
    InMis,
    Excluded,
}

#[derive(Debug, Clone)]
pub struct LubyState {
    pub color: Option<u32>,
    phase: u32,
    stage: Stage,
    status: Status,
    residual: Vec<VertexId>,
    candidates: Vec<VertexId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Msg {
    Tentative(VertexId),
    Joined(VertexId),
    Removed(VertexId),
    Colored(VertexId),
}

struct Luby;

fn drop_senders(list: &mut Vec<VertexId>, gone: &[VertexId]) {
    list.retain(|x| gone.binary_search(x).is_err());
}

impl Luby {
    fn select(&self, s: &mut LubyState, ctx: &mut Context<'_, Msg>) {
        s.stage = Stage::Select;
        if s.status != Status::Candidate {
            return;
        }
        let d = s.candidates.len();
        ctx.op_tick(1 + d as u64);
        if d == 0 {
            s.status = Status::InMis;
        } else if ctx.random_unit(0) < 1.0 / (2.0 * d as f64) {
            s.status = Status::Tentative;
            for &u in &s.candidates {
                ctx.send(u, Msg::Tentative(ctx.vertex()));
            }
        }
    }
}

impl VertexProgram for Luby {
    type State = LubyState;
    type Message = Msg;

    fn init(&self, v: VertexId, g: &Graph) -> LubyState {
        LubyState {
            color: None,
            phase: 0,
            stage: Stage::Transition,
            status: Status::Candidate,
            residual: g.neighbors(v).to_vec(),
            candidates: g.neighbors(v).to_vec(),
        }
    }

    fn compute(&self, s: &mut LubyState, msgs: &[Msg], ctx: &mut Context<'_, Msg>) {
        let v = ctx.vertex();
        match s.stage {
            Stage::Transition => {
                // New phase: forget colored neighbors.
                let colored: Vec<VertexId> = msgs
                    .iter()
                    .filter_map(|m| match *m {
                        Msg::Colored(u) => Some(u),
                        _ => None,
                    })
                    .collect();
                for &u in &colored {
                    ctx.request_mutation(Mutation::RemoveEdge(v, u));
                }
                ctx.op_tick(s.residual.len() as u64);
                drop_senders(&mut s.residual, &colored);
                if ctx.superstep() > 0 {
                    s.phase += 1;
                }
                s.candidates = s.residual.clone();
                s.status = Status::Candidate;
                self.select(s, ctx);
            }
            Stage::Select => {
                s.stage = Stage::Resolve;
                if s.status == Status::Tentative {
                    let beaten = msgs
                        .iter()
                        .any(|m| matches!(*m, Msg::Tentative(u) if u < v));
                    if beaten {
                        s.status = Status::Candidate;
                    } else {
                        s.status = Status::InMis;
                        for &u in &s.candidates {
                            ctx.send(u, Msg::Joined(v));
                        }
                    }
                }
            }
            Stage::Resolve => {
                s.stage = Stage::Exclude;
                if s.status == Status::Candidate && msgs.iter().any(|m| matches!(m, Msg::Joined(_)))
                {
                    s.status = Status::Excluded;
                    for &u in &s.candidates {
                        ctx.send(u, Msg::Removed(v));
                    }
                }
                ctx.aggregate(
                    CANDIDATES,
                    AggValue::Int((s.status == Status::Candidate) as i64),
                );
            }
            Stage::Exclude => {
                let removed: Vec<VertexId> = msgs
                    .iter()
                    .filter_map(|m| match *m {
                        Msg::Removed(u) => Some(u),
                        _ => None,
                    })
                    .collect();
                drop_senders(&mut s.candidates, &removed);
                if ctx.read_aggregate(CANDIDATES).as_int() > 0 {
                    self.select(s, ctx);
                } else {
                    s.stage = Stage::Transition;
                    if s.status == Status::InMis {
                        s.color = Some(s.phase);
                        for &u in &s.residual {
                            ctx.send(u, Msg::Colored(v));
                        }
                        ctx.request_mutation(Mutation::DeactivateVertex(v));
                        ctx.vote_to_halt();
                    }
                }
            }
        }
    }

    fn state_size(&self, s: &LubyState) -> usize {
        4 + s.residual.len() + s.candidates.len()
    }

    fn aggregators(&self) -> Vec<AggregatorSpec> {
        vec![AggregatorSpec::sum_int(CANDIDATES)]
    }
}

/// Color of every vertex; colors are phase indices.
pub fn coloring_luby_mis(g: &Graph, engine: &EngineConfig) -> Result<Outcome<Vec<u32>>> {
    if g.is_directed() {
        return Err(Error::Unsupported(
            "coloring needs an undirected graph".into(),
        ));
    }
    let run = run_bsp(g, &Luby, engine)?;
    super::expect_halt(&run)?;
    let colors = run
        .states
        .iter()
        .map(|s| {
            s.color.ok_or(Error::NoProgress {
                supersteps: run.supersteps,
            })
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(Outcome::from_run(colors, run))
}

/// First violation of the per-phase MIS conditions, if any: every color
/// class is independent, and every vertex colored later than `c` has a
/// neighbor colored `c`.
pub fn check_phase_mis(g: &Graph, colors: &[u32]) -> Option<String> {
    for (u, v, _, _) in g.edges() {
        if colors[u as usize] == colors[v as usize] {
            return Some(format!(
                "edge ({u}, {v}) has both ends colored {}",
                colors[u as usize]
            ));
        }
    }
    for v in g.vertices() {
        let cv = colors[v as usize];
        let mut seen = vec![false; cv as usize];
        for &u in g.neighbors(v) {
            let cu = colors[u as usize];
            if cu < cv {
                seen[cu as usize] = true;
            }
        }
        if let Some(c) = seen.iter().position(|&b| !b) {
            return Some(format!(
                "vertex {v} (color {cv}) could have joined the MIS of phase {c}"
            ));
        }
    }
    None
}
