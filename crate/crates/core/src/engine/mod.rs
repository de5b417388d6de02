//! Pregel-style superstep executor.
//!
//! Vertices are hash-partitioned over `p` logical workers. Within a superstep
//! each worker runs `compute` for its active vertices in ascending id order;
//! outboxes, aggregator contributions and mutation requests are merged at
//! the barrier. Inboxes are sorted (and combined, when the program has a
//! combiner) before the next superstep, so results do not depend on `p` or
//! on whether workers run on threads.

mod aggregate;

pub use aggregate::{AggKind, AggValue, AggregateValues, AggregatorSpec, TERMINATE};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cost::{CostParams, SuperstepMetrics, VertexMaxima};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::rng;

/// Commutative, associative reduction of two messages to the same target.
pub type Combiner<M> = fn(&M, &M) -> M;

/// A vertex-centric computation.
///
/// `compute` may only touch its own vertex's state; every cross-vertex effect
/// goes through messages, aggregators or mutation requests on the context.
pub trait VertexProgram: Sync {
    type State: Clone + Send + Sync;
    type Message: Clone + Ord + Send + Sync;

    fn init(&self, v: VertexId, graph: &Graph) -> Self::State;

    fn compute(
        &self,
        state: &mut Self::State,
        messages: &[Self::Message],
        ctx: &mut Context<'_, Self::Message>,
    );

    /// Scalar units (ids, numbers, flags) held in `state`.
    fn state_size(&self, state: &Self::State) -> usize;

    fn combiner(&self) -> Option<Combiner<Self::Message>> {
        None
    }

    fn aggregators(&self) -> Vec<AggregatorSpec> {
        Vec::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Mutation {
    /// Drop `v` from `u`'s (out-)adjacency.
    RemoveEdge(VertexId, VertexId),
    /// Stop scheduling the vertex; it may no longer receive messages.
    DeactivateVertex(VertexId),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub workers: usize,
    pub max_supersteps: usize,
    pub seed: u64,
    /// Run workers on the rayon pool; otherwise they run one after another.
    pub parallel: bool,
    /// Apply the program's combiner, if it has one.
    pub use_combiner: bool,
    /// Keep a copy of every vertex state after each superstep.
    pub record_states: bool,
    pub cost: CostParams,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            workers: 1,
            max_supersteps: 1_000_000,
            seed: 0,
            parallel: true,
            use_combiner: true,
            record_states: false,
            cost: CostParams::default(),
        }
    }
}

impl EngineConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self.cost.p = workers;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_supersteps(mut self, k: usize) -> Self {
        self.max_supersteps = k;
        self
    }

    pub fn recording(mut self) -> Self {
        self.record_states = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HaltReason {
    Quiesced,
    MaxSupersteps,
    AggregatorTerminate,
}

#[derive(Debug, Clone)]
pub struct RunResult<S> {
    pub states: Vec<S>,
    /// `false` for vertices deactivated by a mutation.
    pub live: Vec<bool>,
    pub supersteps: usize,
    pub halt_reason: HaltReason,
    pub trace: Vec<SuperstepMetrics>,
    pub mutation_log: Vec<(usize, Mutation)>,
    /// Per-superstep state copies when `record_states` is set.
    pub snapshots: Vec<Vec<S>>,
}

impl<S> RunResult<S> {
    pub fn total_messages(&self) -> u64 {
        self.trace.iter().map(SuperstepMetrics::total_sent).sum()
    }

    pub fn total_ops(&self) -> u64 {
        self.trace.iter().map(SuperstepMetrics::total_work).sum()
    }
}

struct WorkerOut<M> {
    outbox: Vec<(VertexId, VertexId, M)>,
    aggs: Vec<(VertexId, usize, AggValue)>,
    mutations: Vec<Mutation>,
    error: Option<(VertexId, VertexId)>,
    work: u64,
    sent: u64,
    active: usize,
    maxima: VertexMaxima,
}

impl<M> WorkerOut<M> {
    fn new() -> Self {
        Self {
            outbox: Vec::new(),
            aggs: Vec::new(),
            mutations: Vec::new(),
            error: None,
            work: 0,
            sent: 0,
            active: 0,
            maxima: VertexMaxima::default(),
        }
    }
}

/// Per-vertex view handed to [`VertexProgram::compute`].
pub struct Context<'a, M> {
    vertex: VertexId,
    superstep: usize,
    seed: u64,
    graph: &'a Graph,
    overlay: Option<&'a [Vec<VertexId>]>,
    live: &'a [bool],
    prev: &'a AggregateValues,
    out: &'a mut WorkerOut<M>,
    sent: u64,
    ticks: u64,
    halt: bool,
}

impl<'a, M: Clone> Context<'a, M> {
    pub fn vertex(&self) -> VertexId {
        self.vertex
    }

    pub fn superstep(&self) -> usize {
        self.superstep
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    /// Current out-neighbors, reflecting edge removals applied so far.
    pub fn neighbors(&self) -> &'a [VertexId] {
        match self.overlay {
            Some(o) => &o[self.vertex as usize],
            None => self.graph.neighbors(self.vertex),
        }
    }

    pub fn send(&mut self, target: VertexId, msg: M) {
        if (target as usize) >= self.live.len() || !self.live[target as usize] {
            if self.out.error.is_none() {
                self.out.error = Some((self.vertex, target));
            }
            return;
        }
        self.sent += 1;
        self.out.outbox.push((target, self.vertex, msg));
    }

    /// Sends `msg` along every current out-edge; charges one op per edge.
    pub fn send_to_neighbors(&mut self, msg: M) {
        let nbrs = self.neighbors();
        self.ticks += nbrs.len() as u64;
        for &u in nbrs {
            self.send(u, msg.clone());
        }
    }

    pub fn vote_to_halt(&mut self) {
        self.halt = true;
    }

    /// Charges `k` units of local work.
    pub fn op_tick(&mut self, k: u64) {
        self.ticks += k;
    }

    pub fn aggregate(&mut self, name: &str, value: AggValue) {
        let idx = self
            .prev
            .index_of(name)
            .unwrap_or_else(|| panic!("aggregator {name:?} is not declared by the program"));
        self.out.aggs.push((self.vertex, idx, value));
    }

    /// Value reduced at the previous barrier (identity in superstep 0).
    pub fn read_aggregate(&self, name: &str) -> AggValue {
        self.prev
            .get(name)
            .unwrap_or_else(|| panic!("aggregator {name:?} is not declared by the program"))
    }

    pub fn request_mutation(&mut self, m: Mutation) {
        self.out.mutations.push(m);
    }

    /// Uniform `[0, 1)` draw keyed by (seed, vertex, superstep, stream).
    pub fn random_unit(&self, stream: u64) -> f64 {
        rng::keyed_unit(self.seed, self.vertex as u64, self.superstep as u64, stream)
    }
}

struct Worker<S> {
    vertices: Vec<VertexId>,
    states: Vec<S>,
    halted: Vec<bool>,
}

fn owner(v: VertexId, p: usize) -> usize {
    (rng::splitmix64(v as u64) % p as u64) as usize
}

struct Shared<'a, P: VertexProgram> {
    prog: &'a P,
    graph: &'a Graph,
    overlay: Option<&'a [Vec<VertexId>]>,
    live: &'a [bool],
    inboxes: &'a [Vec<P::Message>],
    prev: &'a AggregateValues,
    superstep: usize,
    seed: u64,
}

fn run_worker<P: VertexProgram>(
    w: &mut Worker<P::State>,
    sh: &Shared<'_, P>,
) -> WorkerOut<P::Message> {
    let mut out = WorkerOut::new();
    for (li, &v) in w.vertices.iter().enumerate() {
        if !sh.live[v as usize] {
            continue;
        }
        let d1 = (sh.graph.balance_degree(v) + 1) as f64;
        let inbox = &sh.inboxes[v as usize];
        if !(w.halted[li] && inbox.is_empty()) {
            let mut ctx = Context {
                vertex: v,
                superstep: sh.superstep,
                seed: sh.seed,
                graph: sh.graph,
                overlay: sh.overlay,
                live: sh.live,
                prev: sh.prev,
                out: &mut out,
                sent: 0,
                ticks: 0,
                halt: false,
            };
            sh.prog.compute(&mut w.states[li], inbox, &mut ctx);
            let (sent, ticks, halt) = (ctx.sent, ctx.ticks, ctx.halt);
            w.halted[li] = halt;
            let ops = ticks + inbox.len() as u64;
            out.work += ops;
            out.sent += sent;
            out.active += 1;
            out.maxima.sent = out.maxima.sent.max(sent as f64 / d1);
            out.maxima.received = out.maxima.received.max(inbox.len() as f64 / d1);
            out.maxima.compute = out.maxima.compute.max(ops as f64 / d1);
        }
        let size = sh.prog.state_size(&w.states[li]) as f64;
        out.maxima.state = out.maxima.state.max(size / d1);
    }
    out
}

/// Runs `prog` over `graph` until quiescence, aggregator termination or the
/// superstep cap.
pub fn run_bsp<P: VertexProgram>(
    graph: &Graph,
    prog: &P,
    cfg: &EngineConfig,
) -> Result<RunResult<P::State>> {
    let n = graph.n();
    let p = cfg.workers;
    if p == 0 {
        return Err(Error::InvalidParameter(
            "engine needs at least one worker".into(),
        ));
    }
    if cfg.max_supersteps == 0 {
        return Err(Error::InvalidParameter(
            "max supersteps must be at least 1".into(),
        ));
    }

    let mut workers: Vec<Worker<P::State>> = (0..p)
        .map(|_| Worker {
            vertices: Vec::new(),
            states: Vec::new(),
            halted: Vec::new(),
        })
        .collect();
    let mut location = Vec::with_capacity(n);
    for v in graph.vertices() {
        let w = &mut workers[owner(v, p)];
        location.push((owner(v, p), w.vertices.len()));
        w.vertices.push(v);
        w.states.push(prog.init(v, graph));
        w.halted.push(false);
    }

    let specs = prog.aggregators();
    let combiner = if cfg.use_combiner {
        prog.combiner()
    } else {
        None
    };
    let mut prev = AggregateValues::identity(specs.clone());
    let mut live = vec![true; n];
    let mut overlay: Option<Vec<Vec<VertexId>>> = None;
    let mut inboxes: Vec<Vec<P::Message>> = vec![Vec::new(); n];
    let mut received = vec![0u64; p];
    let mut trace = Vec::new();
    let mut mutation_log = Vec::new();
    let mut snapshots = Vec::new();

    let collect_states = |workers: &[Worker<P::State>]| -> Vec<P::State> {
        location
            .iter()
            .map(|&(w, li)| workers[w].states[li].clone())
            .collect()
    };

    let mut superstep = 0;
    let halt_reason = loop {
        let shared = Shared {
            prog,
            graph,
            overlay: overlay.as_deref(),
            live: &live,
            inboxes: &inboxes,
            prev: &prev,
            superstep,
            seed: cfg.seed,
        };
        let outs: Vec<WorkerOut<P::Message>> = if cfg.parallel && p > 1 {
            workers
                .par_iter_mut()
                .map(|w| run_worker(w, &shared))
                .collect()
        } else {
            workers.iter_mut().map(|w| run_worker(w, &shared)).collect()
        };

        if let Some((sender, target)) = outs.iter().filter_map(|o| o.error).min() {
            return Err(Error::InvalidTarget {
                superstep,
                sender,
                target,
            });
        }
        if cfg.record_states {
            snapshots.push(collect_states(&workers));
        }

        let aggs = AggregateValues::reduce_from(
            &specs,
            outs.iter().flat_map(|o| o.aggs.iter().copied()).collect(),
        );
        let mut maxima = VertexMaxima::default();
        for o in &outs {
            maxima.merge(&o.maxima);
        }
        let mut metrics = SuperstepMetrics {
            superstep,
            work: outs.iter().map(|o| o.work).collect(),
            sent: outs.iter().map(|o| o.sent).collect(),
            sent_wire: vec![0; p],
            received: std::mem::replace(&mut received, vec![0; p]),
            active_vertices: outs.iter().map(|o| o.active).sum(),
            vertex_max: maxima,
            aggregates: aggs
                .named()
                .map(|(k, v)| (k.to_string(), v))
                .collect::<BTreeMap<_, _>>(),
        };

        if aggs.terminate_requested() {
            trace.push(metrics);
            superstep += 1;
            break HaltReason::AggregatorTerminate;
        }

        // Mutations, in canonical order.
        let mut mutations: Vec<Mutation> = outs
            .iter()
            .flat_map(|o| o.mutations.iter().copied())
            .collect();
        mutations.sort_unstable();
        mutations.dedup();
        for m in mutations {
            match m {
                Mutation::RemoveEdge(u, v) => {
                    let o = overlay.get_or_insert_with(|| {
                        graph
                            .vertices()
                            .map(|x| graph.neighbors(x).to_vec())
                            .collect()
                    });
                    if let Some(list) = o.get_mut(u as usize) {
                        if let Ok(i) = list.binary_search(&v) {
                            list.remove(i);
                        }
                    }
                }
                Mutation::DeactivateVertex(v) => {
                    if let Some(l) = live.get_mut(v as usize) {
                        *l = false;
                    }
                }
            }
            mutation_log.push((superstep, m));
        }

        // Delivery.
        for inbox in inboxes.iter_mut() {
            inbox.clear();
        }
        let mut touched = Vec::new();
        let mut delivered = 0u64;
        for (wi, mut o) in outs.into_iter().enumerate() {
            if let Some(combine) = combiner {
                o.outbox.sort_by(|a, b| (a.0, &a.2).cmp(&(b.0, &b.2)));
                let mut wire: Vec<(VertexId, VertexId, P::Message)> =
                    Vec::with_capacity(o.outbox.len());
                for item in o.outbox {
                    match wire.last_mut() {
                        Some(last) if last.0 == item.0 => last.2 = combine(&last.2, &item.2),
                        _ => wire.push(item),
                    }
                }
                o.outbox = wire;
            }
            metrics.sent_wire[wi] = o.outbox.len() as u64;
            for (target, sender, msg) in o.outbox {
                if !live[target as usize] {
                    return Err(Error::InvalidTarget {
                        superstep,
                        sender,
                        target,
                    });
                }
                let inbox = &mut inboxes[target as usize];
                if inbox.is_empty() {
                    touched.push(target);
                }
                inbox.push(msg);
                received[location[target as usize].0] += 1;
                delivered += 1;
            }
        }
        for &t in &touched {
            let inbox = &mut inboxes[t as usize];
            inbox.sort();
            if let Some(combine) = combiner {
                let folded = inbox[1..]
                    .iter()
                    .fold(inbox[0].clone(), |acc, m| combine(&acc, m));
                inbox.clear();
                inbox.push(folded);
            }
        }
        trace.push(metrics);
        prev = aggs;
        superstep += 1;

        let any_awake = workers.iter().any(|w| {
            w.vertices
                .iter()
                .zip(&w.halted)
                .any(|(&v, &h)| !h && live[v as usize])
        });
        if delivered == 0 && !any_awake {
            break HaltReason::Quiesced;
        }
        if superstep >= cfg.max_supersteps {
            break HaltReason::MaxSupersteps;
        }
    };

    Ok(RunResult {
        states: collect_states(&workers),
        live,
        supersteps: superstep,
        halt_reason,
        trace,
        mutation_log,
        snapshots,
    })
}
