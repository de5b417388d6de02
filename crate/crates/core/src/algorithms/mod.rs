//! Vertex programs and their result extractors.
//!
//! Every entry point takes the input graph, an [`AlgoConfig`] and an
//! [`EngineConfig`], and returns an [`Outcome`] holding the extracted result
//! together with the superstep trace the cost auditor consumes. Multi-run
//! pipelines (pre/post order, Boruvka phases) concatenate their traces.

pub mod boruvka;
pub mod diameter;
pub mod euler;
pub mod hashmin;
pub mod list_ranking;
pub mod luby;
pub mod pagerank;
pub mod simulation;
pub mod sssp;
pub mod sv;
pub mod traversal;

use serde::{Deserialize, Serialize};

use crate::cost::SuperstepMetrics;
use crate::engine::{HaltReason, RunResult};
use crate::error::{Error, Result};
use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgoConfig {
    /// PageRank damping.
    pub alpha: f64,
    /// PageRank iteration count.
    pub iterations: usize,
    /// PageRank L1 tolerance; 0 disables early stopping.
    pub tol: f64,
    pub source: Option<VertexId>,
    pub root: Option<VertexId>,
    /// Keep the full distance matrix in the diameter run.
    pub apsp: bool,
}

impl Default for AlgoConfig {
    fn default() -> Self {
        Self {
            alpha: 0.85,
            iterations: 30,
            tol: 0.0,
            source: None,
            root: None,
            apsp: false,
        }
    }
}

impl AlgoConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidParameter(
                "iteration count must be at least 1".into(),
            ));
        }
        if !(self.tol >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be non-negative, got {}",
                self.tol
            )));
        }
        Ok(())
    }

    pub(crate) fn require_source(&self) -> Result<VertexId> {
        self.source
            .ok_or_else(|| Error::InvalidParameter("a source vertex is required".into()))
    }

    pub(crate) fn require_root(&self) -> Result<VertexId> {
        self.root
            .ok_or_else(|| Error::InvalidParameter("a root vertex is required".into()))
    }
}

/// Extracted result plus the execution trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome<T> {
    pub output: T,
    pub supersteps: usize,
    pub trace: Vec<SuperstepMetrics>,
    /// Engine runs that make up this outcome (phases for Boruvka).
    pub runs: usize,
}

impl<T> Outcome<T> {
    pub(crate) fn from_run<S>(output: T, run: RunResult<S>) -> Self {
        Outcome {
            output,
            supersteps: run.supersteps,
            trace: run.trace,
            runs: 1,
        }
    }

    pub(crate) fn empty(output: T) -> Self {
        Outcome {
            output,
            supersteps: 0,
            trace: Vec::new(),
            runs: 0,
        }
    }

    /// Appends another run's trace, renumbering its supersteps.
    pub(crate) fn append<S>(&mut self, run: RunResult<S>) {
        self.absorb(Outcome::from_run((), run));
    }

    /// Appends another outcome's trace and hands back its output.
    pub(crate) fn absorb<U>(&mut self, other: Outcome<U>) -> U {
        let base = self.trace.len();
        self.trace.extend(other.trace.into_iter().map(|mut m| {
            m.superstep += base;
            m
        }));
        self.supersteps += other.supersteps;
        self.runs += other.runs;
        other.output
    }

    pub(crate) fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        Outcome {
            output: f(self.output),
            supersteps: self.supersteps,
            trace: self.trace,
            runs: self.runs,
        }
    }

    pub fn total_messages(&self) -> u64 {
        self.trace.iter().map(SuperstepMetrics::total_sent).sum()
    }

    pub fn total_ops(&self) -> u64 {
        self.trace.iter().map(SuperstepMetrics::total_work).sum()
    }
}

pub(crate) fn expect_halt<S>(run: &RunResult<S>) -> Result<()> {
    if run.halt_reason == HaltReason::MaxSupersteps {
        return Err(Error::NoProgress {
            supersteps: run.supersteps,
        });
    }
    Ok(())
}
