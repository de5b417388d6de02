use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Algorithm, Execution};
use crate::algorithms::AlgoConfig;
use crate::cost::{audit_trace, work_comparison, BppaReport, CostReport};
use crate::engine::EngineConfig;
use crate::error::Result;
use crate::graph::Graph;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub directed: bool,
    /// Generator template or input path.
    pub source: String,
    pub seed: Option<u64>,
}

impl GraphSummary {
    pub fn new(g: &Graph, source: impl Into<String>, seed: Option<u64>) -> Self {
        Self {
            n: g.n(),
            m: g.m(),
            directed: g.is_directed(),
            source: source.into(),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineSummary {
    pub p: usize,
    pub g: f64,
    #[serde(rename = "L")]
    pub l: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigSummary {
    pub alpha: f64,
    pub iterations: usize,
    pub tol: f64,
    pub source: Option<u64>,
    pub root: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub algorithm: String,
    pub graph: GraphSummary,
    pub engine: EngineSummary,
    pub config: ConfigSummary,
    pub supersteps: usize,
    /// Separate engine runs folded into this result.
    pub runs: usize,
    pub cost: CostReport,
    pub bppa: BppaReport,
    pub output: Value,
    pub digest: String,
    /// Seconds since the Unix epoch; the only field that varies between
    /// identical invocations.
    pub timestamp: u64,
}

/// Audits `exec` and assembles the report. `oracle_ops` fills in the work
/// comparison when the oracle was run.
#[allow(clippy::too_many_arguments)]
pub fn build_report(
    alg: Algorithm,
    g: &Graph,
    graph: GraphSummary,
    cfg: &AlgoConfig,
    engine: &EngineConfig,
    bppa_c: f64,
    exec: &Execution,
    oracle_ops: Option<u64>,
) -> Result<Report> {
    let (mut cost, bppa) = audit_trace(&exec.trace, g.n(), &engine.cost, bppa_c)?;
    cost.oracle = oracle_ops.map(|ops| work_comparison(alg.oracle_name(), cost.total_ops, ops));
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Ok(Report {
        schema: SCHEMA_VERSION,
        algorithm: alg.name().to_string(),
        graph,
        engine: EngineSummary {
            p: engine.cost.p,
            g: engine.cost.g,
            l: engine.cost.l,
            seed: engine.seed,
        },
        config: ConfigSummary {
            alpha: cfg.alpha,
            iterations: cfg.iterations,
            tol: cfg.tol,
            source: cfg.source.map(|v| g.original_id(v)),
            root: cfg.root.map(|v| g.original_id(v)),
        },
        supersteps: exec.supersteps,
        runs: exec.runs,
        cost,
        bppa,
        output: exec.output.clone(),
        digest: exec.digest.clone(),
        timestamp,
    })
}
