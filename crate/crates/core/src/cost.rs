//! BSP cost accounting and balanced-practical-Pregel-algorithm (BPPA) checks.
//!
//! A superstep is charged `max(w, g·h, L)`, where `w` is the largest local
//! work of any worker and `h` the largest number of messages any worker sent
//! or received. The auditor is a pure post-processor over the superstep
//! trace produced by the engine.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::engine::AggValue;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostParams {
    /// Time units per message of an h-relation (unitless ratio to local ops).
    pub g: f64,
    /// Synchronization periodicity.
    #[serde(rename = "L")]
    pub l: f64,
    pub p: usize,
}

impl Default for CostParams {
    fn default() -> Self {
        Self {
            g: 1.0,
            l: 1.0,
            p: 1,
        }
    }
}

impl CostParams {
    pub fn new(g: f64, l: f64, p: usize) -> Result<Self> {
        if !(g >= 0.0 && l >= 0.0 && p >= 1) {
            return Err(Error::InvalidParameter(format!(
                "cost parameters need g >= 0, L >= 0, p >= 1 (got g={g}, L={l}, p={p})"
            )));
        }
        Ok(Self { g, l, p })
    }

    /// Size of the relation that fits in one periodicity window, `floor(L/g)`.
    /// Informational only.
    pub fn relation_per_period(&self) -> Option<u64> {
        (self.g > 0.0).then(|| (self.l / self.g).floor() as u64)
    }
}

/// Largest per-vertex ratio against `d(v) + 1` seen in one superstep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct VertexMaxima {
    pub sent: f64,
    pub received: f64,
    pub compute: f64,
    pub state: f64,
}

impl VertexMaxima {
    pub fn merge(&mut self, other: &VertexMaxima) {
        self.sent = self.sent.max(other.sent);
        self.received = self.received.max(other.received);
        self.compute = self.compute.max(other.compute);
        self.state = self.state.max(other.state);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperstepMetrics {
    pub superstep: usize,
    /// Local work per worker: op ticks plus one unit per message processed.
    pub work: Vec<u64>,
    /// Messages emitted per worker, before combining.
    pub sent: Vec<u64>,
    /// Messages leaving each worker after sender-side combining.
    pub sent_wire: Vec<u64>,
    /// Messages delivered to each worker for this superstep.
    pub received: Vec<u64>,
    pub active_vertices: usize,
    pub vertex_max: VertexMaxima,
    pub aggregates: BTreeMap<String, AggValue>,
}

impl SuperstepMetrics {
    pub fn w(&self) -> u64 {
        self.work.iter().copied().max().unwrap_or(0)
    }

    /// `max_i max(s_i, r_i)` over post-combine counts.
    pub fn h(&self) -> u64 {
        self.sent_wire
            .iter()
            .zip(&self.received)
            .map(|(&s, &r)| s.max(r))
            .max()
            .unwrap_or(0)
    }

    pub fn total_work(&self) -> u64 {
        self.work.iter().sum()
    }

    pub fn total_sent(&self) -> u64 {
        self.sent.iter().sum()
    }

    pub fn total_sent_wire(&self) -> u64 {
        self.sent_wire.iter().sum()
    }

    pub fn total_received(&self) -> u64 {
        self.received.iter().sum()
    }
}

/// `max(w, g·h, L)` for one superstep.
pub fn superstep_cost(ms: &SuperstepMetrics, cp: &CostParams) -> f64 {
    cost_of(ms.w(), ms.h(), cp)
}

pub fn cost_of(w: u64, h: u64, cp: &CostParams) -> f64 {
    (w as f64).max(cp.g * h as f64).max(cp.l)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperstepCost {
    pub superstep: usize,
    pub w: u64,
    pub h: u64,
    pub cost: f64,
    pub messages: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub params: CostParams,
    pub supersteps: Vec<SuperstepCost>,
    #[serde(rename = "T")]
    pub total_time: f64,
    #[serde(rename = "PT")]
    pub processor_time: f64,
    pub total_ops: u64,
    pub total_messages: u64,
    pub relation_per_period: Option<u64>,
    pub oracle: Option<WorkComparison>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub observed: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl PropertyCheck {
    fn new(observed: f64, threshold: f64) -> Self {
        Self {
            observed,
            threshold,
            pass: observed <= threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BppaReport {
    pub c: f64,
    pub storage: PropertyCheck,
    pub compute: PropertyCheck,
    pub messages: PropertyCheck,
    /// Observed superstep count against `c·(log2(n) + 1)`.
    pub supersteps: PropertyCheck,
    pub verdict: bool,
}

pub const DEFAULT_BPPA_C: f64 = 8.0;

/// Superstep bound `c·(log2(n) + 1)`; `n = 0` is treated as `n = 1`.
pub fn superstep_bound(n: usize, c: f64) -> f64 {
    c * ((n.max(1) as f64).log2() + 1.0)
}

/// Cost totals and BPPA verdicts for a run over `g`.
pub fn audit_run(
    trace: &[SuperstepMetrics],
    g: &Graph,
    cp: &CostParams,
    c: f64,
) -> Result<(CostReport, BppaReport)> {
    audit_trace(trace, g.n(), cp, c)
}

/// [`audit_run`] for callers that only know the vertex count.
pub fn audit_trace(
    trace: &[SuperstepMetrics],
    n: usize,
    cp: &CostParams,
    c: f64,
) -> Result<(CostReport, BppaReport)> {
    if trace.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let supersteps: Vec<SuperstepCost> = trace
        .iter()
        .map(|ms| SuperstepCost {
            superstep: ms.superstep,
            w: ms.w(),
            h: ms.h(),
            cost: superstep_cost(ms, cp),
            messages: ms.total_sent(),
        })
        .collect();
    let total_time: f64 = supersteps.iter().map(|s| s.cost).sum();
    let cost = CostReport {
        params: *cp,
        total_time,
        processor_time: cp.p as f64 * total_time,
        total_ops: trace.iter().map(SuperstepMetrics::total_work).sum(),
        total_messages: trace.iter().map(SuperstepMetrics::total_sent).sum(),
        relation_per_period: cp.relation_per_period(),
        supersteps,
        oracle: None,
    };

    let mut maxima = VertexMaxima::default();
    for ms in trace {
        maxima.merge(&ms.vertex_max);
    }
    let storage = PropertyCheck::new(maxima.state, c);
    let compute = PropertyCheck::new(maxima.compute, c);
    let messages = PropertyCheck::new(maxima.sent.max(maxima.received), c);
    let steps = PropertyCheck::new(trace.len() as f64, superstep_bound(n, c));
    let bppa = BppaReport {
        c,
        verdict: storage.pass && compute.pass && messages.pass && steps.pass,
        storage,
        compute,
        messages,
        supersteps: steps,
    };
    Ok((cost, bppa))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkComparison {
    pub oracle: String,
    pub vc_ops: u64,
    pub oracle_ops: u64,
    pub ratio: f64,
}

/// Ratio of vertex-centric work to sequential oracle work. `oracle_ops` is
/// clamped to at least 1.
pub fn work_comparison(oracle: &str, vc_ops: u64, oracle_ops: u64) -> WorkComparison {
    let oracle_ops = oracle_ops.max(1);
    WorkComparison {
        oracle: oracle.to_string(),
        vc_ops,
        oracle_ops,
        ratio: vc_ops as f64 / oracle_ops as f64,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthClass {
    Constant,
    Logarithmic,
    Linear,
    Quadratic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub exponent: f64,
    pub intercept: f64,
    /// `log(measurement) - fitted` per point.
    pub residuals: Vec<f64>,
    pub class: GrowthClass,
}

/// Least-squares slope of `ln(measurement)` against `ln(n)`.
pub fn growth_fit(series: &[(f64, f64)]) -> Result<GrowthFit> {
    if series.len() < 4 {
        return Err(Error::TooFewPoints(series.len()));
    }
    if series.windows(2).any(|w| w[1].0 <= w[0].0) || series[0].0 <= 0.0 {
        return Err(Error::InvalidParameter(
            "sizes must be positive and strictly increasing".into(),
        ));
    }
    if series.iter().any(|p| !(p.1 > 0.0)) {
        return Err(Error::InvalidParameter(
            "measurements must be positive".into(),
        ));
    }
    let xs: Vec<f64> = series.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = series.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let residuals = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| y - (intercept + exponent * x))
        .collect();
    let class = if exponent < 0.1 {
        GrowthClass::Constant
    } else if exponent < 0.5 {
        GrowthClass::Logarithmic
    } else if exponent < 1.5 {
        GrowthClass::Linear
    } else {
        GrowthClass::Quadratic
    };
    Ok(GrowthFit {
        exponent,
        intercept,
        residuals,
        class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn metrics(work: Vec<u64>, sent: Vec<u64>, received: Vec<u64>) -> SuperstepMetrics {
        SuperstepMetrics {
            superstep: 0,
            sent_wire: sent.clone(),
            work,
            sent,
            received,
            active_vertices: 0,
            vertex_max: VertexMaxima::default(),
            aggregates: BTreeMap::new(),
        }
    }

    #[test]
    fn cost_examples() {
        let cp = |g, l| CostParams { g, l, p: 1 };
        assert_eq!(cost_of(10, 3, &cp(2.0, 4.0)), 10.0);
        assert_eq!(cost_of(1, 3, &cp(2.0, 4.0)), 6.0);
        assert_eq!(cost_of(1, 1, &cp(1.0, 9.0)), 9.0);
    }

    #[test]
    fn w_and_h_take_worker_maxima() {
        let m = metrics(vec![3, 7], vec![2, 5], vec![6, 1]);
        assert_eq!(m.w(), 7);
        assert_eq!(m.h(), 6);
        assert_eq!(
            superstep_cost(
                &m,
                &CostParams {
                    g: 2.0,
                    l: 0.0,
                    p: 2
                }
            ),
            12.0
        );
    }

    #[test]
    fn audit_rejects_empty_trace() {
        assert!(matches!(
            audit_trace(&[], 4, &CostParams::default(), 8.0),
            Err(Error::EmptyTrace)
        ));
    }

    #[test]
    fn audit_totals() {
        let trace = vec![
            metrics(vec![4, 2], vec![1, 1], vec![0, 0]),
            metrics(vec![1, 1], vec![0, 0], vec![1, 1]),
        ];
        let cp = CostParams {
            g: 1.0,
            l: 2.0,
            p: 2,
        };
        let (cost, bppa) = audit_trace(&trace, 16, &cp, 8.0).unwrap();
        assert_eq!(cost.total_time, 4.0 + 2.0);
        assert_eq!(cost.processor_time, 12.0);
        assert_eq!(cost.total_ops, 8);
        assert!(cost.processor_time >= cost.total_ops as f64);
        assert_eq!(bppa.supersteps.threshold, 40.0);
        assert!(bppa.verdict);
    }

    #[test]
    fn work_ratio_of_equal_counts() {
        assert_eq!(work_comparison("bfs", 100, 100).ratio, 1.0);
    }

    #[test]
    fn growth_fit_examples() {
        let ns = [128.0, 256.0, 512.0, 1024.0];
        let lin: Vec<_> = ns.iter().map(|&n| (n, 3.0 * n)).collect();
        assert!((growth_fit(&lin).unwrap().exponent - 1.0).abs() < 0.01);
        let nlogn: Vec<_> = ns.iter().map(|&n: &f64| (n, n * n.log2())).collect();
        let e = growth_fit(&nlogn).unwrap().exponent;
        assert!((1.05..=1.35).contains(&e), "{e}");
        let flat: Vec<_> = ns.iter().map(|&n| (n, 42.0)).collect();
        let f = growth_fit(&flat).unwrap();
        assert!(f.exponent.abs() < 0.01);
        assert_eq!(f.class, GrowthClass::Constant);
        assert!(matches!(growth_fit(&lin[..3]), Err(Error::TooFewPoints(3))));
    }

    use proptest::prelude::*;

    fn arb_trace() -> impl Strategy<Value = Vec<SuperstepMetrics>> {
        prop::collection::vec(
            (
                prop::collection::vec(0u64..50, 3),
                prop::collection::vec(0u64..50, 3),
                prop::collection::vec(0u64..50, 3),
            )
                .prop_map(|(w, s, r)| metrics(w, s, r)),
            1..10,
        )
    }

    proptest! {
        #[test]
        fn cost_monotone_in_g_and_l(trace in arb_trace(), g in 0.0f64..5.0, l in 0.0f64..20.0, dg in 0.0f64..3.0, dl in 0.0f64..10.0) {
            let t = |g, l| audit_trace(&trace, 10, &CostParams { g, l, p: 3 }, 8.0).unwrap().0.total_time;
            prop_assert!(t(g + dg, l) >= t(g, l));
            prop_assert!(t(g, l + dl) >= t(g, l));
            prop_assert!(t(g, l) >= l * trace.len() as f64);
        }

        #[test]
        fn zero_g_and_l_is_pure_computation(trace in arb_trace()) {
            let (cost, _) = audit_trace(&trace, 10, &CostParams { g: 0.0, l: 0.0, p: 3 }, 8.0).unwrap();
            let expect: u64 = trace.iter().map(|m| m.w()).sum();
            prop_assert_eq!(cost.total_time, expect as f64);
            prop_assert!(cost.processor_time >= cost.total_ops as f64);
        }

        #[test]
        fn verdict_monotone_in_c(trace in arb_trace(), c in 0.5f64..10.0, extra in 0.0f64..10.0, maxima in (0.0f64..12.0, 0.0f64..12.0)) {
            let mut trace = trace;
            trace[0].vertex_max = VertexMaxima { sent: maxima.0, received: maxima.1, compute: 1.0, state: 1.0 };
            let (_, low) = audit_trace(&trace, 64, &CostParams::default(), c).unwrap();
            let (_, high) = audit_trace(&trace, 64, &CostParams::default(), c + extra).unwrap();
            prop_assert!(!low.verdict || high.verdict);
        }
    }
}
