//! Size sweeps with growth fits and More-Work / BPPA verdicts.

use serde::{Deserialize, Serialize};

use super::{execute, run_oracle, Algorithm, GenTemplate};
use crate::algorithms::AlgoConfig;
use crate::cost::{audit_trace, growth_fit, GrowthFit};
use crate::engine::EngineConfig;
use crate::error::{Error, Result};
use crate::graph::{generate, Graph};

/// Ratio exponent above which the vertex-centric work is judged to grow
/// faster than the oracle's.
pub const MORE_WORK_EXPONENT: f64 = 0.1;
/// Superstep exponent below which the count is judged logarithmic or better.
pub const BPPA_STEP_EXPONENT: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub supersteps: usize,
    pub messages: u64,
    pub total_ops: u64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "PT")]
    pub pt: f64,
    pub oracle_ops: u64,
    pub work_ratio: f64,
    /// BPPA properties 1 to 3 (storage, compute, messages) held.
    pub balanced: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub more_work: bool,
    pub bppa: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub algorithm: String,
    pub generator: String,
    pub rows: Vec<BenchRow>,
    pub superstep_fit: GrowthFit,
    pub ratio_fit: GrowthFit,
    pub message_fit: GrowthFit,
    pub observed: Verdict,
    /// Judgment published for this algorithm.
    pub expected: Verdict,
}

pub const CSV_HEADER: &str = "n,supersteps,messages,total_ops,T,PT,oracle_ops,work_ratio";

fn yes(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

impl BenchReport {
    pub fn csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{:.6}\n",
                r.n, r.supersteps, r.messages, r.total_ops, r.t, r.pt, r.oracle_ops, r.work_ratio
            ));
        }
        out
    }

    pub fn verdict_line(&self) -> String {
        format!(
            "{}: More Work? {} (expected {}) | BPPA? {} (expected {}) | superstep exponent {:.3}, work-ratio exponent {:.3}",
            self.algorithm,
            yes(self.observed.more_work),
            yes(self.expected.more_work),
            yes(self.observed.bppa),
            yes(self.expected.bppa),
            self.superstep_fit.exponent,
            self.ratio_fit.exponent,
        )
    }
}

/// Parses `2^a..2^b` (every power of two in between) or a comma list.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>> {
    let bad = || {
        Error::InvalidParameter(format!(
            "cannot parse sizes {text:?}; use 2^a..2^b or a comma list"
        ))
    };
    let sizes: Vec<usize> = if let Some((a, b)) = text.split_once("..") {
        let exp = |s: &str| {
            s.trim()
                .strip_prefix("2^")
                .and_then(|e| e.parse::<u32>().ok())
                .ok_or_else(bad)
        };
        let (a, b) = (exp(a)?, exp(b)?);
        if a > b || b >= usize::BITS {
            return Err(bad());
        }
        (a..=b).map(|e| 1usize << e).collect()
    } else {
        text.split(',')
            .map(|s| s.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?
    };
    if sizes.len() < 4 {
        return Err(Error::TooFewPoints(sizes.len()));
    }
    if sizes.windows(2).any(|w| w[1] <= w[0]) || sizes[0] == 0 {
        return Err(Error::InvalidParameter(
            "sizes must be positive and strictly increasing".into(),
        ));
    }
    Ok(sizes)
}

/// Runs `alg` and its oracle on `template` at every size. Missing source or
/// root vertices default to vertex 0.
#[allow(clippy::too_many_arguments)]
pub fn bench(
    alg: Algorithm,
    template: &GenTemplate,
    sizes: &[usize],
    directed: bool,
    weighted: bool,
    query: Option<&Graph>,
    cfg: &AlgoConfig,
    engine: &EngineConfig,
    bppa_c: f64,
) -> Result<BenchReport> {
    if sizes.len() < 4 {
        return Err(Error::TooFewPoints(sizes.len()));
    }
    let mut cfg = cfg.clone();
    if alg.needs_source() {
        cfg.source.get_or_insert(0);
    }
    if alg.needs_root() {
        cfg.root.get_or_insert(0);
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let g = generate(&template.at(n, directed, weighted)?)?;
        let exec = execute(alg, &g, query, &cfg, engine)?;
        let oracle = run_oracle(alg, &g, query, &cfg)?;
        let (cost, bppa) = audit_trace(&exec.trace, g.n(), &engine.cost, bppa_c)?;
        let oracle_ops = oracle.ops.max(1);
        rows.push(BenchRow {
            n,
            supersteps: exec.supersteps,
            messages: cost.total_messages,
            total_ops: cost.total_ops,
            t: cost.total_time,
            pt: cost.processor_time,
            oracle_ops,
            work_ratio: cost.total_ops as f64 / oracle_ops as f64,
            balanced: bppa.storage.pass && bppa.compute.pass && bppa.messages.pass,
        });
    }
    let fit = |f: &dyn Fn(&BenchRow) -> f64| {
        growth_fit(
            &rows
                .iter()
                .map(|r| (r.n as f64, f(r).max(1e-12)))
                .collect::<Vec<_>>(),
        )
    };
    let superstep_fit = fit(&|r| r.supersteps as f64)?;
    let ratio_fit = fit(&|r| r.work_ratio)?;
    let message_fit = fit(&|r| r.messages.max(1) as f64)?;
    let observed = Verdict {
        more_work: ratio_fit.exponent > MORE_WORK_EXPONENT,
        bppa: superstep_fit.exponent < BPPA_STEP_EXPONENT && rows.iter().all(|r| r.balanced),
    };
    let (more_work, bppa) = alg.expected_verdict();
    Ok(BenchReport {
        algorithm: alg.name().to_string(),
        generator: template.family.clone(),
        rows,
        superstep_fit,
        ratio_fit,
        message_fit,
        observed,
        expected: Verdict { more_work, bppa },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(parse_sizes("2^3..2^6").unwrap(), vec![8, 16, 32, 64]);
        assert_eq!(parse_sizes("10,20,40,80").unwrap(), vec![10, 20, 40, 80]);
        assert!(matches!(
            parse_sizes("2^3..2^5"),
            Err(Error::TooFewPoints(3))
        ));
        assert!(parse_sizes("8,4,16,32").is_err());
    }

    #[test]
    fn euler_tour_sweep_is_no_yes() {
        let t = GenTemplate::parse("random-tree:seed=1").unwrap();
        let sizes = parse_sizes("2^7..2^11").unwrap();
        let r = bench(
            Algorithm::EulerTour,
            &t,
            &sizes,
            false,
            false,
            None,
            &AlgoConfig::default(),
            &EngineConfig::default().with_workers(4),
            8.0,
        )
        .unwrap();
        assert!(r.rows.iter().all(|r| r.supersteps == 2));
        assert_eq!(
            r.observed,
            Verdict {
                more_work: false,
                bppa: true
            }
        );
        assert_eq!(r.observed, r.expected);
        assert!(r.csv().starts_with(CSV_HEADER));
        assert_eq!(r.csv().lines().count(), 6);
    }
}
