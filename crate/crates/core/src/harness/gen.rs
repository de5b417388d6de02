//! `family:key=value,...` graph generator specs.
//!
//! Keys: `n`, `seed`, `p` (edge probability) or `deg` (expected extra degree,
//! `p = deg / (n - 1)`), `left` (bipartite), `rows` (grid), `wmin`/`wmax`/
//! `distinct` (weights) and `labels` (number of node labels).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Family, GraphSpec, WeightSpec};

pub const FAMILIES: &[&str] = &[
    "path",
    "star",
    "complete",
    "random-tree",
    "random-connected",
    "gnp",
    "bipartite",
    "grid",
];

#[derive(Debug, Clone, PartialEq)]
pub struct GenTemplate {
    pub family: String,
    params: BTreeMap<String, String>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// Largest divisor of `n` not above its square root.
fn squarest_rows(n: usize) -> usize {
    (1..=(n as f64).sqrt() as usize)
        .rev()
        .find(|r| n % r == 0)
        .unwrap_or(1)
}

impl GenTemplate {
    pub fn parse(text: &str) -> Result<Self> {
        let (family, rest) = text.split_once(':').unwrap_or((text, ""));
        let family = family.trim().to_ascii_lowercase();
        if !FAMILIES.contains(&family.as_str()) {
            return Err(bad(format!(
                "unknown graph family {family:?}; expected one of {}",
                FAMILIES.join(", ")
            )));
        }
        let mut params = BTreeMap::new();
        for kv in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got {kv:?}")))?;
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
        for k in params.keys() {
            if ![
                "n", "seed", "p", "deg", "left", "rows", "wmin", "wmax", "distinct", "labels",
            ]
            .contains(&k.as_str())
            {
                return Err(bad(format!("unknown generator parameter {k:?}")));
            }
        }
        Ok(GenTemplate { family, params })
    }

    pub fn n(&self) -> Option<usize> {
        self.params.get("n").and_then(|v| v.parse().ok())
    }

    fn num<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.params.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| bad(format!("invalid value {v:?} for {key}"))),
        }
    }

    fn probability(&self, n: usize, default_deg: f64) -> Result<f64> {
        if let Some(p) = self.num::<f64>("p")? {
            return Ok(p);
        }
        let deg = self.num::<f64>("deg")?.unwrap_or(default_deg);
        Ok(if n > 1 {
            (deg / (n - 1) as f64).min(1.0)
        } else {
            0.0
        })
    }

    /// Concrete spec at size `n` (overriding any `n` in the template).
    pub fn at(&self, n: usize, directed: bool, weighted: bool) -> Result<GraphSpec> {
        let family = match self.family.as_str() {
            "path" => Family::Path,
            "star" => Family::Star,
            "complete" => Family::Complete,
            "random-tree" => Family::RandomTree,
            "random-connected" => Family::RandomConnected {
                p: self.probability(n, 1.0)?,
            },
            "gnp" => Family::Gnp {
                p: self.probability(n, 2.0)?,
            },
            "bipartite" => Family::BipartiteRandom {
                left: self.num("left")?.unwrap_or(n / 2),
                p: self.probability(n, 2.0)?,
            },
            "grid" => Family::Grid {
                rows: self.num("rows")?.unwrap_or_else(|| squarest_rows(n)),
            },
            _ => unreachable!("checked in parse"),
        };
        let mut spec = GraphSpec::new(family, n, self.num("seed")?.unwrap_or(0));
        spec.directed = directed;
        let wmin = self.num::<i64>("wmin")?;
        let wmax = self.num::<i64>("wmax")?;
        if weighted || wmin.is_some() || wmax.is_some() {
            let distinct = match self.params.get("distinct").map(String::as_str) {
                None | Some("0") | Some("false") => false,
                Some("1") | Some("true") => true,
                Some(v) => return Err(bad(format!("invalid value {v:?} for distinct"))),
            };
            spec.weights = Some(WeightSpec {
                min: wmin.unwrap_or(1),
                max: wmax.unwrap_or(1000),
                distinct,
            });
        }
        spec.labels = self.num("labels")?;
        Ok(spec)
    }

    pub fn spec(&self, directed: bool, weighted: bool) -> Result<GraphSpec> {
        let n = self
            .n()
            .ok_or_else(|| bad(format!("generator {:?} needs n=...", self.family)))?;
        self.at(n, directed, weighted)
    }
}
