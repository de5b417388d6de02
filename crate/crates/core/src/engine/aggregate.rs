//! Named commutative monoids reduced once per superstep.

use serde::{Deserialize, Serialize};

/// Name of the reserved boolean aggregator that ends a run when it reduces
/// to `true` (with at least one contribution in that superstep).
pub const TERMINATE: &str = "terminate";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AggValue {
    Int(i64),
    Float(f64),
    Bool(bool),
}

impl AggValue {
    pub fn as_int(self) -> i64 {
        match self {
            AggValue::Int(v) => v,
            AggValue::Float(v) => v as i64,
            AggValue::Bool(b) => b as i64,
        }
    }

    pub fn as_float(self) -> f64 {
        match self {
            AggValue::Int(v) => v as f64,
            AggValue::Float(v) => v,
            AggValue::Bool(b) => b as i64 as f64,
        }
    }

    pub fn as_bool(self) -> bool {
        match self {
            AggValue::Bool(b) => b,
            AggValue::Int(v) => v != 0,
            AggValue::Float(v) => v != 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AggKind {
    Sum,
    Min,
    Max,
    And,
    Or,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregatorSpec {
    pub name: &'static str,
    pub kind: AggKind,
    /// Identity element; also fixes the value type.
    pub identity: AggValue,
}

impl AggregatorSpec {
    pub fn sum_int(name: &'static str) -> Self {
        Self {
            name,
            kind: AggKind::Sum,
            identity: AggValue::Int(0),
        }
    }

    pub fn sum_float(name: &'static str) -> Self {
        Self {
            name,
            kind: AggKind::Sum,
            identity: AggValue::Float(0.0),
        }
    }

    pub fn min_int(name: &'static str) -> Self {
        Self {
            name,
            kind: AggKind::Min,
            identity: AggValue::Int(i64::MAX),
        }
    }

    pub fn max_int(name: &'static str) -> Self {
        Self {
            name,
            kind: AggKind::Max,
            identity: AggValue::Int(i64::MIN),
        }
    }

    pub fn and(name: &'static str) -> Self {
        Self {
            name,
            kind: AggKind::And,
            identity: AggValue::Bool(true),
        }
    }

    pub fn or(name: &'static str) -> Self {
        Self {
            name,
            kind: AggKind::Or,
            identity: AggValue::Bool(false),
        }
    }

    pub fn reduce(&self, acc: AggValue, x: AggValue) -> AggValue {
        use AggValue::*;
        match (self.kind, acc) {
            (AggKind::Sum, Int(a)) => Int(a.wrapping_add(x.as_int())),
            (AggKind::Sum, Float(a)) => Float(a + x.as_float()),
            (AggKind::Min, Int(a)) => Int(a.min(x.as_int())),
            (AggKind::Min, Float(a)) => Float(a.min(x.as_float())),
            (AggKind::Max, Int(a)) => Int(a.max(x.as_int())),
            (AggKind::Max, Float(a)) => Float(a.max(x.as_float())),
            (AggKind::And, a) => Bool(a.as_bool() && x.as_bool()),
            (AggKind::Or, a) => Bool(a.as_bool() || x.as_bool()),
            (_, Bool(a)) => Bool(a || x.as_bool()),
        }
    }
}

/// Reduced aggregator values of one superstep.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateValues {
    pub(crate) specs: Vec<AggregatorSpec>,
    pub(crate) values: Vec<AggValue>,
    pub(crate) contributions: Vec<usize>,
}

impl AggregateValues {
    pub(crate) fn identity(specs: Vec<AggregatorSpec>) -> Self {
        let values = specs.iter().map(|s| s.identity).collect();
        let contributions = vec![0; specs.len()];
        Self {
            specs,
            values,
            contributions,
        }
    }

    pub(crate) fn index_of(&self, name: &str) -> Option<usize> {
        self.specs.iter().position(|s| s.name == name)
    }

    /// Reduces `(vertex, aggregator, value)` triples in vertex order so
    /// floating-point sums do not depend on partitioning.
    pub(crate) fn reduce_from(
        specs: &[AggregatorSpec],
        mut contribs: Vec<(u32, usize, AggValue)>,
    ) -> Self {
        contribs.sort_by_key(|c| (c.0, c.1));
        let mut out = Self::identity(specs.to_vec());
        for (_, idx, value) in contribs {
            out.values[idx] = out.specs[idx].reduce(out.values[idx], value);
            out.contributions[idx] += 1;
        }
        out
    }

    pub fn get(&self, name: &str) -> Option<AggValue> {
        self.index_of(name).map(|i| self.values[i])
    }

    pub fn contributions(&self, name: &str) -> usize {
        self.index_of(name).map_or(0, |i| self.contributions[i])
    }

    pub fn terminate_requested(&self) -> bool {
        self.index_of(TERMINATE)
            .is_some_and(|i| self.contributions[i] > 0 && self.values[i].as_bool())
    }

    pub fn named(&self) -> impl Iterator<Item = (&'static str, AggValue)> + '_ {
        self.specs
            .iter()
            .zip(&self.values)
            .map(|(s, v)| (s.name, *v))
    }
}
