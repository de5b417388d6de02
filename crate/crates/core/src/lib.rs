//! Vertex-centric graph processing on a simulated bulk-synchronous machine,
//! with BSP cost accounting, balance (BPPA) verdicts and sequential oracles
//! for measuring how much extra work the vertex-centric formulation does.

pub mod algorithms;
pub mod cost;
pub mod engine;
pub mod error;
pub mod graph;
pub mod harness;
pub mod oracles;
pub mod rng;

pub use error::{Error, Result};
