//! Sector-length distributions of graph and stabilizer states: exact
//! enumeration, closed forms, noise transforms, entanglement criteria and
//! random-graph ensemble statistics.

pub mod arith;
pub mod closed_forms;
pub mod config;
pub mod ensemble;
pub mod error;
pub mod graph;
pub mod json;
pub mod noise;
pub mod pauli;
pub mod sld;

pub use config::Limits;
pub use error::{Error, Result};
pub use graph::{Graph, GraphProperties, KernelCertificate};
pub use sld::{Moments, Sld, Source};
