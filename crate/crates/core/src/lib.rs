//! Classical toolkit for benchmarking quantum-optimization pipelines on
//! UD-MIS, MaxCut and TSP.

pub mod clock;
pub mod encodings;
pub mod error;
pub mod hardware;
pub mod harness;
pub mod instances;
pub mod rng;
pub mod solvers;

pub use error::{Error, Result};
