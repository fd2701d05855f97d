//! Quantum walk search on graphs, in the full state space and reduced onto
//! the subspaces induced by an equitable partition.
//!
//! * [`dtqw`]: coined walk on arcs with Grover-type coins.
//! * [`ctqw`]: continuous-time walk generated by `|w⟩⟨w| + γ·A`.
//! * [`partition`]: coarsest equitable partition with the marked vertex isolated.
//! * [`reduction`]: the reduced operators and the maps between the two pictures.

pub mod ctqw;
pub mod dtqw;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod partition;
pub mod reduction;
pub mod rng;
pub mod scan;
pub mod series;

pub use error::{Error, Result};
pub use graph::Graph;
pub use linalg::{ComplexMatrix, ComplexVector};
pub use partition::EquitablePartition;
pub use series::TimeSeries;
