pub mod anticoncentration;
pub mod error;
pub mod experiments;
pub mod field;
pub mod graph;
pub mod matrix;
pub mod predicates;
pub mod rng;
pub mod structure;

pub use error::{Error, Result};
