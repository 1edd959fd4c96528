//! Exact verification of 2-enumerations of halved alternating sign matrices
//! through perfect matchings of planar lattice graphs.

pub mod asm;
pub mod bijections;
pub mod builders;
pub mod error;
pub mod exact;
pub mod formulas;
pub mod graph;
pub mod matchings;
pub mod par;
pub mod renewal;

pub use error::{Error, Result};
pub use exact::Rational;
pub use graph::{pt, Point, WeightedGraph};
