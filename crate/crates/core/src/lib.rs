//! Exact Euler characteristics of Schur powers of (log) cotangent bundles,
//! jet-differential decompositions and the vanishing and bound computations
//! built on them.

pub mod bounds;
pub mod chow;
pub mod combinat;
pub mod error;
pub mod jets;
pub mod poly;
pub mod symfunc;
pub mod vanish;

pub use error::{Error, Result};
