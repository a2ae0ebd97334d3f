//! Exact construction, classification, decomposition and realization of algebraic
//! curvature tensors whose skew curvature operator has rank 2 on spacelike planes.

pub mod classify;
pub mod curvature;
pub mod error;
pub mod exactlin;
pub mod fixtures;
pub mod json;
pub mod realize;
pub mod reconstruct;
pub mod sampling;

pub use error::{Error, Result};
