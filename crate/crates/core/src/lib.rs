//! Exact symbolic kernel and verification suite for generalized complex
//! geometry with logarithmic singularities.

pub mod error;
pub mod gcs;
pub mod homology;
pub mod linalg;
pub mod scalar;
pub mod surfaces;
pub mod suite;
pub mod surgery;
pub mod symkernel;

pub use error::{Error, Result};
pub use scalar::GaussRat;
