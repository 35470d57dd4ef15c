//! Geometry of the Einstein universe Ein^{1,2} and verification of cohomogeneity-one
//! subgroup catalogs of its conformal group.

pub mod error;
pub mod linalg;
pub mod qspace;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Scalar, Q};
pub mod ads;
pub mod einstein;
pub mod liecore;
pub mod catalog;
pub mod orbits;
