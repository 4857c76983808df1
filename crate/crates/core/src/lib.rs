//! Quantum McKay correspondence for polyhedral singularities `C^3/G`.

pub mod cli;
pub mod crc;
pub mod error;
pub mod grouprep;
pub mod gwtheory;
pub mod intersect;
pub mod numeric;
pub mod rootsys;
pub mod series;

pub use error::{Error, Result};
