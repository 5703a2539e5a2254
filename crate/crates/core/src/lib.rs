//! Exact computation of J-stability thresholds from cohomological data.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod cones;
pub mod document;
pub mod error;
pub mod lattice;
pub mod numeric;
pub mod surface;
pub mod toric;

pub use error::{Error, Result};
