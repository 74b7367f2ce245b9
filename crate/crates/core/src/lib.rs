//! Exact combinatorics of positroids: Grassmann necklaces, reduced plabic
//! graphs, ice quivers, seed mutation over Plücker variables, rank-one
//! module classification and exact numeric verification on sampled points.

pub mod cluster;
pub mod cm;
pub mod combinatorics;
pub mod error;
pub mod numeric;
pub mod plabic;

pub use error::{Error, Result};
