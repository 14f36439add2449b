//! Numerical estimates of Hölder-type regularity constants for finite
//! collections of closed sets and for set-valued maps: primal moduli, metric
//! inequality checks, normal-cone criteria and the collection/map bridge.

pub mod cli;
pub mod dual;
pub mod error;
pub mod geometry;
pub mod mappings;
pub mod moduli;
pub mod poly;

pub use error::{Error, Result};
