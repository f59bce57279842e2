//! Connectivity of secure wireless sensor networks modelled as a random key
//! graph intersected with a random geometric graph.

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod combinatorics;
pub mod error;
pub mod geometry;
pub mod graph_analysis;
pub mod graph_models;
pub mod harness;
pub mod quadrature;

pub use error::{Error, Result};
