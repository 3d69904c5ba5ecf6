//! Exact computation of genera of simplicial multi-fans.
//!
//! A multi-fan is a finite family of weighted simplicial lattice cones whose
//! signed overlap count is constant. This crate computes its T_y genus, Todd
//! genus and signature, the equivariant elliptic genus and the orbifold
//! elliptic genus as truncated q-series with cyclotomic coefficients, and
//! checks the structural criteria and vanishing statements that apply to
//! them. All arithmetic is exact.

#![allow(clippy::needless_range_loop)]

pub mod builders;
pub mod cyclotomic;
pub mod error;
pub mod genera;
pub mod lattice;
pub mod multifan;
pub mod report;
pub mod series;

pub use error::{Error, Result};
