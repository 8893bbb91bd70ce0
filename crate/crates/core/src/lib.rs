//! Gauged Minkowski dimensions of finite approximations of compact sets,
//! their hyperspaces of compact subsets, and points via a compression proxy
//! for Kolmogorov complexity.
//!
//! Counts and gauge values live in log space ([`logspace`]); scales are
//! [`gauge::Scale`] values holding `log2 δ`. The command-line front end is
//! in [`cli`].

// Negated comparisons are deliberate throughout: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod algodim;
pub mod cli;
pub mod constructions;
pub mod covering;
pub mod dimension;
pub mod gauge;
pub mod hyperspace;
pub mod logspace;
pub mod metric;
pub mod setcover;

pub use error::{Error, Result};
