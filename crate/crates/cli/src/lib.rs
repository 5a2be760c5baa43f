//! Reproducible experiment runner for the juelab numerical lab.
//!
//! Every invocation is reduced to an [`ExperimentConfig`], executed by
//! [`run::run`] into a [`ResultTable`], and written atomically as CSV and/or
//! JSON. Outputs carry the SHA-256 of the canonical config, so identical
//! configs produce byte-identical files.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod run;
pub mod table;

pub use config::{ExperimentConfig, Kind};
pub use table::ResultTable;
