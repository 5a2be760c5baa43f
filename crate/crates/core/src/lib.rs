//! Numerical laboratory for the Jacobi unitary ensemble: eigenvalue
//! samplers, counting-function and rigidity statistics, Hankel determinants
//! with jump weights, closed-form asymptotics, the log-correlated limit
//! field, and explicit Riemann–Hilbert parametrices.

// `!(x > 0.0)` deliberately rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod cheb;
pub mod counting;
pub mod error;
pub mod field;
pub mod hankel;
pub mod parametrix;
pub mod quadrature;
pub mod rng;
pub mod sampler;
pub mod special;
pub mod stats;
pub mod tridiag;

pub use cheb::ChebSeries;
pub use error::{Error, Result};
pub use hankel::{Jump, WeightSpec};
pub use sampler::{EigenvalueSample, EnsembleSpec, McmcConfig, Method};
