//! Special functions of complex argument used by the parametrix module.
//!
//! Regions where a power series cancels badly are reached by integrating the
//! defining ODE with high-order Taylor steps from a region where the series
//! or an asymptotic expansion is accurate, always in the direction in which
//! the wanted solution is dominant.

mod bessel;
mod branch;
mod gamma;
mod kummer;
mod taylor;

pub use bessel::{bessel_i, bessel_k};
pub use branch::{cpow, BranchCut, Polar, Side};
pub use gamma::{digamma, gamma, rgamma};
pub use kummer::{kummer_m1, tricomi_u1, tricomi_u1_polar};

use num_complex::Complex64;

/// A function value together with its first derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WithDerivative {
    pub value: Complex64,
    pub derivative: Complex64,
}

impl WithDerivative {
    pub(crate) fn new(value: Complex64, derivative: Complex64) -> Self {
        Self { value, derivative }
    }
}
