//! Explicit Riemann–Hilbert parametrices with jump-residual and asymptotic
//! verification: the global parametrix `P∞`, the Bessel parametrix, the
//! confluent hypergeometric parametrix and the model matrix `M`.

mod bessel;
mod check;
mod global;
mod hg;
mod matrix;
mod model;
mod suite;

pub use bessel::{
    bessel_asymptotic_deviation, bessel_jump, bessel_parametrix, bessel_parametrix_side, BesselRay,
};
pub use check::{jump_residual, JumpResidual, OFFSETS};
pub use global::{
    global_jump, global_parametrix, global_parametrix_side, phi_map, phi_map_side, szego_infinity,
    SzegoSpec,
};
pub use hg::{
    hg_jump, hg_log_derivative_limit, hg_origin_values, hg_parametrix, hg_parametrix_side,
    hg_with_derivative, HgRay,
};
pub use matrix::Matrix2C;
pub use model::{model_m, model_m_asymptotic_deviation, model_m_jump, model_m_side};

pub use crate::special::Side;
pub use suite::{
    bessel_suite, hg_suite, model_m_suite, pinf_suite, CheckLine, ParametrixObject,
    ParametrixReport, BESSEL_JUMP_TOL, DET_POINTS, DET_TOL, HG_JUMP_TOL, HG_LIMIT_TOL,
    M_ASYMPTOTIC_TOL, M_JUMP_TOL, PINF_JUMP_TOL,
};
