use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix2C;
use crate::error::Result;

/// Normal offsets at which boundary values are sampled from either side.
pub const OFFSETS: [f64; 3] = [1e-4, 1e-5, 1e-6];

/// Relative jump residual `‖Φ₊ - Φ₋J‖ / ‖Φ₊‖` at one contour point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JumpResidual {
    pub point: [f64; 2],
    /// Residual at each entry of [`OFFSETS`].
    pub by_offset: [f64; 3],
    /// Residual of the quadratic extrapolation of `Φ₊ - Φ₋J` to zero offset.
    pub extrapolated: f64,
    /// Whether the residual shrinks with the offset.
    pub decreasing: bool,
}

impl JumpResidual {
    pub fn passes(&self, tol: f64) -> bool {
        self.decreasing && self.extrapolated < tol
    }
}

/// Samples `f` at `point ± η·normal` for each offset, where `normal` points
/// to the `+` side, and extrapolates the mismatch `Φ₊ - Φ₋J` to `η = 0`.
/// The point should lie well over `10⁻³` away from contour endpoints and
/// branch points, otherwise the extrapolation is not in its asymptotic regime.
pub fn jump_residual(
    f: impl Fn(Complex64) -> Result<Matrix2C>,
    point: Complex64,
    normal: Complex64,
    jump: &Matrix2C,
) -> Result<JumpResidual> {
    let n = normal / normal.norm();
    let mut mismatch = [Matrix2C::identity(); 3];
    let mut plus = [Matrix2C::identity(); 3];
    let mut by_offset = [0.0; 3];
    for (i, &eta) in OFFSETS.iter().enumerate() {
        let p = f(point + n * eta)?;
        let m = f(point - n * eta)?;
        mismatch[i] = p - m * *jump;
        plus[i] = p;
        by_offset[i] = mismatch[i].norm() / p.norm();
    }
    let lagrange: Vec<f64> = (0..3)
        .map(|i| {
            (0..3)
                .filter(|&j| j != i)
                .map(|j| OFFSETS[j] / (OFFSETS[j] - OFFSETS[i]))
                .product()
        })
        .collect();
    let combine = |ms: &[Matrix2C; 3]| {
        (0..3).fold(Matrix2C::real(0.0, 0.0, 0.0, 0.0), |acc, i| {
            acc + ms[i].scale(lagrange[i].into())
        })
    };
    let extrapolated = combine(&mismatch).norm() / combine(&plus).norm();
    Ok(JumpResidual {
        point: [point.re, point.im],
        by_offset,
        extrapolated,
        decreasing: by_offset[0] > by_offset[1] && by_offset[1] > by_offset[2],
    })
}
