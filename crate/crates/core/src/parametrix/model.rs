use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use super::matrix::Matrix2C;
use crate::error::{Error, Result};
use crate::special::{Polar, Side};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const AXIS_TOL: f64 = 1e-14;

fn b_matrix() -> Matrix2C {
    Matrix2C::new(1.0.into(), I, I, 1.0.into()).scale((1.0 / SQRT_2).into())
}

/// `λ^{-σ₃/4} B s^{-i√2γσ₃}` from a point of the Riemann surface with
/// `arg λ ∈ [-π, π]` and `arg(λ+1)` supplied separately on the cut.
fn assemble(lam: Polar, lam1: Polar, gamma: f64) -> Matrix2C {
    let kappa = SQRT_2 * gamma;
    let root = lam.powc(0.5.into());
    let s = (1.0 - I * root) / lam1.powc(0.5.into());
    let quarter = lam.powc((-0.25).into());
    Matrix2C::sigma3_power(quarter) * b_matrix() * Matrix2C::sigma3_power((-I * kappa * s.ln()).exp())
}

/// Model matrix `M(λ)`, analytic off `(-∞, 0]`.
pub fn model_m(lambda: Complex64, gamma: f64) -> Result<Matrix2C> {
    if lambda.im.abs() <= AXIS_TOL * lambda.norm().max(1.0) && lambda.re <= 0.0 {
        return Err(Error::OnContour(format!("{lambda} lies on (-∞, 0]")));
    }
    let lam1 = lambda + 1.0;
    Ok(assemble(
        Polar::new(lambda.norm(), lambda.arg()),
        Polar::new(lam1.norm(), lam1.arg()),
        gamma,
    ))
}

/// Boundary values of `M` on the negative axis, oriented left to right with
/// `+` the upper side.
pub fn model_m_side(x: f64, side: Side, gamma: f64) -> Result<Matrix2C> {
    if !(x < 0.0 && x.is_finite()) || x == -1.0 {
        return Err(Error::Domain(format!("boundary value needs x < 0, x ≠ -1, got {x}")));
    }
    let sign = match side {
        Side::Plus => 1.0,
        Side::Minus => -1.0,
    };
    let lam1 = if x < -1.0 {
        Polar::new(-1.0 - x, sign * PI)
    } else {
        Polar::new(1.0 + x, 0.0)
    };
    Ok(assemble(Polar::new(-x, sign * PI), lam1, gamma))
}

/// Jump of `M` at `x < 0`, `M₊ = M₋ J`.
pub fn model_m_jump(x: f64, gamma: f64) -> Matrix2C {
    let z = Complex64::new(0.0, 0.0);
    let e = if x < -1.0 { (SQRT_2 * PI * gamma).exp() } else { 1.0 };
    Matrix2C::new(z, e.into(), (-1.0 / e).into(), z)
}

/// Largest entry deviation of `M(λ)[λ^{-σ₃/4} B e^{-√2πγσ₃/2}]⁻¹` from the
/// unipotent limit `(1, 0; i√2γ, 1)`; decays like `1/|λ|`.
pub fn model_m_asymptotic_deviation(lambda: Complex64, gamma: f64) -> Result<f64> {
    let m = model_m(lambda, gamma)?;
    let lead = Matrix2C::sigma3_power(lambda.powf(-0.25))
        * b_matrix()
        * Matrix2C::sigma3_power((-SQRT_2 * PI * gamma / 2.0).exp().into());
    let l = m * lead.inverse();
    let target = Matrix2C::lower(I * SQRT_2 * gamma);
    Ok(l.m
        .iter()
        .flatten()
        .zip(target.m.iter().flatten())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parametrix::check::jump_residual;

    const GAMMAS: [f64; 4] = [0.0, 0.3, -0.7, 1.2];

    #[test]
    fn unit_determinant() {
        for &g in &GAMMAS {
            for k in 0..50 {
                let l = Complex64::from_polar(0.01 * 1.3f64.powi(k), -3.0 + 0.12 * k as f64);
                let d = model_m(l, g).unwrap().det();
                assert!((d - 1.0).norm() < 1e-12, "γ={g} λ={l} det={d}");
            }
        }
    }

    #[test]
    fn boundary_jumps() {
        for &g in &GAMMAS {
            for &x in &[-40.0, -3.0, -1.5, -1.2, -0.8, -0.5, -0.3, -0.1, -0.02] {
                let p = model_m_side(x, Side::Plus, g).unwrap();
                let m = model_m_side(x, Side::Minus, g).unwrap();
                let res = (p - m * model_m_jump(x, g)).norm() / p.norm();
                assert!(res < 1e-12, "γ={g} x={x}: {res}");
                let off = jump_residual(
                    |l| model_m(l, g),
                    Complex64::new(x, 0.0),
                    I,
                    &model_m_jump(x, g),
                )
                .unwrap();
                assert!(off.passes(1e-10), "γ={g} x={x}: {off:?}");
            }
        }
    }

    #[test]
    fn large_lambda_limit() {
        for &g in &GAMMAS {
            for &a in &[0.0, 1.5, 2.9, -2.9] {
                let d = model_m_asymptotic_deviation(Complex64::from_polar(1e6, a), g).unwrap();
                assert!(d < 1e-4, "γ={g} arg={a}: {d}");
            }
            let near = model_m_asymptotic_deviation(Complex64::new(1e3, 0.0), g).unwrap();
            let far = model_m_asymptotic_deviation(Complex64::new(1e5, 0.0), g).unwrap();
            if g != 0.0 {
                assert!(far < near * 0.05, "γ={g}: {near} {far}");
            }
        }
    }

    #[test]
    fn axis_rejected() {
        assert!(model_m(Complex64::new(-2.0, 0.0), 0.3).is_err());
        assert!(model_m_side(1.0, Side::Plus, 0.3).is_err());
    }
}
