use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix2C;
use crate::error::{Error, Result};
use crate::special::{bessel_i, bessel_k, Polar, Side};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const RAY_TOL: f64 = 1e-14;

/// The three jump rays, all oriented towards the origin: `Γ̂₁` at
/// `arg z = 2π/3`, `Γ̂₂` along the negative axis, `Γ̂₃` at `arg z = -2π/3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BesselRay {
    Gamma1,
    Gamma2,
    Gamma3,
}

impl BesselRay {
    pub const ALL: [BesselRay; 3] = [BesselRay::Gamma1, BesselRay::Gamma2, BesselRay::Gamma3];

    pub fn angle(self) -> f64 {
        match self {
            BesselRay::Gamma1 => 2.0 * PI / 3.0,
            BesselRay::Gamma2 => PI,
            BesselRay::Gamma3 => -2.0 * PI / 3.0,
        }
    }

    /// Unit normal pointing to the `+` (left) side.
    pub fn plus_normal(self) -> Complex64 {
        -I * Complex64::from_polar(1.0, self.angle())
    }
}

#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Region {
    I,
    II,
    III,
}

fn right_factor(alpha: f64, region: Region) -> Matrix2C {
    match region {
        Region::I => Matrix2C::identity(),
        Region::II => Matrix2C::lower(-Complex64::from_polar(1.0, alpha * PI)),
        Region::III => Matrix2C::lower(Complex64::from_polar(1.0, -alpha * PI)),
    }
}

fn evaluate(alpha: f64, p: Polar, region: Region) -> Result<Matrix2C> {
    let w = Polar::new(p.r.sqrt(), 0.5 * p.theta).to_complex();
    let bi = bessel_i(alpha, w)?;
    let bk = bessel_k(alpha, w)?;
    let base = Matrix2C::new(
        bi.value,
        I / PI * bk.value,
        PI * I * w * bi.derivative,
        -w * bk.derivative,
    );
    Ok(base * right_factor(alpha, region))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > -1.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("Bessel parametrix needs alpha > -1, got {alpha}")));
    }
    Ok(())
}

/// Jump matrix on the given ray, `Φ₊ = Φ₋ J`.
pub fn bessel_jump(ray: BesselRay, alpha: f64) -> Matrix2C {
    match ray {
        BesselRay::Gamma1 => Matrix2C::lower(Complex64::from_polar(1.0, alpha * PI)),
        BesselRay::Gamma2 => Matrix2C::real(0.0, 1.0, -1.0, 0.0),
        BesselRay::Gamma3 => Matrix2C::lower(Complex64::from_polar(1.0, -alpha * PI)),
    }
}

/// Bessel model solution `Φ_Bes^{(α)}(z)` off the three rays.
pub fn bessel_parametrix(z: Complex64, alpha: f64) -> Result<Matrix2C> {
    check_alpha(alpha)?;
    let r = z.norm();
    if r == 0.0 {
        return Err(Error::Domain("Φ_Bes is singular at the origin".into()));
    }
    let theta = z.arg();
    for ray in BesselRay::ALL {
        let d = (theta - ray.angle()).abs();
        if d <= RAY_TOL || (ray == BesselRay::Gamma2 && (theta + PI).abs() <= RAY_TOL) {
            return Err(Error::OnContour(format!("{z} lies on {ray:?}")));
        }
    }
    let region = if theta.abs() < 2.0 * PI / 3.0 {
        Region::I
    } else if theta > 0.0 {
        Region::II
    } else {
        Region::III
    };
    evaluate(alpha, Polar::new(r, theta), region)
}

/// Boundary value of `Φ_Bes` on `ray` at distance `r` from the origin.
pub fn bessel_parametrix_side(r: f64, ray: BesselRay, side: Side, alpha: f64) -> Result<Matrix2C> {
    check_alpha(alpha)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("ray distance must be positive, got {r}")));
    }
    let (theta, region) = match (ray, side) {
        (BesselRay::Gamma1, Side::Plus) => (ray.angle(), Region::I),
        (BesselRay::Gamma1, Side::Minus) => (ray.angle(), Region::II),
        (BesselRay::Gamma2, Side::Plus) => (PI, Region::II),
        (BesselRay::Gamma2, Side::Minus) => (-PI, Region::III),
        (BesselRay::Gamma3, Side::Plus) => (ray.angle(), Region::III),
        (BesselRay::Gamma3, Side::Minus) => (ray.angle(), Region::I),
    };
    evaluate(alpha, Polar::new(r, theta), region)
}

/// Largest entry of `L⁻¹ Φ_Bes(z) e^{-z^{1/2}σ₃} - (I + A/(8 z^{1/2}))`, where
/// `L = (π²z)^{-σ₃/4}(1 i; i 1)/√2` and
/// `A = (-1-4α², -2i; -2i, 1+4α²)`; of order `1/|z|`.
pub fn bessel_asymptotic_deviation(z: Complex64, alpha: f64) -> Result<f64> {
    let phi = bessel_parametrix(z, alpha)?;
    let w = z.sqrt();
    let left = Matrix2C::sigma3_power((PI * PI * z).powf(-0.25))
        * Matrix2C::new(1.0.into(), I, I, 1.0.into()).scale((1.0 / 2f64.sqrt()).into());
    let stripped = left.inverse() * phi * Matrix2C::sigma3_power((-w).exp());
    let a2 = 1.0 + 4.0 * alpha * alpha;
    let predicted = Matrix2C::identity()
        + Matrix2C::new((-a2).into(), -2.0 * I, -2.0 * I, a2.into()).scale((8.0 * w).inv());
    let diff = stripped - predicted;
    Ok(diff.m.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max))
}
