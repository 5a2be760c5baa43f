use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix2C;
use crate::error::{Error, Result};
use crate::special::{gamma, rgamma, tricomi_u1_polar, Polar, Side};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const RAY_TOL: f64 = 1e-14;

/// The six jump rays at `arg z = 0, π/4, 3π/4, π, 5π/4, 7π/4`. `Σ̂₁, Σ̂₂, Σ̂₆`
/// are oriented away from the origin, `Σ̂₃, Σ̂₄, Σ̂₅` towards it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HgRay {
    Sigma1,
    Sigma2,
    Sigma3,
    Sigma4,
    Sigma5,
    Sigma6,
}

impl HgRay {
    pub const ALL: [HgRay; 6] = [
        HgRay::Sigma1,
        HgRay::Sigma2,
        HgRay::Sigma3,
        HgRay::Sigma4,
        HgRay::Sigma5,
        HgRay::Sigma6,
    ];

    pub fn angle(self) -> f64 {
        PI * match self {
            HgRay::Sigma1 => 0.0,
            HgRay::Sigma2 => 0.25,
            HgRay::Sigma3 => 0.75,
            HgRay::Sigma4 => 1.0,
            HgRay::Sigma5 => 1.25,
            HgRay::Sigma6 => 1.75,
        }
    }

    fn outward(self) -> bool {
        matches!(self, HgRay::Sigma1 | HgRay::Sigma2 | HgRay::Sigma6)
    }

    /// Unit normal pointing to the `+` (left) side.
    pub fn plus_normal(self) -> Complex64 {
        let e = Complex64::from_polar(1.0, self.angle());
        if self.outward() {
            I * e
        } else {
            -I * e
        }
    }
}

/// `e^{iπβ}`; `β` is purely imaginary so this is real.
fn e_pi(beta: Complex64, k: f64) -> Complex64 {
    (I * PI * k * beta).exp()
}

/// Jump matrix on `ray`, `Φ₊ = Φ₋ Ĵ`.
pub fn hg_jump(ray: HgRay, beta: Complex64) -> Matrix2C {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match ray {
        HgRay::Sigma1 => Matrix2C::new(z, e_pi(beta, -1.0), -e_pi(beta, 1.0), z),
        HgRay::Sigma2 => Matrix2C::new(one, z, e_pi(beta, 1.0), one),
        HgRay::Sigma3 => Matrix2C::new(one, z, e_pi(beta, -1.0), one),
        HgRay::Sigma4 => Matrix2C::new(z, e_pi(beta, 1.0), -e_pi(beta, -1.0), z),
        HgRay::Sigma5 => Matrix2C::new(one, z, e_pi(beta, -1.0), one),
        HgRay::Sigma6 => Matrix2C::new(one, z, e_pi(beta, 1.0), one),
    }
}

/// Right factor turning the continued sector-1 formula into the solution in
/// sector `k` (1-based). Sectors 2, 3 are reached counterclockwise and
/// sectors 4 to 6 clockwise, which keeps the continuation within
/// `arg z ∈ [-π, π]`.
fn sector_factor(beta: Complex64, k: usize) -> Matrix2C {
    let j = |r| hg_jump(r, beta);
    match k {
        1 => Matrix2C::identity(),
        2 => j(HgRay::Sigma2),
        3 => j(HgRay::Sigma2) * j(HgRay::Sigma3).inverse(),
        4 => j(HgRay::Sigma1).inverse() * j(HgRay::Sigma6).inverse() * j(HgRay::Sigma5),
        5 => j(HgRay::Sigma1).inverse() * j(HgRay::Sigma6).inverse(),
        _ => j(HgRay::Sigma1).inverse(),
    }
}

/// Argument at which the sector-1 formula is continued for sector `k`.
fn branch_angle(theta: f64, k: usize) -> f64 {
    if k >= 4 {
        theta - 2.0 * PI
    } else {
        theta
    }
}

fn check_beta(beta: Complex64) -> Result<()> {
    if !(beta.im.is_finite() && beta.re.is_finite()) || beta.re.abs() > 1e-12 {
        return Err(Error::InvalidSpec(format!(
            "the hypergeometric parametrix needs Re β = 0, got β = {beta}"
        )));
    }
    if beta.im == 0.0 {
        return Err(Error::Domain(
            "β = 0 is a pole of Γ(β) and Γ(-β) in the prefactors".into(),
        ));
    }
    Ok(())
}

/// The sector-1 formula continued to the point `(r, θ)` of the Riemann
/// surface of the logarithm, with its `z`-derivative.
fn base(beta: Complex64, p: Polar) -> Result<(Matrix2C, Matrix2C)> {
    let z = p.to_complex();
    let up = p.rotate(0.5 * PI);
    let dn = p.rotate(-0.5 * PI);
    let u11 = tricomi_u1_polar(beta, up)?;
    let u12 = tricomi_u1_polar(1.0 - beta, dn)?;
    let u21 = tricomi_u1_polar(1.0 + beta, up)?;
    let u22 = tricomi_u1_polar(-beta, dn)?;
    let em = (-0.5 * I * z).exp();
    let ep = (0.5 * I * z).exp();
    let g12 = -gamma(1.0 - beta) * rgamma(beta) * e_pi(beta, 1.0);
    let g21 = -gamma(1.0 + beta) * rgamma(-beta) * e_pi(beta, 1.0);
    // Left normalisation diag(e^{-βπi}, 1), fixing Φ₁₁(0) = Γ(1-β).
    let c11 = e_pi(beta, 1.0);
    let c12 = g12 * e_pi(beta, -1.0);
    let c21 = g21;
    let c22 = Complex64::new(1.0, 0.0);
    // d/dz ψ(a,1,e^{±iπ/2}z) = ±i ψ'(·); d/dz e^{∓iz/2} = ∓(i/2) e^{∓iz/2}
    let val = Matrix2C::new(
        c11 * u11.value * em,
        c12 * u12.value * ep,
        c21 * u21.value * em,
        c22 * u22.value * ep,
    );
    let der = Matrix2C::new(
        c11 * em * (I * u11.derivative - 0.5 * I * u11.value),
        c12 * ep * (-I * u12.derivative + 0.5 * I * u12.value),
        c21 * em * (I * u21.derivative - 0.5 * I * u21.value),
        c22 * ep * (-I * u22.derivative + 0.5 * I * u22.value),
    );
    Ok((val, der))
}

fn locate(z: Complex64) -> Result<(Polar, usize)> {
    let r = z.norm();
    if r == 0.0 {
        return Err(Error::Domain("Φ_HG is singular at the origin".into()));
    }
    let mut theta = z.arg();
    if theta < 0.0 {
        theta += 2.0 * PI;
    }
    for ray in HgRay::ALL {
        let d = (theta - ray.angle()).abs();
        if d <= RAY_TOL || (ray == HgRay::Sigma1 && (theta - 2.0 * PI).abs() <= RAY_TOL) {
            return Err(Error::OnContour(format!("{z} lies on {ray:?}")));
        }
    }
    let sector = match theta {
        t if t < 0.25 * PI => 1,
        t if t < 0.75 * PI => 2,
        t if t < PI => 3,
        t if t < 1.25 * PI => 4,
        t if t < 1.75 * PI => 5,
        _ => 6,
    };
    Ok((Polar::new(r, theta), sector))
}

/// `Φ_HG(z)` and `Φ_HG'(z)` off the six rays.
pub fn hg_with_derivative(z: Complex64, beta: Complex64) -> Result<(Matrix2C, Matrix2C)> {
    check_beta(beta)?;
    let (p, sector) = locate(z)?;
    let (v, d) = base(beta, Polar::new(p.r, branch_angle(p.theta, sector)))?;
    let f = sector_factor(beta, sector);
    Ok((v * f, d * f))
}

/// Confluent hypergeometric model solution `Φ_HG(z; β)`, `Re β = 0`.
pub fn hg_parametrix(z: Complex64, beta: Complex64) -> Result<Matrix2C> {
    Ok(hg_with_derivative(z, beta)?.0)
}

/// Boundary value of `Φ_HG` on `ray` at distance `r` from the origin.
pub fn hg_parametrix_side(r: f64, ray: HgRay, side: Side, beta: Complex64) -> Result<Matrix2C> {
    check_beta(beta)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("ray distance must be positive, got {r}")));
    }
    let (theta, sector) = match (ray, side) {
        (HgRay::Sigma1, Side::Plus) => (0.0, 1),
        (HgRay::Sigma1, Side::Minus) => (2.0 * PI, 6),
        (HgRay::Sigma2, Side::Plus) => (ray.angle(), 2),
        (HgRay::Sigma2, Side::Minus) => (ray.angle(), 1),
        (HgRay::Sigma3, Side::Plus) => (ray.angle(), 2),
        (HgRay::Sigma3, Side::Minus) => (ray.angle(), 3),
        (HgRay::Sigma4, Side::Plus) => (ray.angle(), 3),
        (HgRay::Sigma4, Side::Minus) => (ray.angle(), 4),
        (HgRay::Sigma5, Side::Plus) => (ray.angle(), 4),
        (HgRay::Sigma5, Side::Minus) => (ray.angle(), 5),
        (HgRay::Sigma6, Side::Plus) => (ray.angle(), 6),
        (HgRay::Sigma6, Side::Minus) => (ray.angle(), 5),
    };
    let theta = branch_angle(theta, sector);
    Ok(base(beta, Polar::new(r, theta))?.0 * sector_factor(beta, sector))
}

/// Values near the origin along `arg z = 3π/8`: entries (1,1) and (2,1) of
/// `Φ_HG` and entry (2,1) of `Φ_HG⁻¹Φ_HG'` at `|z| = r`.
pub fn hg_origin_values(beta: Complex64, r: f64) -> Result<[Complex64; 3]> {
    let (v, d) = hg_with_derivative(Complex64::from_polar(r, 0.375 * PI), beta)?;
    let log_der = v.inverse() * d;
    Ok([v.m[0][0], v.m[1][0], log_der.m[1][0]])
}

/// `-2πβ / (e^{πiβ} - e^{-πiβ})`.
pub fn hg_log_derivative_limit(beta: Complex64) -> Complex64 {
    -2.0 * PI * beta / (e_pi(beta, 1.0) - e_pi(beta, -1.0))
}
