use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::bessel::{bessel_jump, bessel_parametrix, BesselRay};
use super::check::{jump_residual, JumpResidual};
use super::global::{global_jump, global_parametrix, SzegoSpec};
use super::hg::{hg_jump, hg_log_derivative_limit, hg_origin_values, hg_parametrix, HgRay};
use super::matrix::Matrix2C;
use super::model::{model_m, model_m_asymptotic_deviation, model_m_jump};
use crate::error::{Error, Result};
use crate::rng;
use crate::special::gamma as gammafn;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub const PINF_JUMP_TOL: f64 = 1e-10;
pub const BESSEL_JUMP_TOL: f64 = 1e-9;
pub const HG_JUMP_TOL: f64 = 1e-8;
pub const M_JUMP_TOL: f64 = 1e-10;
pub const DET_TOL: f64 = 1e-10;
pub const HG_LIMIT_TOL: f64 = 1e-6;
pub const M_ASYMPTOTIC_TOL: f64 = 1e-4;
/// Number of random points in each determinant check.
pub const DET_POINTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParametrixObject {
    Pinf,
    Bessel,
    Hg,
    M,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<JumpResidual>,
}

impl CheckLine {
    fn scalar(name: String, value: f64, tolerance: f64) -> Self {
        Self {
            name,
            value,
            tolerance,
            passed: value < tolerance,
            residual: None,
        }
    }

    fn jump(name: String, r: JumpResidual, tolerance: f64) -> Self {
        Self {
            name,
            value: r.extrapolated,
            tolerance,
            passed: r.passes(tolerance),
            residual: Some(r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParametrixReport {
    pub object: ParametrixObject,
    pub checks: Vec<CheckLine>,
    pub passed: bool,
}

impl ParametrixReport {
    fn new(object: ParametrixObject, checks: Vec<CheckLine>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self {
            object,
            checks,
            passed,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Worst `|det - 1|` over `DET_POINTS` points drawn by `point`; points the
/// object rejects (on a contour) are redrawn.
fn det_check(
    name: &str,
    seed: u64,
    mut point: impl FnMut(&mut rng::StreamRng) -> Complex64,
    f: impl Fn(Complex64) -> Result<Matrix2C>,
) -> Result<CheckLine> {
    let mut rng = rng::stream(rng::derive_seed(seed, name), 0);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < DET_POINTS {
        let z = point(&mut rng);
        match f(z) {
            Ok(m) => {
                worst = worst.max((m.det() - 1.0).norm());
                done += 1;
            }
            Err(Error::OnContour(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(CheckLine::scalar(format!("{name}: max |det - 1| over {DET_POINTS} points"), worst, DET_TOL))
}

fn disc_point(rng: &mut rng::StreamRng, r_max: f64) -> Complex64 {
    let r = r_max * rng.random::<f64>().max(1e-3);
    Complex64::from_polar(r, PI * (2.0 * rng.random::<f64>() - 1.0))
}

/// Jump residuals of `P∞` on `(-1, 1)` at points at least 0.02 away from
/// the endpoints and jumps, plus the determinant check.
pub fn pinf_suite(s: &SzegoSpec, seed: u64) -> Result<ParametrixReport> {
    s.validate()?;
    let mut checks = Vec::new();
    let far = |x: f64| s.jumps.iter().all(|j| (j.x - x).abs() >= 0.02);
    for k in 0..13 {
        let x = -0.96 + 0.16 * k as f64;
        if !far(x) {
            continue;
        }
        let r = jump_residual(
            |z| global_parametrix(z, s),
            Complex64::new(x, 0.0),
            I,
            &global_jump(x, s),
        )?;
        checks.push(CheckLine::jump(format!("P∞ jump at x = {x:.2}"), r, PINF_JUMP_TOL));
    }
    checks.push(det_check("P∞", seed, |g| disc_point(g, 4.0), |z| global_parametrix(z, s))?);
    Ok(ParametrixReport::new(ParametrixObject::Pinf, checks))
}

/// Jump residuals of `Φ_Bes` on its three rays and the determinant check.
pub fn bessel_suite(alpha: f64, seed: u64) -> Result<ParametrixReport> {
    let mut checks = Vec::new();
    for ray in BesselRay::ALL {
        for &r in &[0.1, 1.0, 5.0, 20.0] {
            let res = jump_residual(
                |z| bessel_parametrix(z, alpha),
                Complex64::from_polar(r, ray.angle()),
                ray.plus_normal(),
                &bessel_jump(ray, alpha),
            )?;
            checks.push(CheckLine::jump(format!("Φ_Bes jump on {ray:?} at r = {r}"), res, BESSEL_JUMP_TOL));
        }
    }
    checks.push(det_check("Φ_Bes", seed, |g| disc_point(g, 30.0), |z| bessel_parametrix(z, alpha))?);
    Ok(ParametrixReport::new(ParametrixObject::Bessel, checks))
}

/// Jump residuals of `Φ_HG` on its six rays, the limits at the origin and
/// the determinant check. `beta` must be purely imaginary and nonzero.
pub fn hg_suite(beta: Complex64, seed: u64) -> Result<ParametrixReport> {
    let mut checks = Vec::new();
    for ray in HgRay::ALL {
        for &r in &[0.1, 1.0, 5.0] {
            let res = jump_residual(
                |z| hg_parametrix(z, beta),
                Complex64::from_polar(r, ray.angle()),
                ray.plus_normal(),
                &hg_jump(ray, beta),
            )?;
            checks.push(CheckLine::jump(format!("Φ_HG jump on {ray:?} at r = {r}"), res, HG_JUMP_TOL));
        }
    }
    let [e11, e21, _] = hg_origin_values(beta, 1e-10)?;
    let g1 = gammafn(1.0 - beta);
    checks.push(CheckLine::scalar(
        "Φ_HG (1,1) → Γ(1-β), relative error at |z| = 1e-10".into(),
        (e11 - g1).norm() / g1.norm(),
        HG_LIMIT_TOL,
    ));
    let g2 = gammafn(1.0 + beta);
    checks.push(CheckLine::scalar(
        "Φ_HG (2,1) → Γ(1+β), relative error at |z| = 1e-10".into(),
        (e21 - g2).norm() / g2.norm(),
        HG_LIMIT_TOL,
    ));
    let [_, _, ld] = hg_origin_values(beta, 1e-7)?;
    let want = hg_log_derivative_limit(beta);
    checks.push(CheckLine::scalar(
        "(Φ_HG⁻¹Φ_HG')₂₁ → -2πβ/(e^{πiβ}-e^{-πiβ}), relative error at |z| = 1e-7".into(),
        (ld - want).norm() / want.norm(),
        HG_LIMIT_TOL,
    ));
    checks.push(det_check("Φ_HG", seed, |g| disc_point(g, 15.0), |z| hg_parametrix(z, beta))?);
    Ok(ParametrixReport::new(ParametrixObject::Hg, checks))
}

/// Jump residuals of `M` on `(-∞, -1)` and `(-1, 0)`, the large-λ form and
/// the determinant check.
pub fn model_m_suite(gamma: f64, seed: u64) -> Result<ParametrixReport> {
    let mut checks = Vec::new();
    for &x in &[-40.0, -5.0, -2.0, -1.2, -0.8, -0.5, -0.2, -0.05] {
        let res = jump_residual(|l| model_m(l, gamma), Complex64::new(x, 0.0), I, &model_m_jump(x, gamma))?;
        checks.push(CheckLine::jump(format!("M jump at λ = {x}"), res, M_JUMP_TOL));
    }
    let worst = [0.0, 1.0, 2.0, 3.0, -1.0, -2.0, -3.0]
        .iter()
        .map(|&a| model_m_asymptotic_deviation(Complex64::from_polar(1e6, a), gamma))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    checks.push(CheckLine::scalar(
        "M·[λ^{-σ₃/4}B e^{-√2πγσ₃/2}]⁻¹ vs (1,0; i√2γ,1) at |λ| = 1e6".into(),
        worst,
        M_ASYMPTOTIC_TOL,
    ));
    checks.push(det_check("M", seed, |g| disc_point(g, 50.0), |l| model_m(l, gamma))?);
    Ok(ParametrixReport::new(ParametrixObject::M, checks))
}
