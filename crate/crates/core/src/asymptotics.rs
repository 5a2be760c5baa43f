//! Closed-form asymptotic predictions and CLT moments.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::cheb::ChebSeries;
use crate::counting::{arcsine_cdf, cdf_unchecked};
use crate::error::{Error, Result};
use crate::hankel::Jump;
use crate::quadrature::chebyshev_second;

const SQRT2_PI: f64 = SQRT_2 * PI;

/// Second-kind coefficients `d` with `𝒰w = Σ_m d_m U_m`.
///
/// `𝒰w(x) = (1/π) PV ∫ w(t)/(x - t) dt/√(1-t²)` maps `T_n` to `-U_{n-1}`
/// and annihilates constants.
fn hilbert_coeffs(w: &ChebSeries) -> Vec<f64> {
    w.coeffs().iter().skip(1).map(|c| -c).collect()
}

fn hilbert_unchecked(w: &ChebSeries, x: f64) -> f64 {
    ChebSeries::eval_second_kind(&hilbert_coeffs(w), x)
}

/// Finite Hilbert transform `𝒰w(x)` for `|x| < 1`.
pub fn hilbert_transform(w: &ChebSeries, x: f64) -> Result<f64> {
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::Domain(format!("Hilbert transform needs |x| < 1, got {x}")));
    }
    Ok(hilbert_unchecked(w, x))
}

/// `σ²(w; g) = -(1/2π) ∫ w'(s) 𝒰g(s) √(1-s²) ds`.
pub fn sigma2(w: &ChebSeries, g: &ChebSeries) -> f64 {
    if w.is_zero() || g.is_zero() {
        return 0.0;
    }
    let dw = w.derivative();
    let ug = hilbert_coeffs(g);
    let rule = chebyshev_second(w.degree() + g.degree() + 2);
    -rule.integrate(|s| dw.eval(s) * ChebSeries::eval_second_kind(&ug, s)) / (2.0 * PI)
}

/// CLT mean and variance of `Σ f(λ_j) - N ∫ f dμ_J`.
pub fn clt_moments(f: &ChebSeries, alpha: f64, beta: f64, t: &ChebSeries) -> (f64, f64) {
    let mu = 0.5 * (alpha + beta) * f.arcsine_mean() - 0.5 * alpha * f.eval(1.0)
        - 0.5 * beta * f.eval(-1.0)
        + sigma2(f, t);
    (mu, sigma2(f, f))
}

/// Cauchy mollifier `φ_ε(x) = ε / (π (x² + ε²))`.
pub fn mollifier(eps: f64, x: f64) -> f64 {
    eps / (PI * (x * x + eps * eps))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MollifierSpec {
    pub epsilon: f64,
    pub x: f64,
}

impl MollifierSpec {
    pub fn new(epsilon: f64, x: f64) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(Error::Domain(format!("epsilon must be positive, got {epsilon}")));
        }
        Ok(Self { epsilon, x })
    }
}

/// `w_{ε,x}(z) = √2π (1_{(-∞, x]} ⋆ φ_ε)(z) = √2π/2 + √2 arctan((x - z)/ε)`.
///
/// Decreases from `√2π` at `z → -∞` to 0 at `z → +∞`.
pub fn mollified_jump(m: &MollifierSpec, z: f64) -> f64 {
    0.5 * SQRT2_PI + SQRT_2 * ((m.x - z) / m.epsilon).atan()
}

/// Deterministic shift between `h_N(x)` and its centred version:
/// `√2π((α+β)F(x)/2 - (α/2)1_{x≥1} - (β/2)1_{x≥-1} - 𝒰t(x)√(1-x²)/(2π))`.
pub fn tilde_shift(x: f64, alpha: f64, beta: f64, t: &ChebSeries) -> Result<f64> {
    let f = arcsine_cdf(x)?;
    let ind = |c: bool| if c { 1.0 } else { 0.0 };
    let ut = if x.abs() < 1.0 {
        hilbert_unchecked(t, x) * (1.0 - x * x).sqrt()
    } else {
        0.0
    };
    Ok(SQRT2_PI
        * (0.5 * (alpha + beta) * f - 0.5 * alpha * ind(x >= 1.0) - 0.5 * beta * ind(x >= -1.0)
            - ut / (2.0 * PI)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub value: f64,
    /// False when the inputs lie outside the regime where the asymptotic
    /// statement is uniform.
    pub in_window: bool,
}

/// `log D_N(x; γ)/D_N(x; 0) ≈ √2πγN F(x) + (γ²/2) log N + (γ²/4) log(1-x²)`.
pub fn predict_edge_ratio(n: usize, x: f64, gamma: f64) -> Result<Prediction> {
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::Domain(format!("edge prediction needs |x| < 1, got {x}")));
    }
    let nf = n as f64;
    let window = 1.0 - nf.powi(-2) * nf.ln().ln();
    let in_window = x.abs() <= window;
    if !in_window {
        log::warn!("x = {x} lies outside the edge window |x| <= {window}");
    }
    let g2 = gamma * gamma;
    Ok(Prediction {
        value: SQRT2_PI * gamma * nf * cdf_unchecked(x)
            + 0.5 * g2 * nf.ln()
            + 0.25 * g2 * (1.0 - x * x).ln(),
        in_window,
    })
}

/// `log D_N(x₁, x₂; γ₁, γ₂)/D_N(x₁; γ₁+γ₂) ≈
/// √2 N γ₂ (arcsin x₂ - arcsin x₁) - γ₁γ₂ max{0, log(|x₁-x₂| N)}`.
pub fn predict_merging_ratio(n: usize, x1: f64, x2: f64, g1: f64, g2: f64) -> Result<f64> {
    if !(-1.0 < x1 && x1 < x2 && x2 < 1.0) {
        return Err(Error::Domain(format!("need -1 < x1 < x2 < 1, got ({x1}, {x2})")));
    }
    let nf = n as f64;
    Ok(SQRT_2 * nf * g2 * (x2.asin() - x1.asin())
        - g1 * g2 * ((x2 - x1) * nf).ln().max(0.0))
}

/// Leading terms of `log D_N(jumps; t + w)/D_N(jumps; t)` in the separated
/// regime.
pub fn predict_separated_ratio(
    n: usize,
    w: &ChebSeries,
    jumps: &[Jump],
    alpha: f64,
    beta: f64,
    t: &ChebSeries,
) -> Result<f64> {
    for j in jumps {
        if !(j.x > -1.0 && j.x < 1.0) {
            return Err(Error::Domain(format!("jump at {} must lie inside (-1, 1)", j.x)));
        }
    }
    if jumps.windows(2).any(|p| p[0].x >= p[1].x) {
        return Err(Error::Domain("separated regime needs distinct ordered jumps".into()));
    }
    if w.is_zero() {
        return Ok(0.0);
    }
    let c0 = w.arcsine_mean();
    let mut v = n as f64 * c0 + 0.5 * (alpha + beta) * c0
        - 0.5 * beta * w.eval(-1.0)
        - 0.5 * alpha * w.eval(1.0)
        + 0.5 * sigma2(w, w)
        + sigma2(w, t);
    for j in jumps {
        v += j.gamma / SQRT_2 * (1.0 - j.x * j.x).sqrt() * hilbert_unchecked(w, j.x);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hilbert_of_low_degree() {
        for &x in &[-0.7, 0.0, 0.4] {
            assert_eq!(hilbert_transform(&ChebSeries::constant(3.0), x).unwrap(), 0.0);
            assert_eq!(hilbert_transform(&ChebSeries::basis(1, 1.0), x).unwrap(), -1.0);
            assert!((hilbert_transform(&ChebSeries::basis(2, 1.0), x).unwrap() + 2.0 * x).abs() < 1e-15);
        }
        assert!(hilbert_transform(&ChebSeries::basis(1, 1.0), 1.0).is_err());
    }

    #[test]
    fn sigma2_basis_values() {
        let t1 = ChebSeries::basis(1, 1.0);
        assert!((sigma2(&t1, &t1) - 0.25).abs() < 1e-15);
        assert_eq!(sigma2(&ChebSeries::constant(2.0), &t1), 0.0);
        let t3 = ChebSeries::basis(3, 1.0);
        assert!((sigma2(&t3, &t3) - 0.75).abs() < 1e-14);
        assert!(sigma2(&t1, &t3).abs() < 1e-15);
    }

    #[test]
    fn clt_examples() {
        let (mu, _) = clt_moments(&ChebSeries::basis(1, 1.0), 1.5, 0.5, &ChebSeries::zero());
        assert!((mu - (0.5 - 1.5) / 2.0).abs() < 1e-15);
        let (mu, s2) = clt_moments(&ChebSeries::constant(2.0), 1.0, 3.0, &ChebSeries::zero());
        assert!(mu.abs() < 1e-15);
        assert_eq!(s2, 0.0);
    }

    #[test]
    fn mollified_jump_limits() {
        let m = MollifierSpec::new(0.05, 0.3).unwrap();
        assert!((mollified_jump(&m, 0.3) - 0.5 * SQRT2_PI).abs() < 1e-15);
        assert!((mollified_jump(&m, -1e9) - SQRT2_PI).abs() < 1e-9);
        assert!(mollified_jump(&m, 1e9).abs() < 1e-9);
        assert!(mollified_jump(&m, 0.2) > mollified_jump(&m, 0.4));
        assert!(MollifierSpec::new(0.0, 0.1).is_err());
    }

    #[test]
    fn tilde_shift_endpoints() {
        let z = ChebSeries::zero();
        assert!(tilde_shift(1.0, 0.7, 1.3, &z).unwrap().abs() < 1e-15);
        assert!((tilde_shift(-1.0, 0.7, 1.3, &z).unwrap() + SQRT2_PI * 1.3 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn edge_prediction_algebra() {
        let (x, g) = (0.3, 0.6);
        let a = predict_edge_ratio(50, x, g).unwrap().value;
        let b = predict_edge_ratio(100, x, g).unwrap().value;
        let f = arcsine_cdf(x).unwrap();
        assert!((b - a - SQRT2_PI * g * 50.0 * f - 0.5 * g * g * 2f64.ln()).abs() < 1e-12);
        let z = predict_edge_ratio(40, 0.0, g).unwrap().value;
        assert!((z - (SQRT2_PI * g * 20.0 + 0.5 * g * g * 40f64.ln())).abs() < 1e-12);
        assert!(!predict_edge_ratio(40, 0.99999, g).unwrap().in_window);
    }

    #[test]
    fn merging_prediction_cases() {
        assert_eq!(predict_merging_ratio(50, 0.1, 0.12, 0.5, 0.0).unwrap(), 0.0);
        let v = predict_merging_ratio(10, 0.1, 0.15, 0.5, 0.5).unwrap();
        assert!((v - SQRT_2 * 10.0 * 0.5 * (0.15f64.asin() - 0.1f64.asin())).abs() < 1e-15);
    }

    #[test]
    fn separated_constant_is_exact() {
        let jumps = [Jump::new(-0.2, 0.4), Jump::new(0.5, -0.3)];
        let c = ChebSeries::constant(0.7);
        let v = predict_separated_ratio(33, &c, &jumps, 1.2, 0.4, &ChebSeries::basis(2, 0.3)).unwrap();
        assert!((v - 33.0 * 0.7).abs() < 1e-13);
        let z = predict_separated_ratio(33, &ChebSeries::zero(), &jumps, 1.2, 0.4, &ChebSeries::zero());
        assert_eq!(z.unwrap(), 0.0);
    }
}
