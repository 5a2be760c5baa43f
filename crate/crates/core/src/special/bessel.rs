use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::rgamma;
use super::taylor::{integrate, TaylorOde};
use super::WithDerivative;
use crate::error::{Error, Result};

/// Radius beyond which the Hankel-type asymptotic expansions are used; the
/// smallest term there is of order `e^{-40}`.
const ASYMPTOTIC_RADIUS: f64 = 20.0;
/// Largest tolerated `|w| - Re w` in the ascending series (cancellation
/// factor `e^4`).
const SERIES_SLACK: f64 = 4.0;

struct ModifiedBessel {
    nu2: f64,
}

impl TaylorOde for ModifiedBessel {
    fn next(&self, w0: Complex64, k: usize, c: &[Complex64]) -> Complex64 {
        // w² y'' + w y' - (w² + ν²) y = 0 about w0
        let kf = k as f64;
        let mut acc = w0 * ((kf + 1.0) * (2.0 * kf + 1.0)) * c[k + 1]
            + (kf * kf - self.nu2 - w0 * w0) * c[k];
        if k >= 1 {
            acc -= 2.0 * w0 * c[k - 1];
        }
        if k >= 2 {
            acc -= c[k - 2];
        }
        -acc / (w0 * w0 * ((kf + 1.0) * (kf + 2.0)))
    }
}

fn check(nu: f64, w: Complex64) -> Result<()> {
    if !(nu > -1.0 && nu.is_finite()) {
        return Err(Error::Domain(format!("Bessel order must exceed -1, got {nu}")));
    }
    if !(w.re >= 0.0) || w.norm() == 0.0 || !w.norm().is_finite() {
        return Err(Error::Domain(format!(
            "Bessel argument must be nonzero with Re w >= 0, got {w}"
        )));
    }
    Ok(())
}

fn series_i(nu: f64, w: Complex64) -> WithDerivative {
    let q = 0.25 * w * w;
    let mut term = rgamma(Complex64::new(nu + 1.0, 0.0));
    let mut sum = term;
    let mut dsum = term * nu;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        dsum += term * (2.0 * kf + nu);
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    let pre = (0.5 * w).powf(nu);
    WithDerivative::new(pre * sum, pre * dsum / w)
}

/// `Σ a_k(ν) w^{-k}` and its derivative; `alternate` flips the sign of odd
/// terms.
fn hankel_sum(nu: f64, w: Complex64, alternate: bool) -> (Complex64, Complex64) {
    let mu = 4.0 * nu * nu;
    let winv = w.inv();
    let mut a = Complex64::new(1.0, 0.0);
    let mut sum = a;
    let mut dsum = Complex64::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        a *= (mu - odd * odd) / (8.0 * kf) * winv;
        if alternate {
            a = -a;
        }
        let n = a.norm();
        if n > last {
            break;
        }
        sum += a;
        dsum -= kf * a * winv;
        if n <= 1e-17 * sum.norm() {
            break;
        }
        last = n;
    }
    (sum, dsum)
}

fn asymptotic_k(nu: f64, w: Complex64) -> WithDerivative {
    let (s, ds) = hankel_sum(nu, w, false);
    let a = (PI / (2.0 * w)).sqrt() * (-w).exp();
    let da = a * (-1.0 - 0.5 / w);
    WithDerivative::new(a * s, da * s + a * ds)
}

fn asymptotic_i(nu: f64, w: Complex64) -> WithDerivative {
    let root = (2.0 * PI * w).sqrt();
    let (s1, ds1) = hankel_sum(nu, w, true);
    let b = w.exp() / root;
    let db = b * (1.0 - 0.5 / w);
    let (s2, ds2) = hankel_sum(nu, w, false);
    let c = (-w).exp() / root;
    let dc = c * (-1.0 - 0.5 / w);
    let phase = if w.im > 0.0 {
        Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, nu * PI)
    } else if w.im < 0.0 {
        Complex64::new(0.0, -1.0) * Complex64::from_polar(1.0, -nu * PI)
    } else {
        Complex64::new(-(nu * PI).sin(), 0.0)
    };
    WithDerivative::new(
        b * s1 + phase * c * s2,
        db * s1 + b * ds1 + phase * (dc * s2 + c * ds2),
    )
}

/// Modified Bessel function `I_ν(w)` and its derivative for `ν > -1`,
/// `Re w ≥ 0`.
pub fn bessel_i(nu: f64, w: Complex64) -> Result<WithDerivative> {
    check(nu, w)?;
    let r = w.norm();
    if r >= ASYMPTOTIC_RADIUS {
        return Ok(asymptotic_i(nu, w));
    }
    if r - w.re <= SERIES_SLACK {
        return Ok(series_i(nu, w));
    }
    // I is dominant outward for Re w > 0 and neutral on the imaginary axis.
    let dir = w / r;
    let start = dir * (SERIES_SLACK / (1.0 - dir.re));
    let s = series_i(nu, start);
    let (v, d) = integrate(&ModifiedBessel { nu2: nu * nu }, start, w, s.value, s.derivative)?;
    Ok(WithDerivative::new(v, d))
}

/// Modified Bessel function `K_ν(w)` and its derivative for `ν > -1`,
/// `Re w ≥ 0`.
pub fn bessel_k(nu: f64, w: Complex64) -> Result<WithDerivative> {
    check(nu, w)?;
    let r = w.norm();
    if r >= ASYMPTOTIC_RADIUS {
        return Ok(asymptotic_k(nu, w));
    }
    // K is dominant inward on the closed right half-plane.
    let start = w * (ASYMPTOTIC_RADIUS / r);
    let s = asymptotic_k(nu, start);
    let (v, d) = integrate(&ModifiedBessel { nu2: nu * nu }, start, w, s.value, s.derivative)?;
    Ok(WithDerivative::new(v, d))
}
