//! Confluent hypergeometric functions with `b = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::branch::Polar;
use super::gamma::{digamma, rgamma};
use super::taylor::{integrate, TaylorOde};
use super::WithDerivative;
use crate::error::{Error, Result};

/// Below this modulus the logarithmic series loses at most a factor `~e^3`.
const SERIES_RADIUS: f64 = 3.0;
/// Above this modulus the asymptotic series is accurate to `~e^{-40}`.
const ASYMPTOTIC_RADIUS: f64 = 40.0;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

struct Kummer1 {
    a: Complex64,
}

impl TaylorOde for Kummer1 {
    fn next(&self, z0: Complex64, k: usize, c: &[Complex64]) -> Complex64 {
        // z y'' + (1 - z) y' - a y = 0 about z0
        let kf = k as f64;
        ((kf + self.a) * c[k] - (kf + 1.0) * (kf + 1.0 - z0) * c[k + 1])
            / (z0 * ((kf + 1.0) * (kf + 2.0)))
    }
}

fn nonpositive_integer(a: Complex64) -> bool {
    a.im == 0.0 && a.re <= 0.0 && a.re.fract() == 0.0
}

fn m_series(a: Complex64, z: Complex64) -> WithDerivative {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut dsum = Complex64::new(0.0, 0.0);
    for k in 0..2000 {
        let kf = k as f64;
        // d/dz of t_{k+1} z^{k+1} = (k+1) t_{k+1} z^k
        let dterm = term * (a + kf) / (kf + 1.0);
        dsum += dterm;
        term = dterm * z / (kf + 1.0);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && dterm.norm() <= 1e-17 * dsum.norm() && kf > z.norm() {
            break;
        }
        if term.norm() == 0.0 {
            break;
        }
    }
    WithDerivative::new(sum, dsum)
}

fn u_log_series(a: Complex64, z: Polar) -> WithDerivative {
    let zc = z.to_complex();
    let log = z.ln();
    let mut t = Complex64::new(1.0, 0.0);
    let mut psi_a = digamma(a);
    let mut psi_1 = Complex64::new(-0.577_215_664_901_532_9, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut dsum = Complex64::new(0.0, 0.0);
    for k in 0..2000 {
        let kf = k as f64;
        let d = log + psi_a - 2.0 * psi_1;
        let term = t * d;
        sum += term;
        dsum += t * (kf * d + 1.0);
        if kf > zc.norm() && term.norm() <= 1e-17 * sum.norm() && t.norm() <= 1e-17 * sum.norm() {
            break;
        }
        t *= (a + kf) * zc / ((kf + 1.0) * (kf + 1.0));
        psi_a += (a + kf).inv();
        psi_1 += 1.0 / (kf + 1.0);
    }
    let g = -rgamma(a);
    WithDerivative::new(g * sum, g * dsum / zc)
}

fn u_asymptotic(a: Complex64, z: Polar) -> WithDerivative {
    let zc = z.to_complex();
    let mz_inv = -zc.inv();
    let mut s = Complex64::new(1.0, 0.0);
    let mut sum = s;
    let mut dsum = -a * s;
    let mut last = f64::INFINITY;
    for k in 0..400 {
        let kf = k as f64;
        let next = s * (a + kf) * (a + kf) / (kf + 1.0) * mz_inv;
        let n = next.norm();
        if n > last {
            break;
        }
        s = next;
        sum += s;
        dsum += s * (-a - (kf + 1.0));
        if n <= 1e-17 * sum.norm() {
            break;
        }
        last = n;
    }
    let p = z.powc(-a);
    WithDerivative::new(p * sum, p * dsum / zc)
}

fn u_principal(a: Complex64, z: Polar) -> Result<WithDerivative> {
    if z.r <= SERIES_RADIUS {
        return Ok(u_log_series(a, z));
    }
    if z.r >= ASYMPTOTIC_RADIUS {
        return Ok(u_asymptotic(a, z));
    }
    let ode = Kummer1 { a };
    let target = z.to_complex();
    // The competing solution behaves like e^z: integrate towards the side
    // where it is recessive.
    let anchor = if target.re >= 0.0 {
        Polar::new(ASYMPTOTIC_RADIUS, z.theta)
    } else {
        Polar::new(SERIES_RADIUS, z.theta)
    };
    let start = if anchor.r == ASYMPTOTIC_RADIUS {
        u_asymptotic(a, anchor)
    } else {
        u_log_series(a, anchor)
    };
    let (v, d) = integrate(&ode, anchor.to_complex(), target, start.value, start.derivative)?;
    Ok(WithDerivative::new(v, d))
}

fn check_a(a: Complex64) -> Result<()> {
    if !(a.re.is_finite() && a.im.is_finite()) {
        return Err(Error::Domain(format!("parameter a = {a} is not finite")));
    }
    if nonpositive_integer(a) {
        return Err(Error::Domain(format!(
            "U(a, 1, z) is polynomial at a = {a}; the logarithmic representation is singular there"
        )));
    }
    Ok(())
}

/// Kummer's function `M(a, 1, z)` and its derivative.
///
/// Away from the positive real axis the connection formula through two
/// Tricomi functions is used; its relative accuracy degrades like
/// `e^{π|Im a|}`.
pub fn kummer_m1(a: Complex64, z: Complex64) -> Result<WithDerivative> {
    if !(a.re.is_finite() && a.im.is_finite() && z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain("non-finite argument to M(a, 1, z)".into()));
    }
    // The ascending series only cancels away from the positive real axis.
    if z.norm() - z.re <= SERIES_RADIUS || nonpositive_integer(a) {
        return Ok(m_series(a, z));
    }
    if nonpositive_integer(1.0 - a) {
        // Kummer transformation onto a terminating series.
        let m = m_series(1.0 - a, -z);
        let e = z.exp();
        return Ok(WithDerivative::new(e * m.value, e * (m.value - m.derivative)));
    }
    // M(a,1,z) = e^{∓πia}/Γ(1-a) U(a,1,z) + e^{±πi(1-a)}/Γ(a) e^z U(1-a,1,e^{±πi}z)
    let p = Polar::new(z.norm(), z.arg());
    let s = if p.theta <= 0.0 { 1.0 } else { -1.0 };
    let u1 = u_principal(a, p)?;
    let u2 = u_principal(1.0 - a, p.rotate(s * PI))?;
    let c1 = (-s * PI * I * a).exp() * rgamma(1.0 - a);
    let c2 = (s * PI * I * (1.0 - a)).exp() * rgamma(a) * z.exp();
    Ok(WithDerivative::new(
        c1 * u1.value + c2 * u2.value,
        c1 * u1.derivative + c2 * (u2.value - u2.derivative),
    ))
}

/// Tricomi's function `U(a, 1, z)` (principal branch, `arg z ∈ (-π, π]`) and
/// its derivative.
pub fn tricomi_u1(a: Complex64, z: Complex64) -> Result<WithDerivative> {
    check_a(a)?;
    if z.norm() == 0.0 {
        return Err(Error::Domain("U(a, 1, z) is logarithmically singular at z = 0".into()));
    }
    u_principal(a, Polar::new(z.norm(), z.arg()))
}

/// `U(a, 1, z)` continued analytically to the point `z` of the Riemann
/// surface of the logarithm, via `U(a,1,ze^{2πim}) = U(a,1,z) - 2πim M(a,1,z)/Γ(a)`.
pub fn tricomi_u1_polar(a: Complex64, z: Polar) -> Result<WithDerivative> {
    check_a(a)?;
    if !(z.r > 0.0 && z.r.is_finite() && z.theta.is_finite()) {
        return Err(Error::Domain(format!("invalid point (r = {}, θ = {})", z.r, z.theta)));
    }
    if z.r <= SERIES_RADIUS {
        return Ok(u_log_series(a, z));
    }
    let m = ((z.theta - PI) / (2.0 * PI)).ceil();
    let base = Polar::new(z.r, z.theta - 2.0 * PI * m);
    let u = u_principal(a, base)?;
    if m == 0.0 {
        return Ok(u);
    }
    let mk = kummer_m1(a, base.to_complex())?;
    let c = 2.0 * PI * I * m * rgamma(a);
    Ok(WithDerivative::new(u.value - c * mk.value, u.derivative - c * mk.derivative))
}

#[cfg(test)]
mod tests {
    use super::*;

    const fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    // (a, z, U(a,1,z), M(a,1,z)) from mpmath hyperu / hyp1f1.
    const REFERENCE: [(Complex64, Complex64, Complex64, Complex64); 8] = [
        (c(0.0, 0.35), c(0.2, 0.1), c(1.3179528098518771, 0.5409259402013175), c(0.9603539522339832, 0.07131606120375625)),
        (c(0.0, 0.35), c(-3.0, 4.0), c(1.7892313391698156, -1.182643503753368), c(0.5641631225516979, -0.5489819508504344)),
        (c(1.0, -0.35), c(7.0, 9.0), c(0.06322027731720238, 0.002143107168476371), c(-193.33798896124048, 1638.7052265267766)),
        (c(-0.0, -0.35), c(-20.0, 2.0), c(0.17059635065578493, 0.29721347436468837), c(0.3730110574288592, 1.0707349752856834)),
        (c(1.0, 0.8), c(-30.0, -15.0), c(0.0036002241125431384, -0.0003330268827689878), c(0.021538920228481303, 0.05145068651052397)),
        (c(0.0, 0.6), c(0.0, 55.0), c(-1.911243506729125, -1.7128807568696343), c(-0.45424880163089515, -0.22020051789692674)),
        (c(0.0, 1.2), c(0.05, -3.0), c(0.1521388706580464, -0.1369702385221108), c(5.510792114928935, -5.345383378087849)),
        (c(-0.0, -0.2), c(-10.0, -0.001), c(1.6719714368629175, 0.8296700126123916), c(0.8643764154129437, 0.5576100245617185)),
    ];

    #[test]
    fn reference_values() {
        for (a, z, u_ref, m_ref) in REFERENCE {
            let u = tricomi_u1(a, z).unwrap().value;
            let m = kummer_m1(a, z).unwrap().value;
            assert!(rel(u, u_ref) < 1e-12, "U({a},1,{z}) = {u}, want {u_ref}");
            assert!(rel(m, m_ref) < 1e-12, "M({a},1,{z}) = {m}, want {m_ref}");
        }
    }

    #[test]
    fn derivatives_match_differences() {
        let a = c(0.0, 0.35);
        for &z in &[c(0.3, 0.4), c(-4.0, 3.0), c(10.0, -7.0), c(-25.0, 1.0), c(0.0, 50.0)] {
            let h = 1e-6 * z.norm();
            let fd = (tricomi_u1(a, z + h).unwrap().value - tricomi_u1(a, z - h).unwrap().value) / (2.0 * h);
            let d = tricomi_u1(a, z).unwrap().derivative;
            assert!(rel(d, fd) < 1e-7, "z={z}: {d} vs {fd}");
        }
    }

    #[test]
    fn wronskian() {
        // W{M(a,1,z), U(a,1,z)} = -e^z / (Γ(a) z)
        for &a in &[c(0.0, 0.4), c(1.0, -0.7), c(0.5, 2.0)] {
            for &z in &[c(0.5, 0.2), c(-3.0, -5.0), c(8.0, 8.0), c(-12.0, 30.0)] {
                let m = kummer_m1(a, z).unwrap();
                let u = tricomi_u1(a, z).unwrap();
                let w = m.value * u.derivative - m.derivative * u.value;
                let want = -z.exp() * rgamma(a) / z;
                // The two products cancel heavily when Re z < 0.
                let scale = (m.value * u.derivative).norm() + (m.derivative * u.value).norm();
                let cond = (PI * a.im.abs()).exp();
                assert!((w - want).norm() < 1e-13 * scale * cond, "a={a} z={z}: {w} vs {want}");
            }
        }
    }

    #[test]
    fn continuation_is_consistent_across_radii() {
        // Both sides of the series radius must agree on a non-principal sheet.
        let a = c(0.0, -0.3);
        for &theta in &[2.0, 3.5, 5.0, -2.5] {
            let (p, q) = (Polar::new(SERIES_RADIUS - 1e-9, theta), Polar::new(SERIES_RADIUS + 1e-9, theta));
            let lo = tricomi_u1_polar(a, p).unwrap();
            let hi = tricomi_u1_polar(a, q).unwrap();
            let predicted = lo.value + lo.derivative * (q.to_complex() - p.to_complex());
            assert!(rel(hi.value, predicted) < 1e-12, "θ={theta}: {} vs {predicted}", hi.value);
        }
    }

    #[test]
    fn rejects_polynomial_case() {
        assert!(tricomi_u1(c(0.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(tricomi_u1(c(-2.0, 0.0), c(1.0, 0.0)).is_err());
    }
}
