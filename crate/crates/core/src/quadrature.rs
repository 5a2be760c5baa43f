//! Gaussian and double-exponential quadrature rules on [-1, 1].

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::tridiag;

/// Nodes and weights of an `n`-point rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Affine map of a rule on [-1, 1] to [a, b]; weights are scaled by the
    /// Jacobian only.
    pub fn mapped(&self, a: f64, b: f64) -> GaussRule {
        let h = 0.5 * (b - a);
        let m = 0.5 * (b + a);
        GaussRule {
            nodes: self.nodes.iter().map(|&x| m + h * x).collect(),
            weights: self.weights.iter().map(|&w| h * w).collect(),
        }
    }
}

/// Recurrence coefficients `(b_k, a_k²)`, `k < n`, of the monic Jacobi
/// polynomials for the weight `(1-x)^a (1+x)^b`, and the total mass.
pub fn jacobi_recurrence(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>, f64) {
    let ab = a + b;
    let mut diag = Vec::with_capacity(n);
    let mut off2 = Vec::with_capacity(n);
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        diag.push(if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        });
        off2.push(if k == 0 {
            0.0
        } else if k == 1 {
            // (k + a + b) / (2k + a + b - 1) cancels when a + b = -1.
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        });
    }
    let mass = ((ab + 1.0) * 2f64.ln() + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
        - ln_gamma(ab + 2.0))
    .exp();
    (diag, off2, mass)
}

fn golub_welsch(a: f64, b: f64, n: usize) -> Result<GaussRule> {
    let (diag, off2, mass) = jacobi_recurrence(a, b, n);
    let off: Vec<f64> = off2[1..].iter().map(|v| v.sqrt()).collect();
    let eig = tridiag::eigen(&diag, &off)?;
    Ok(GaussRule {
        nodes: eig.values,
        weights: eig.first.iter().map(|z| mass * z * z).collect(),
    })
}

type RuleKey = (u64, u64, usize);

fn cache() -> &'static Mutex<HashMap<RuleKey, Arc<GaussRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<GaussRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `n`-point Gauss–Jacobi rule for `∫ f(x) (1-x)^a (1+x)^b dx` on [-1, 1].
/// Rules are memoized.
pub fn gauss_jacobi(a: f64, b: f64, n: usize) -> Result<Arc<GaussRule>> {
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::Domain(format!(
            "Jacobi exponents must exceed -1, got ({a}, {b})"
        )));
    }
    if n == 0 {
        return Err(Error::Config("quadrature order must be at least 1".into()));
    }
    let key = (a.to_bits(), b.to_bits(), n);
    if let Some(rule) = cache().lock().expect("rule cache poisoned").get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(golub_welsch(a, b, n)?);
    cache()
        .lock()
        .expect("rule cache poisoned")
        .insert(key, rule.clone());
    Ok(rule)
}

pub fn gauss_legendre(n: usize) -> Result<Arc<GaussRule>> {
    gauss_jacobi(0.0, 0.0, n)
}

/// Gauss–Chebyshev rule of the first kind: `∫ f(x) dx / √(1-x²)`.
pub fn chebyshev_first(n: usize) -> GaussRule {
    let nf = n as f64;
    GaussRule {
        nodes: (1..=n)
            .map(|j| -((2 * j - 1) as f64 * PI / (2.0 * nf)).cos())
            .collect(),
        weights: vec![PI / nf; n],
    }
}

/// Gauss–Chebyshev rule of the second kind: `∫ f(x) √(1-x²) dx`.
pub fn chebyshev_second(n: usize) -> GaussRule {
    let h = PI / (n as f64 + 1.0);
    GaussRule {
        nodes: (1..=n).map(|j| -(j as f64 * h).cos()).collect(),
        weights: (1..=n).map(|j| h * (j as f64 * h).sin().powi(2)).collect(),
    }
}

/// Tanh–sinh quadrature of `f` over `[a, b]`.
///
/// The integrand receives `(x, x - a, b - x)` so that endpoint singularities
/// such as `(b - x)^{-0.9}` can be evaluated without cancellation. The step
/// is halved until two successive estimates agree to `rel_tol` relative to
/// the larger of the integral and the integral of `|f|`.
pub fn tanh_sinh(
    f: impl Fn(f64, f64, f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<f64> {
    let half = 0.5 * (b - a);
    // Abscissa in terms of t: x = mid + half·tanh(π/2 sinh t); the distance
    // to each endpoint is half·(1 ∓ tanh(u)) = half·2/(1 + e^{±2u}).
    let eval = |t: f64| -> (f64, f64) {
        let u = 0.5 * PI * t.sinh();
        let cosh_u = u.cosh();
        let dw = 0.5 * PI * t.cosh() / (cosh_u * cosh_u);
        let da = 2.0 * half / (1.0 + (2.0 * u).exp());
        let db = 2.0 * half / (1.0 + (-2.0 * u).exp());
        if da <= 0.0 || db <= 0.0 || dw == 0.0 {
            return (0.0, 0.0);
        }
        let x = if u < 0.0 { a + da } else { b - db };
        let v = f(x, da, db);
        if v.is_finite() {
            (half * dw * v, (half * dw * v).abs())
        } else {
            (0.0, 0.0)
        }
    };
    let (mut sum, mut abs_sum) = (0.0, 0.0);
    let add = |(v, a): (f64, f64), sum: &mut f64, abs_sum: &mut f64| {
        *sum += v;
        *abs_sum += a;
    };
    let t_max = 6.5;
    let mut h = 0.5;
    add(eval(0.0), &mut sum, &mut abs_sum);
    let mut k = 1;
    while k as f64 * h <= t_max {
        let t = k as f64 * h;
        add(eval(t), &mut sum, &mut abs_sum);
        add(eval(-t), &mut sum, &mut abs_sum);
        k += 1;
    }
    let mut estimate = h * sum;
    for _ in 0..10 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= t_max {
            let t = k as f64 * h;
            add(eval(t), &mut sum, &mut abs_sum);
            add(eval(-t), &mut sum, &mut abs_sum);
            k += 2;
        }
        let next = h * sum;
        if (next - estimate).abs() <= rel_tol * (h * abs_sum).max(next.abs()) {
            return Ok(next);
        }
        estimate = next;
    }
    Err(Error::Numeric(format!(
        "tanh-sinh quadrature on [{a}, {b}] did not reach relative tolerance {rel_tol}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn beta_fn(p: f64, q: f64) -> f64 {
        (ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q)).exp()
    }

    #[test]
    fn legendre_three_point() {
        let r = gauss_legendre(3).unwrap();
        let x = (0.6f64).sqrt();
        assert!((r.nodes[0] + x).abs() < 1e-15);
        assert!(r.nodes[1].abs() < 1e-15);
        assert!((r.weights[1] - 8.0 / 9.0).abs() < 1e-15);
        assert!((r.weights[2] - 5.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn jacobi_mass() {
        // ∫ (1-x)^{1/2} dx = 2^{3/2}·B(3/2, 1) = 4√2/3
        let r = gauss_jacobi(0.5, 0.0, 4).unwrap();
        let m: f64 = r.weights.iter().sum();
        assert!((m - 4.0 * 2f64.sqrt() / 3.0).abs() < 1e-14);
    }

    #[test]
    fn recurrence_degenerate_sum() {
        // a + b = -1 must not divide by zero.
        let (d, o, _) = jacobi_recurrence(-0.5, -0.5, 4);
        assert!(d.iter().all(|v| v.abs() < 1e-15));
        assert!((o[1] - 0.5).abs() < 1e-15);
        assert!((o[2] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_rules_integrate_t2() {
        // ∫ T_2/√(1-x²) = 0 and ∫ x² √(1-x²) = π/8
        let r1 = chebyshev_first(5);
        assert!(r1.integrate(|x| 2.0 * x * x - 1.0).abs() < 1e-14);
        let r2 = chebyshev_second(5);
        assert!((r2.integrate(|x| x * x) - PI / 8.0).abs() < 1e-14);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        // ∫_{-1}^{1} (1-x)^{-0.9} dx = 2^{0.1}/0.1
        let v = tanh_sinh(|_, _, db| db.powf(-0.9), -1.0, 1.0, 1e-14).unwrap();
        assert!((v - 2f64.powf(0.1) / 0.1).abs() < 1e-11);
    }

    proptest! {
        #[test]
        fn jacobi_exact_on_monomials(
            a in -0.95f64..3.0,
            b in -0.95f64..3.0,
            n in 1usize..40,
            seed in 0usize..1000,
        ) {
            // ∫ (1+x)^m (1-x)^a (1+x)^b dx = 2^{a+b+m+1} B(a+1, b+m+1)
            let m = seed % (2 * n);
            let r = gauss_jacobi(a, b, n).unwrap();
            let q = r.integrate(|x| (1.0 + x).powi(m as i32));
            let exact = 2f64.powf(a + b + m as f64 + 1.0) * beta_fn(a + 1.0, b + m as f64 + 1.0);
            prop_assert!((q - exact).abs() <= 1e-12 * exact.abs().max(1.0));
        }

        #[test]
        fn legendre_exact_on_chebyshev(n in 1usize..64, seed in 0usize..1000) {
            let m = seed % (2 * n);
            let r = gauss_legendre(n).unwrap();
            let q = r.integrate(|x| (m as f64 * x.clamp(-1.0, 1.0).acos()).cos());
            let exact = if m % 2 == 1 { 0.0 } else { 2.0 / (1.0 - (m * m) as f64) };
            prop_assert!((q - exact).abs() < 1e-13);
        }
    }
}
