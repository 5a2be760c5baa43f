//! Chebyshev series on [-1, 1].

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// `f(x) = Σ_k c_k T_k(x)`.
///
/// Used for every real-analytic test function and weight perturbation in
/// the crate: the potential perturbation `t`, the linear-statistic `f`, and
/// smooth tilts `w` in the Hankel asymptotics.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChebSeries {
    coeffs: Vec<f64>,
}

impl ChebSeries {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut s = Self { coeffs };
        s.trim();
        s
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `scale · T_k`.
    pub fn basis(k: usize, scale: f64) -> Self {
        let mut c = vec![0.0; k + 1];
        c[k] = scale;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// True when the series is identically zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest index with a nonzero coefficient; 0 for the zero series.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// True when all odd coefficients vanish, i.e. `f(-x) = f(x)`.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|&c| c == 0.0)
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(&c) if c == 0.0) {
            self.coeffs.pop();
        }
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let c = &self.coeffs;
        match c.len() {
            0 => 0.0,
            1 => c[0],
            n => {
                let (mut b1, mut b2) = (0.0, 0.0);
                for &ck in c[1..n].iter().rev() {
                    let b = 2.0 * x * b1 - b2 + ck;
                    b2 = b1;
                    b1 = b;
                }
                x * b1 - b2 + c[0]
            }
        }
    }

    /// Term-by-term evaluation with `T_k(x) = cos(k arccos x)`; slow, only
    /// meant as a cross-check of [`ChebSeries::eval`].
    pub fn eval_direct(&self, x: f64) -> f64 {
        let theta = x.clamp(-1.0, 1.0).acos();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| c * (k as f64 * theta).cos())
            .sum()
    }

    pub fn derivative(&self) -> ChebSeries {
        let n = self.coeffs.len();
        if n <= 1 {
            return ChebSeries::zero();
        }
        // d_{k-1} = d_{k+1} + 2k c_k, with d_0 halved at the end.
        let mut d = vec![0.0; n + 1];
        for k in (1..n).rev() {
            d[k - 1] = d[k + 1] + 2.0 * k as f64 * self.coeffs[k];
        }
        d[0] *= 0.5;
        d.truncate(n - 1);
        ChebSeries::new(d)
    }

    /// Evaluates `Σ_m d_m U_m(x)` for second-kind coefficients `d`.
    pub fn eval_second_kind(d: &[f64], x: f64) -> f64 {
        let (mut b1, mut b2) = (0.0, 0.0);
        for &dk in d.iter().rev() {
            let b = dk + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b;
        }
        b1
    }

    /// `∫_{-1}^{1} f(x) dx / (π √(1-x²))`, i.e. the mean of `f` under the
    /// arcsine law; equals `c_0`.
    pub fn arcsine_mean(&self) -> f64 {
        self.coeffs.first().copied().unwrap_or(0.0)
    }

    /// `∫_{-1}^{1} f(x) dx`.
    pub fn integral(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(k, _)| k % 2 == 0)
            .map(|(k, &c)| {
                let k = k as f64;
                c * 2.0 / (1.0 - k * k)
            })
            .sum()
    }

    /// `f(-x)` as a series.
    pub fn reflect(&self) -> ChebSeries {
        ChebSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
                .collect(),
        )
    }
}

impl Add for &ChebSeries {
    type Output = ChebSeries;
    fn add(self, rhs: &ChebSeries) -> ChebSeries {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(0.0);
        ChebSeries::new(
            (0..n)
                .map(|k| get(&self.coeffs, k) + get(&rhs.coeffs, k))
                .collect(),
        )
    }
}

impl Sub for &ChebSeries {
    type Output = ChebSeries;
    fn sub(self, rhs: &ChebSeries) -> ChebSeries {
        self + &(-rhs)
    }
}

impl Neg for &ChebSeries {
    type Output = ChebSeries;
    fn neg(self) -> ChebSeries {
        self * -1.0
    }
}

impl Mul<f64> for &ChebSeries {
    type Output = ChebSeries;
    fn mul(self, a: f64) -> ChebSeries {
        ChebSeries::new(self.coeffs.iter().map(|c| a * c).collect())
    }
}

impl From<Vec<f64>> for ChebSeries {
    fn from(v: Vec<f64>) -> Self {
        ChebSeries::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn derivative_of_t3() {
        // T_3' = 3 U_2 = 3 (2 T_2 + T_0)  ->  coefficients (3, 0, 6)
        let d = ChebSeries::basis(3, 1.0).derivative();
        assert_eq!(d.coeffs(), &[3.0, 0.0, 6.0]);
    }

    #[test]
    fn integral_matches_closed_forms() {
        assert!((ChebSeries::constant(1.0).integral() - 2.0).abs() < 1e-15);
        // ∫ T_2 = ∫ (2x²-1) = 4/3 - 2 = -2/3
        assert!((ChebSeries::basis(2, 1.0).integral() + 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(ChebSeries::basis(3, 1.0).integral(), 0.0);
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let s = ChebSeries::new(vec![1.0, 0.0, 0.0]);
        assert_eq!(s.degree(), 0);
        assert!(ChebSeries::new(vec![0.0]).is_zero());
    }

    proptest! {
        #[test]
        fn clenshaw_matches_direct_sum(
            coeffs in prop::collection::vec(-1.0f64..1.0, 1..200),
            x in -1.0f64..1.0,
        ) {
            let s = ChebSeries::new(coeffs);
            let l1: f64 = s.coeffs().iter().map(|c| c.abs()).sum();
            prop_assert!((s.eval(x) - s.eval_direct(x)).abs() < 1e-13 * l1.max(1.0));
        }

        #[test]
        fn derivative_matches_finite_difference(
            coeffs in prop::collection::vec(-1.0f64..1.0, 1..12),
            x in -0.9f64..0.9,
        ) {
            let s = ChebSeries::new(coeffs);
            let h = 1e-5;
            let fd = (s.eval(x + h) - s.eval(x - h)) / (2.0 * h);
            prop_assert!((s.derivative().eval(x) - fd).abs() < 1e-6);
        }
    }
}
