use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use super::matrix::Matrix2C;
use crate::error::{Error, Result};
use crate::hankel::WeightSpec;
use crate::special::{BranchCut, Polar, Side};

/// Parameters of the Szegő function: the same data as a weight.
pub type SzegoSpec = WeightSpec;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Lifts `z ± 1` and `φ(z)` to the principal sheet. On `(-∞, -1)` all three
/// lie on their cuts and any common side gives the same products; on
/// `(-1, 1)` the side is mandatory.
struct Lifted {
    zm1: Polar,
    zp1: Polar,
}

fn on_interval(z: Complex64) -> bool {
    z.im == 0.0 && z.re.abs() <= 1.0
}

fn lift(z: Complex64, side: Option<Side>) -> Result<Lifted> {
    let cut = BranchCut::PRINCIPAL;
    // Off the axis the side is determined by the sign of Im z, which keeps
    // points within rounding of a cut unambiguous.
    let side = side.or(if z.im > 0.0 || (z.im == 0.0 && z.re < -1.0) {
        Some(Side::Plus)
    } else if z.im < 0.0 {
        Some(Side::Minus)
    } else {
        None
    });
    Ok(Lifted {
        zm1: cut.lift(z - 1.0, side)?,
        zp1: cut.lift(z + 1.0, side)?,
    })
}

impl Lifted {
    /// `(z² - 1)^{1/2}`, asymptotic to `z` at infinity.
    fn root(&self) -> Complex64 {
        self.zm1.powc(0.5.into()) * self.zp1.powc(0.5.into())
    }
}

fn phi_lifted(z: Complex64, l: &Lifted) -> Complex64 {
    z + l.root()
}

fn check_off_interval(z: Complex64) -> Result<()> {
    if on_interval(z) {
        return Err(Error::OnContour(format!(
            "{z} lies on [-1, 1]; use the boundary-value variant"
        )));
    }
    Ok(())
}

/// `φ(z) = z + (z² - 1)^{1/2}`, analytic off `[-1, 1]` with `φ(z) ~ 2z`.
/// The branch points map to `φ(±1) = ±1`.
pub fn phi_map(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re.abs() == 1.0 {
        return Ok(z);
    }
    check_off_interval(z)?;
    Ok(phi_lifted(z, &lift(z, None)?))
}

/// Boundary value `φ_±(x) = x ± i√(1 - x²)` for `x ∈ (-1, 1)`.
pub fn phi_map_side(x: f64, side: Side) -> Result<Complex64> {
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::Domain(format!("boundary values need |x| < 1, got {x}")));
    }
    let s = (1.0 - x * x).sqrt();
    Ok(Complex64::new(
        x,
        match side {
            Side::Plus => s,
            Side::Minus => -s,
        },
    ))
}

/// `D_∞ = lim_{z→∞} D(z)`.
pub fn szego_infinity(s: &SzegoSpec) -> f64 {
    let log_jumps: f64 = s.jumps.iter().map(|j| j.gamma * (PI - j.x.acos())).sum();
    (-(s.alpha + s.beta) / 2.0 * 2f64.ln() + 0.5 * s.t.arcsine_mean() + log_jumps / SQRT_2).exp()
}

/// `log D(z)` from the closed forms
/// `log D_t = ½ Σ c_n φ^{-n}` and
/// `log D_γ = Σ γ_j [π - u_j + i log((1 - e^{-iu_j}/φ)/(1 - e^{iu_j}/φ))]/√2`,
/// `u_j = arccos x_j`.
fn log_szego(s: &SzegoSpec, l: &Lifted, phi: Complex64) -> Result<Complex64> {
    let cut = BranchCut::PRINCIPAL;
    // φ lies on its own cut exactly when z does on (-∞, -1); both sides of
    // that ray give the same D.
    let side = if phi.im < 0.0 { Side::Minus } else { Side::Plus };
    let phi_polar = cut.lift(phi, Some(side))?;
    let half = 0.5 * (s.alpha + s.beta);
    let log_w = 0.5 * s.alpha * l.zm1.ln() + 0.5 * s.beta * l.zp1.ln() - half * phi_polar.ln();

    let inv = phi.inv();
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in s.t.coeffs().iter().rev() {
        acc = acc * inv + c;
    }
    let log_t = 0.5 * acc;

    let mut log_g = Complex64::new(0.0, 0.0);
    for j in &s.jumps {
        let u = j.x.acos();
        let e = Complex64::from_polar(1.0, u);
        let num = 1.0 - e.conj() * inv;
        let den = 1.0 - e * inv;
        if num.norm() == 0.0 || den.norm() == 0.0 {
            return Err(Error::Domain(format!("D(z) is singular at the jump point {}", j.x)));
        }
        log_g += j.gamma * (PI - u + I * (num.ln() - den.ln()));
    }
    Ok(log_w + log_t + log_g / SQRT_2)
}

fn assemble(z: Complex64, side: Option<Side>, s: &SzegoSpec) -> Result<Matrix2C> {
    let l = lift(z, side)?;
    let phi = phi_lifted(z, &l);
    // a(z) = ((z+1)/(z-1))^{1/4}
    let a = l.zp1.powc(0.25.into()) / l.zm1.powc(0.25.into());
    let ai = a.inv();
    let q = Matrix2C::new(
        0.5 * (a + ai),
        -(a - ai) / (2.0 * I),
        (a - ai) / (2.0 * I),
        0.5 * (a + ai),
    );
    let d = log_szego(s, &l, phi)?.exp();
    let dinf = Complex64::new(szego_infinity(s), 0.0);
    let p = Matrix2C::sigma3_power(dinf) * q * Matrix2C::sigma3_power(d.inv());
    if !p.is_finite() {
        return Err(Error::Numeric(format!("P∞({z}) is not finite")));
    }
    Ok(p)
}

/// Global parametrix `P∞(z) = D_∞^{σ₃} Q(z) D(z)^{-σ₃}` for `z ∉ [-1, 1]`.
pub fn global_parametrix(z: Complex64, s: &SzegoSpec) -> Result<Matrix2C> {
    s.validate()?;
    check_off_interval(z)?;
    assemble(z, None, s)
}

/// Boundary value `P∞_±(x)` on `(-1, 1)`; `+` is the upper side.
pub fn global_parametrix_side(x: f64, side: Side, s: &SzegoSpec) -> Result<Matrix2C> {
    s.validate()?;
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::Domain(format!("boundary values need |x| < 1, got {x}")));
    }
    if s.jumps.iter().any(|j| j.x == x) {
        return Err(Error::Domain(format!("P∞ is singular at the jump point {x}")));
    }
    assemble(Complex64::new(x, 0.0), Some(side), s)
}

/// Jump matrix `J₂(x; γ(x))` of `P∞` on `(-1, 1)`, where `γ(x)` sums the
/// jump strengths located to the right of `x`.
pub fn global_jump(x: f64, s: &SzegoSpec) -> Matrix2C {
    let w = s.eval(x);
    Matrix2C::real(0.0, w, -1.0 / w, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb::ChebSeries;
    use crate::parametrix::check::jump_residual;

    fn spec() -> SzegoSpec {
        WeightSpec::jacobi(0.7, -0.4)
            .with_jump(-0.3, 0.5)
            .with_jump(0.45, -0.35)
            .with_t(ChebSeries::new(vec![0.2, -0.3, 0.15, 0.05]))
    }

    #[test]
    fn phi_basic_properties() {
        assert_eq!(phi_map(Complex64::new(1.0, 0.0)).unwrap(), Complex64::new(1.0, 0.0));
        assert!(phi_map(Complex64::new(0.3, 0.0)).is_err());
        for &r in &[1e6, 1e3] {
            for k in 0..8 {
                let z = Complex64::from_polar(r, 0.3 + k as f64 * 0.8);
                let p = phi_map(z).unwrap();
                assert!((p / (2.0 * z) - 1.0).norm() < 1.0 / (r * r));
                assert!(p.norm() > 1.0);
            }
        }
        for &x in &[-0.99, -0.2, 0.0, 0.7] {
            let prod = phi_map_side(x, Side::Plus).unwrap() * phi_map_side(x, Side::Minus).unwrap();
            assert!((prod - 1.0).norm() < 1e-15);
            let up = phi_map(Complex64::new(x, 1e-12)).unwrap();
            assert!((up - phi_map_side(x, Side::Plus).unwrap()).norm() < 1e-5);
        }
        // Continuous across (-∞, -1).
        let a = phi_map(Complex64::new(-3.0, 1e-13)).unwrap();
        let b = phi_map(Complex64::new(-3.0, -1e-13)).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn szego_boundary_product_is_the_weight() {
        let s = spec();
        for &x in &[-0.8, -0.31, 0.0, 0.44, 0.9] {
            let l_up = lift(Complex64::new(x, 0.0), Some(Side::Plus)).unwrap();
            let l_dn = lift(Complex64::new(x, 0.0), Some(Side::Minus)).unwrap();
            let up = log_szego(&s, &l_up, phi_lifted(Complex64::new(x, 0.0), &l_up)).unwrap();
            let dn = log_szego(&s, &l_dn, phi_lifted(Complex64::new(x, 0.0), &l_dn)).unwrap();
            let want = s.eval(x).ln();
            assert!((up + dn - want).norm() < 1e-13, "x={x}: {} vs {want}", up + dn);
        }
    }

    #[test]
    fn determinant_and_normalisation() {
        let s = spec();
        for k in 0..20 {
            let z = Complex64::from_polar(0.2 + 0.3 * k as f64, 0.37 * k as f64 + 0.1);
            if on_interval(z) {
                continue;
            }
            let p = global_parametrix(z, &s).unwrap();
            assert!((p.det() - 1.0).norm() < 1e-12, "z={z}");
        }
        let p = global_parametrix(Complex64::new(1e6, 0.0), &s).unwrap();
        assert!((p - Matrix2C::identity()).norm() < 1e-5);
        let p = global_parametrix(Complex64::new(-4e5, 7e5), &s).unwrap();
        assert!((p - Matrix2C::identity()).norm() < 1e-5);
    }

    #[test]
    fn jump_relation() {
        let s = spec();
        for &x in &[-0.95, -0.5, -0.1, 0.2, 0.6, 0.97] {
            let j = global_jump(x, &s);
            let exact = global_parametrix_side(x, Side::Plus, &s).unwrap()
                - global_parametrix_side(x, Side::Minus, &s).unwrap() * j;
            assert!(exact.norm() < 1e-12, "x={x}: {}", exact.norm());
            let r = jump_residual(|z| global_parametrix(z, &s), Complex64::new(x, 0.0), I, &j).unwrap();
            assert!(r.passes(1e-10), "x={x}: {r:?}");
        }
    }
}
