use num_complex::Complex64;

use crate::error::{Error, Result};

/// A second-order linear ODE with polynomial coefficients and a regular
/// singular point at the origin, described by its Taylor recurrence.
pub(crate) trait TaylorOde {
    /// Coefficient `c_{k+2}` of the expansion about `z0`, given `c_0..=c_{k+1}`.
    fn next(&self, z0: Complex64, k: usize, c: &[Complex64]) -> Complex64;
}

const MAX_STEP: f64 = 1.5;
const MAX_TERMS: usize = 400;

/// Integrates `(y, y')` along the segment `from → to`, which must stay away
/// from the origin.
pub(crate) fn integrate(
    ode: &impl TaylorOde,
    from: Complex64,
    to: Complex64,
    mut y: Complex64,
    mut dy: Complex64,
) -> Result<(Complex64, Complex64)> {
    let mut z = from;
    let mut coeffs = Vec::with_capacity(64);
    while (to - z).norm() > 0.0 {
        let remaining = to - z;
        let h_len = remaining.norm().min(0.5 * z.norm()).min(MAX_STEP);
        let h = if h_len >= remaining.norm() {
            remaining
        } else {
            remaining * (h_len / remaining.norm())
        };
        coeffs.clear();
        coeffs.push(y);
        coeffs.push(dy);
        let mut val = y + dy * h;
        let mut der = dy;
        let mut hk = h; // h^{k+1}
        let scale = y.norm() + (dy * h).norm();
        let mut small = 0;
        let mut k = 0;
        loop {
            let c = ode.next(z, k, &coeffs);
            coeffs.push(c);
            let n = k + 2;
            der += c * hk * n as f64;
            hk *= h;
            let term = c * hk;
            val += term;
            if term.norm() <= 1e-17 * scale.max(val.norm()) {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
            k += 1;
            if n >= MAX_TERMS {
                return Err(Error::Numeric(format!(
                    "Taylor series about {z} did not converge for step {h}"
                )));
            }
        }
        y = val;
        dy = der;
        z += h;
        if (to - z).norm() <= 1e-15 * to.norm() {
            break;
        }
    }
    Ok((y, dy))
}
