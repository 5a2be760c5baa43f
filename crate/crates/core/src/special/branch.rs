use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Side of an oriented contour: `Plus` is the left side with respect to the
/// orientation, `Minus` the right side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

/// A point on the Riemann surface of the logarithm: modulus and an
/// unrestricted argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polar {
    pub r: f64,
    pub theta: f64,
}

impl Polar {
    pub fn new(r: f64, theta: f64) -> Self {
        Self { r, theta }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }

    pub fn ln(self) -> Complex64 {
        Complex64::new(self.r.ln(), self.theta)
    }

    pub fn powc(self, p: Complex64) -> Complex64 {
        (p * self.ln()).exp()
    }

    pub fn rotate(self, angle: f64) -> Self {
        Self::new(self.r, self.theta + angle)
    }
}

/// A branch cut along the ray `arg z = angle`; arguments are taken in
/// `(angle - 2π, angle]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchCut {
    pub angle: f64,
}

impl BranchCut {
    /// Cut along the negative real axis, `arg z ∈ (-π, π]`.
    pub const PRINCIPAL: BranchCut = BranchCut { angle: PI };

    pub fn new(angle: f64) -> Self {
        Self { angle }
    }

    /// Lifts `z` to the sheet selected by the cut. On the cut itself `side`
    /// must be given: `Plus` gives `arg = angle`, `Minus` gives
    /// `arg = angle - 2π` (the limits from the counterclockwise and the
    /// clockwise neighbour, respectively).
    pub fn lift(&self, z: Complex64, side: Option<Side>) -> Result<Polar> {
        let r = z.norm();
        if r == 0.0 {
            return Err(Error::Domain("branch point z = 0".into()));
        }
        let lo = self.angle - 2.0 * PI;
        let mut theta = z.arg();
        while theta <= lo {
            theta += 2.0 * PI;
        }
        while theta > self.angle {
            theta -= 2.0 * PI;
        }
        let on_cut = (theta - self.angle).abs() <= 4.0 * f64::EPSILON * PI
            || (theta - lo).abs() <= 4.0 * f64::EPSILON * PI;
        if on_cut {
            theta = match side {
                Some(Side::Plus) => self.angle,
                Some(Side::Minus) => lo,
                None => {
                    return Err(Error::OnContour(format!(
                        "{z} lies on the branch cut at angle {}",
                        self.angle
                    )))
                }
            };
        }
        Ok(Polar::new(r, theta))
    }
}

/// `z^p` on the sheet selected by `cut`.
pub fn cpow(z: Complex64, p: Complex64, cut: BranchCut, side: Option<Side>) -> Result<Complex64> {
    Ok(cut.lift(z, side)?.powc(p))
}
