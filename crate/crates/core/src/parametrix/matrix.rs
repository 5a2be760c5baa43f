use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix2C {
    pub m: [[Complex64; 2]; 2],
}

impl Matrix2C {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Self::new(a, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), d)
    }

    /// `f^{σ₃} = diag(f, 1/f)`.
    pub fn sigma3_power(f: Complex64) -> Self {
        Self::diag(f, f.inv())
    }

    pub fn lower(c: Complex64) -> Self {
        Self::new(1.0.into(), 0.0.into(), c, 1.0.into())
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        Self::new(
            self.m[1][1] / d,
            -self.m[0][1] / d,
            -self.m[1][0] / d,
            self.m[0][0] / d,
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = self.m;
        Self::new(s * m[0][0], s * m[0][1], s * m[1][0], s * m[1][1])
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Mul for Matrix2C {
    type Output = Matrix2C;

    fn mul(self, o: Matrix2C) -> Matrix2C {
        let (a, b) = (self.m, o.m);
        Matrix2C::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Add for Matrix2C {
    type Output = Matrix2C;

    fn add(self, o: Matrix2C) -> Matrix2C {
        let (a, b) = (self.m, o.m);
        Matrix2C::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for Matrix2C {
    type Output = Matrix2C;

    fn sub(self, o: Matrix2C) -> Matrix2C {
        self + o.scale((-1.0).into())
    }
}
