use std::f64::consts::PI;

use num_complex::Complex64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos sum for `Γ(z + 1)`, `Re z ≥ -1/2`.
fn lanczos(z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * acc
}

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// `sin(πz)` with the argument reduced by the nearest integer.
fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let s = (PI * (z - n)).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// Complex Gamma function; infinite at the non-positive integers.
pub fn gamma(z: Complex64) -> Complex64 {
    if is_pole(z) {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    if z.re < 0.5 {
        PI / (sin_pi(z) * lanczos(-z))
    } else {
        lanczos(z - 1.0)
    }
}

/// Reciprocal Gamma function, entire with zeros at the non-positive
/// integers.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_pole(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        sin_pi(z) * lanczos(-z) / PI
    } else {
        lanczos(z - 1.0).inv()
    }
}

/// Digamma function `ψ(z) = Γ'(z)/Γ(z)`.
pub fn digamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // ψ(z) = ψ(1 - z) - π cot(πz)
        return digamma(1.0 - z) - PI * (PI * z).cos() / sin_pi(z);
    }
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.norm() < 12.0 {
        acc -= z.inv();
        z += 1.0;
    }
    let r2 = (z * z).inv();
    // Bernoulli tail: B_{2k}/(2k z^{2k}), k = 1..7
    let tail = r2
        * (1.0 / 12.0
            - r2 * (1.0 / 120.0
                - r2 * (1.0 / 252.0
                    - r2 * (1.0 / 240.0 - r2 * (1.0 / 132.0 - r2 * (691.0 / 32760.0 - r2 / 12.0))))));
    acc + z.ln() - 0.5 * z.inv() - tail
}
