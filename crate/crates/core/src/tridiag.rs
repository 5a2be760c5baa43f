//! Symmetric tridiagonal eigenproblems.
//!
//! Implicit QL with Wilkinson-type shifts. Only the first component of each
//! eigenvector is tracked, which is all Golub–Welsch needs and keeps the
//! cost at O(n²) instead of O(n³).

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Eigen-decomposition of a symmetric tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct TridiagEigen {
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// First component of each normalized eigenvector, paired with `values`.
    pub first: Vec<f64>,
}

/// Eigenvalues and first eigenvector components of the matrix with diagonal
/// `diag` and off-diagonal `off` (`off.len() == diag.len() - 1`).
pub fn eigen(diag: &[f64], off: &[f64]) -> Result<TridiagEigen> {
    let n = diag.len();
    if n == 0 {
        return Ok(TridiagEigen {
            values: Vec::new(),
            first: Vec::new(),
        });
    }
    if off.len() + 1 != n {
        return Err(Error::InvalidSpec(format!(
            "off-diagonal length {} does not match dimension {n}",
            off.len()
        )));
    }
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::Numeric(format!(
                    "tridiagonal QL did not converge for eigenvalue {l} of {n}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    Ok(TridiagEigen {
        values: idx.iter().map(|&i| d[i]).collect(),
        first: idx.iter().map(|&i| z[i]).collect(),
    })
}

/// Eigenvalues only, ascending.
pub fn eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    eigen(diag, off).map(|e| e.values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn dense(diag: &[f64], off: &[f64]) -> DMatrix<f64> {
        let n = diag.len();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                diag[i]
            } else if i + 1 == j {
                off[i]
            } else if j + 1 == i {
                off[j]
            } else {
                0.0
            }
        })
    }

    #[test]
    fn two_by_two() {
        let r = eigen(&[2.0, 2.0], &[1.0]).unwrap();
        assert!((r.values[0] - 1.0).abs() < 1e-14);
        assert!((r.values[1] - 3.0).abs() < 1e-14);
        assert!((r.first[0].abs() - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_shape() {
        assert!(eigen(&[1.0, 2.0], &[]).is_err());
    }

    proptest! {
        #[test]
        fn matches_dense_solver_and_moments(
            diag in prop::collection::vec(-3.0f64..3.0, 1..30),
            seed_off in prop::collection::vec(0.01f64..2.0, 30),
        ) {
            let n = diag.len();
            let off = &seed_off[..n - 1];
            let r = eigen(&diag, off).unwrap();
            let t = dense(&diag, off);
            let mut vals: Vec<f64> = t.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
            vals.sort_by(f64::total_cmp);
            for (k, v) in vals.into_iter().enumerate() {
                prop_assert!((r.values[k] - v).abs() < 1e-11);
            }
            // Σ_k z_k² λ_k^m = (T^m)_{00}: the property Golub–Welsch relies on.
            let mut tm = DMatrix::<f64>::identity(n, n);
            for m in 0..4 {
                let s: f64 = r.values.iter().zip(&r.first).map(|(l, z)| z * z * l.powi(m)).sum();
                prop_assert!((s - tm[(0, 0)]).abs() < 1e-10 * (1.0 + tm[(0, 0)].abs()));
                tm = &tm * &t;
            }
        }
    }
}
