//! Hankel determinants of Jacobi weights with Fisher–Hartwig jumps.
//!
//! `D_N = det[∫ x^{j+k} 𝒲(x) dx]_{j,k<N}` with
//! `𝒲(x) = exp(Σ_k √2π γ_k 1_{x ≤ x_k}) (1-x)^α (1+x)^β e^{t(x)}` on [-1, 1],
//! computed as the product of squared norms of the monic orthogonal
//! polynomials, which are generated by a discretized Stieltjes procedure on a
//! composite Gauss rule.

use std::f64::consts::{PI, SQRT_2};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::cheb::ChebSeries;
use crate::counting::arcsine_cdf;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_jacobi, tanh_sinh};

const SQRT2_PI: f64 = SQRT_2 * PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jump {
    pub x: f64,
    pub gamma: f64,
}

impl Jump {
    pub fn new(x: f64, gamma: f64) -> Self {
        Self { x, gamma }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct WeightSpec {
    pub alpha: f64,
    pub beta: f64,
    #[serde(default)]
    pub jumps: Vec<Jump>,
    #[serde(default)]
    pub t: ChebSeries,
}

impl WeightSpec {
    pub fn jacobi(alpha: f64, beta: f64) -> Self {
        Self {
            alpha,
            beta,
            jumps: Vec::new(),
            t: ChebSeries::zero(),
        }
    }

    pub fn with_jump(mut self, x: f64, gamma: f64) -> Self {
        self.jumps.push(Jump::new(x, gamma));
        self
    }

    pub fn with_t(mut self, t: ChebSeries) -> Self {
        self.t = t;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > -1.0 && self.beta > -1.0) {
            return Err(Error::InvalidSpec(format!(
                "alpha and beta must exceed -1 (got {}, {})",
                self.alpha, self.beta
            )));
        }
        if self.jumps.len() > 2 {
            return Err(Error::InvalidSpec("at most two jumps are supported".into()));
        }
        for j in &self.jumps {
            if !(j.x > -1.0 && j.x < 1.0) {
                return Err(Error::Domain(format!(
                    "jump location {} must lie strictly inside (-1, 1)",
                    j.x
                )));
            }
            if !j.gamma.is_finite() {
                return Err(Error::InvalidSpec("jump strength must be finite".into()));
            }
        }
        if self.jumps.windows(2).any(|w| w[0].x > w[1].x) {
            return Err(Error::InvalidSpec("jump locations must be nondecreasing".into()));
        }
        Ok(())
    }

    /// `log 𝒲(x)` from the jump and analytic parts only.
    fn log_smooth_and_jumps(&self, x: f64) -> f64 {
        let g: f64 = self
            .jumps
            .iter()
            .filter(|j| x <= j.x)
            .map(|j| j.gamma)
            .sum();
        SQRT2_PI * g + self.t.eval(x)
    }

    /// `𝒲(x)` for `x ∈ (-1, 1)`.
    pub fn eval(&self, x: f64) -> f64 {
        let mut v = self.log_smooth_and_jumps(x);
        if self.alpha != 0.0 {
            v += self.alpha * (1.0 - x).ln();
        }
        if self.beta != 0.0 {
            v += self.beta * (1.0 + x).ln();
        }
        v.exp()
    }

    /// Distinct jump locations with -1 and 1 appended.
    pub fn boundaries(&self) -> Vec<f64> {
        let mut b = vec![-1.0];
        for j in &self.jumps {
            if *b.last().unwrap() != j.x {
                b.push(j.x);
            }
        }
        b.push(1.0);
        b
    }
}

/// Composite quadrature for `∫ f 𝒲` with the full weight folded into the
/// node weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Main panel boundaries `{-1, x_1, x_2, 1}`.
    pub boundaries: Vec<f64>,
    /// Every sub-panel actually used, after grading.
    pub panels: Vec<(f64, f64)>,
    /// Nodes per sub-panel.
    pub order: usize,
}

impl QuadratureGrid {
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
}

const GRADE_RATIO: f64 = 0.25;

/// Breakpoints that grade `[a, b]` geometrically toward an end whose
/// distance to a singularity is much smaller than the panel length.
fn graded(a: f64, b: f64, right_gap: Option<f64>, left_gap: Option<f64>) -> Vec<(f64, f64)> {
    let mut cuts = vec![a, b];
    let len = b - a;
    if let Some(d) = right_gap {
        let mut s = len * GRADE_RATIO;
        while s > d && s > 1e-15 * len {
            cuts.push(b - s);
            s *= GRADE_RATIO;
        }
    }
    if let Some(d) = left_gap {
        let mut s = len * GRADE_RATIO;
        while s > d && s > 1e-15 * len {
            cuts.push(a + s);
            s *= GRADE_RATIO;
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Composite Gauss rule with `order` nodes per sub-panel: Gauss–Jacobi
/// `(α, 0)` on the panel ending at 1, `(0, β)` on the panel starting at -1,
/// Gauss–Legendre elsewhere. A single `(α, β)` panel when there are no jumps.
pub fn build_quadrature(w: &WeightSpec, order: usize) -> Result<QuadratureGrid> {
    w.validate()?;
    if order == 0 {
        return Err(Error::Precision("quadrature order must be positive".into()));
    }
    let boundaries = w.boundaries();
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut panels = Vec::new();
    for seg in boundaries.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let touches_right = b == 1.0;
        let touches_left = a == -1.0;
        let right_gap = (!touches_right && w.alpha != 0.0).then_some(1.0 - b);
        let left_gap = (!touches_left && w.beta != 0.0).then_some(1.0 + a);
        let subs = graded(a, b, right_gap, left_gap);
        let last = subs.len() - 1;
        for (i, &(sa, sb)) in subs.iter().enumerate() {
            let ea = if touches_right && i == last { w.alpha } else { 0.0 };
            let eb = if touches_left && i == 0 { w.beta } else { 0.0 };
            let rule = gauss_jacobi(ea, eb, order)?;
            let h = 0.5 * (sb - sa);
            let m = 0.5 * (sb + sa);
            let scale = h.powf(1.0 + ea + eb);
            for (&s, &ws) in rule.nodes.iter().zip(&rule.weights) {
                let x = m + h * s;
                let mut lw = w.log_smooth_and_jumps(x);
                if ea == 0.0 && w.alpha != 0.0 {
                    lw += w.alpha * (1.0 - x).ln();
                }
                if eb == 0.0 && w.beta != 0.0 {
                    lw += w.beta * (1.0 + x).ln();
                }
                nodes.push(x);
                weights.push(ws * scale * lw.exp());
            }
            panels.push((sa, sb));
        }
    }
    Ok(QuadratureGrid {
        nodes,
        weights,
        boundaries,
        panels,
        order,
    })
}

/// Three-term recurrence `π_{k+1} = (x - b_k) π_k - a_k² π_{k-1}` of the
/// monic orthogonal polynomials, with `h_k = ‖π_k‖²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceTable {
    /// `b_k`, `k < n`.
    pub diag: Vec<f64>,
    /// `a_k²`, `k < n`; entry 0 is unused and set to 0.
    pub offdiag2: Vec<f64>,
    /// `log h_k`, `k < n`.
    pub log_h: Vec<f64>,
}

impl RecurrenceTable {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// `log D_m = Σ_{k<m} log h_k` for `m ≤ len`.
    pub fn log_det(&self, m: usize) -> f64 {
        self.log_h[..m].iter().sum()
    }

    pub fn h(&self, k: usize) -> f64 {
        self.log_h[k].exp()
    }

    /// `(π_k(x), π_k'(x))` for `k ≤ len`.
    pub fn monic_with_derivative(&self, k: usize, x: f64) -> (f64, f64) {
        let (mut p0, mut p1) = (0.0, 1.0);
        let (mut d0, mut d1) = (0.0, 0.0);
        for j in 0..k {
            let a2 = if j == 0 { 0.0 } else { self.offdiag2[j] };
            let p2 = (x - self.diag[j]) * p1 - a2 * p0;
            let d2 = p1 + (x - self.diag[j]) * d1 - a2 * d0;
            p0 = p1;
            p1 = p2;
            d0 = d1;
            d1 = d2;
        }
        (p1, d1)
    }

    /// `K_m(x, x) = Σ_{k<m} π_k(x)²/h_k`.
    pub fn christoffel_sum(&self, m: usize, x: f64) -> f64 {
        (0..m)
            .map(|k| self.monic_with_derivative(k, x).0.powi(2) / self.h(k))
            .sum()
    }
}

/// Discretized Stieltjes procedure on `grid`, carried with orthonormal
/// node vectors and one reorthogonalization pass against the two previous
/// vectors.
pub fn stieltjes_recurrence(grid: &QuadratureGrid, n: usize) -> Result<RecurrenceTable> {
    if n == 0 {
        return Err(Error::Config("recurrence length must be positive".into()));
    }
    let m = grid.len();
    if m < 4 * n {
        return Err(Error::Precision(format!(
            "grid has {m} nodes, at least {} needed for N={n}",
            4 * n
        )));
    }
    let x = &grid.nodes;
    let h0: f64 = grid.weights.iter().sum();
    if !(h0 > 0.0 && h0.is_finite()) {
        return Err(Error::Precision("loss of positivity in h_0".into()));
    }
    let sw: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
    let mut prev = vec![0.0; m];
    let mut cur: Vec<f64> = sw.iter().map(|s| s / h0.sqrt()).collect();
    let mut diag = Vec::with_capacity(n);
    let mut off2: Vec<f64> = vec![0.0];
    let mut log_h = vec![h0.ln()];
    for k in 0..n {
        let b: f64 = x.iter().zip(&cur).map(|(xi, v)| xi * v * v).sum();
        diag.push(b);
        if k + 1 == n {
            break;
        }
        let sa = off2[k].sqrt();
        let mut next: Vec<f64> = (0..m).map(|i| (x[i] - b) * cur[i] - sa * prev[i]).collect();
        for basis in [&cur, &prev] {
            let c: f64 = next.iter().zip(basis.iter()).map(|(u, v)| u * v).sum();
            for (u, v) in next.iter_mut().zip(basis.iter()) {
                *u -= c * v;
            }
        }
        let a2: f64 = next.iter().map(|u| u * u).sum();
        if !(a2 > 0.0 && a2.is_finite()) {
            return Err(Error::Precision(format!(
                "loss of positivity in h_{} during Stieltjes recurrence",
                k + 1
            )));
        }
        let norm = a2.sqrt();
        for u in next.iter_mut() {
            *u /= norm;
        }
        off2.push(a2);
        log_h.push(log_h[k] + a2.ln());
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(RecurrenceTable {
        diag,
        offdiag2: off2,
        log_h,
    })
}

/// Node-count policy for [`log_hankel_detailed`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HankelOptions {
    /// Initial nodes per sub-panel as a multiple of N.
    pub nodes_per_n: usize,
    pub min_order: usize,
    pub tolerance: f64,
    pub max_doublings: usize,
}

impl Default for HankelOptions {
    fn default() -> Self {
        Self {
            nodes_per_n: 8,
            min_order: 32,
            tolerance: 1e-10,
            max_doublings: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HankelResult {
    pub log_d: f64,
    /// Total node count of the last grid used.
    pub node_count: usize,
    /// Whether two successive node counts agreed to the tolerance.
    pub stable: bool,
    pub table: RecurrenceTable,
}

/// `log D_N` with adaptive node doubling; the recurrence table is sized for
/// `N + 1` polynomials so that `π_N` is available.
pub fn log_hankel_detailed(w: &WeightSpec, n: usize, opts: &HankelOptions) -> Result<HankelResult> {
    if n == 0 {
        return Err(Error::Config("N must be at least 1".into()));
    }
    let mut order = (opts.nodes_per_n * (n + 1)).max(opts.min_order);
    let mut last: Option<(f64, usize, RecurrenceTable)> = None;
    for _ in 0..=opts.max_doublings {
        let grid = build_quadrature(w, order)?;
        let table = stieltjes_recurrence(&grid, n + 1)?;
        let log_d = table.log_det(n);
        if let Some((prev, _, _)) = &last {
            if (log_d - prev).abs() <= opts.tolerance * log_d.abs().max(1.0) {
                return Ok(HankelResult {
                    log_d,
                    node_count: grid.len(),
                    stable: true,
                    table,
                });
            }
        }
        last = Some((log_d, grid.len(), table));
        order *= 2;
    }
    let (log_d, node_count, table) = last.expect("at least one pass");
    log::warn!("log D_{n} not stable to {} after {} nodes", opts.tolerance, node_count);
    Ok(HankelResult {
        log_d,
        node_count,
        stable: false,
        table,
    })
}

pub fn log_hankel(w: &WeightSpec, n: usize) -> Result<f64> {
    log_hankel_detailed(w, n, &HankelOptions::default()).map(|r| r.log_d)
}

fn without_jumps(w: &WeightSpec) -> Result<WeightSpec> {
    if !w.jumps.is_empty() {
        return Err(Error::InvalidSpec("base weight must not carry jumps".into()));
    }
    Ok(w.clone())
}

/// `log 𝔼 e^{γ h_N(x)}` through Heine's identity:
/// `-√2π γ N F(x) + log D_N(x; γ) - log D_N(0; 0)`.
pub fn log_exp_moment(n: usize, x: f64, gamma: f64, w: &WeightSpec) -> Result<f64> {
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::Domain(format!("x = {x} must satisfy |x| < 1")));
    }
    let base = without_jumps(w)?;
    if gamma == 0.0 {
        return Ok(0.0);
    }
    let f = arcsine_cdf(x)?;
    let with = base.clone().with_jump(x, gamma);
    Ok(-SQRT2_PI * gamma * n as f64 * f + log_hankel(&with, n)? - log_hankel(&base, n)?)
}

/// `log[D_N(x, y; γ, γ) D_N] - log[D_N(x; γ) D_N(y; γ)]`.
pub fn log_two_point_ratio(n: usize, x: f64, y: f64, gamma: f64, w: &WeightSpec) -> Result<f64> {
    if x == y {
        return Err(Error::Degenerate(
            "x = y: use the single-jump determinant with strength 2γ".into(),
        ));
    }
    if !(-1.0 < x && x < y && y < 1.0) {
        return Err(Error::Domain(format!("need -1 < x < y < 1, got ({x}, {y})")));
    }
    let base = without_jumps(w)?;
    if gamma == 0.0 {
        return Ok(0.0);
    }
    let both = base.clone().with_jump(x, gamma).with_jump(y, gamma);
    let lx = base.clone().with_jump(x, gamma);
    let ly = base.clone().with_jump(y, gamma);
    Ok(log_hankel(&both, n)? + log_hankel(&base, n)? - log_hankel(&lx, n)? - log_hankel(&ly, n)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DifferentialIdentityCheck {
    /// Centered difference of `log D_N` in the location of the last jump.
    pub finite_difference: f64,
    /// Right side of the identity from the orthogonal polynomials.
    pub identity: f64,
    pub residual: f64,
}

/// Compares `d/dx₂ log D_N` against
/// `(e^{√2πγ₂} - 1) w(x₂) (π_{N-1} π_N' - π_N π_{N-1}')(x₂) / h_{N-1}`,
/// where `w` is the weight without the moving jump. The last jump of `w` is
/// moved to `x2`.
pub fn verify_differential_identity(
    w: &WeightSpec,
    n: usize,
    x2: f64,
    step: f64,
) -> Result<DifferentialIdentityCheck> {
    if !(step > 0.0) {
        return Err(Error::Config("step must be positive".into()));
    }
    if w.jumps.is_empty() {
        return Err(Error::InvalidSpec("weight needs at least one jump".into()));
    }
    let k = w.jumps.len() - 1;
    let at = |loc: f64| -> Result<WeightSpec> {
        let mut v = w.clone();
        v.jumps[k].x = loc;
        if k > 0 && v.jumps[0].x >= loc {
            return Err(Error::Domain(format!(
                "moving jump at {loc} must stay right of the fixed jump at {}",
                v.jumps[0].x
            )));
        }
        v.validate()?;
        Ok(v)
    };
    let opts = HankelOptions::default();
    let plus = log_hankel_detailed(&at(x2 + step)?, n, &opts)?.log_d;
    let minus = log_hankel_detailed(&at(x2 - step)?, n, &opts)?.log_d;
    let centre = at(x2)?;
    let res = log_hankel_detailed(&centre, n, &opts)?;
    let gamma2 = centre.jumps[k].gamma;
    // Weight just to the right of x2, i.e. without the moving jump's factor.
    let mut rest = centre.clone();
    rest.jumps.remove(k);
    let w_rest = rest.eval(x2);
    let (pn, dn) = res.table.monic_with_derivative(n, x2);
    let (pm, dm) = res.table.monic_with_derivative(n - 1, x2);
    let identity = (SQRT2_PI * gamma2).exp_m1() * w_rest * (pm * dn - pn * dm) / res.table.h(n - 1);
    let finite_difference = (plus - minus) / (2.0 * step);
    Ok(DifferentialIdentityCheck {
        finite_difference,
        identity,
        residual: (finite_difference - identity).abs(),
    })
}

/// Basis for the moment-matrix oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentBasis {
    /// Classical moments `∫ x^{j+k} 𝒲`.
    Monomial,
    /// Monic Chebyshev polynomials `2^{1-k} T_k`; same determinant, far
    /// better conditioned.
    Chebyshev,
}

/// `∫_a^b g(x) 𝒲(x) dx` by tanh–sinh on each smooth piece.
fn weighted_integral(w: &WeightSpec, g: &dyn Fn(f64) -> f64) -> Result<f64> {
    let b = w.boundaries();
    let mut total = 0.0;
    for seg in b.windows(2) {
        let (lo, hi) = (seg[0], seg[1]);
        let mid = 0.5 * (lo + hi);
        let jump_part = w.log_smooth_and_jumps(mid) - w.t.eval(mid);
        let v = tanh_sinh(
            |x, da, db| {
                let one_minus = if hi == 1.0 { db } else { 1.0 - x };
                let one_plus = if lo == -1.0 { da } else { 1.0 + x };
                let mut lw = jump_part + w.t.eval(x);
                if w.alpha != 0.0 {
                    lw += w.alpha * one_minus.ln();
                }
                if w.beta != 0.0 {
                    lw += w.beta * one_plus.ln();
                }
                g(x) * lw.exp()
            },
            lo,
            hi,
            1e-15,
        )?;
        total += v;
    }
    Ok(total)
}

/// `log det` of the `N×N` Gram matrix of the chosen basis, moments by
/// tanh–sinh quadrature and determinant by LU. Intended for N ≤ 8.
pub fn moment_determinant_oracle(w: &WeightSpec, n: usize, basis: MomentBasis) -> Result<f64> {
    w.validate()?;
    let mom: Vec<f64> = (0..2 * n - 1)
        .map(|k| match basis {
            MomentBasis::Monomial => weighted_integral(w, &|x| x.powi(k as i32)),
            MomentBasis::Chebyshev => {
                weighted_integral(w, &|x| (k as f64 * x.clamp(-1.0, 1.0).acos()).cos())
            }
        })
        .collect::<Result<_>>()?;
    let g = DMatrix::from_fn(n, n, |i, j| match basis {
        MomentBasis::Monomial => mom[i + j],
        MomentBasis::Chebyshev => {
            let si = if i == 0 { 1.0 } else { 2f64.powi(1 - i as i32) };
            let sj = if j == 0 { 1.0 } else { 2f64.powi(1 - j as i32) };
            si * sj * 0.5 * (mom[i + j] + mom[i.abs_diff(j)])
        }
    });
    let det = g.lu().determinant();
    if !(det > 0.0) {
        return Err(Error::Precision(format!(
            "moment determinant not positive ({det:e}) for N={n}"
        )));
    }
    Ok(det.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masses() {
        let g = build_quadrature(&WeightSpec::jacobi(0.0, 0.0), 4).unwrap();
        assert!((g.integrate(|_| 1.0) - 2.0).abs() < 1e-15);
        let g = build_quadrature(&WeightSpec::jacobi(0.5, 0.0), 4).unwrap();
        assert!((g.integrate(|_| 1.0) - 4.0 * SQRT_2 / 3.0).abs() < 1e-14);
        let (x, gm) = (0.3, 0.4);
        let g = build_quadrature(&WeightSpec::jacobi(0.0, 0.0).with_jump(x, gm), 4).unwrap();
        let exact = (SQRT2_PI * gm).exp() * (x + 1.0) + (1.0 - x);
        assert!((g.integrate(|_| 1.0) - exact).abs() < 1e-13);
    }

    #[test]
    fn legendre_recurrence() {
        let g = build_quadrature(&WeightSpec::jacobi(0.0, 0.0), 128).unwrap();
        let t = stieltjes_recurrence(&g, 20).unwrap();
        assert!((t.h(0) - 2.0).abs() < 1e-14);
        for k in 0..20 {
            assert!(t.diag[k].abs() < 1e-14);
            if k > 0 {
                let kf = k as f64;
                assert!((t.offdiag2[k] - kf * kf / (4.0 * kf * kf - 1.0)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn small_legendre_determinants() {
        let w = WeightSpec::jacobi(0.0, 0.0);
        assert!((log_hankel(&w, 1).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((log_hankel(&w, 2).unwrap() - (4.0f64 / 3.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(
            build_quadrature(&WeightSpec::jacobi(0.0, 0.0).with_jump(1.0, 0.1), 8),
            Err(Error::Domain(_))
        ));
        let g = build_quadrature(&WeightSpec::jacobi(0.0, 0.0), 8).unwrap();
        assert!(matches!(stieltjes_recurrence(&g, 4), Err(Error::Precision(_))));
        assert!(matches!(
            log_two_point_ratio(4, 0.1, 0.1, 0.5, &WeightSpec::jacobi(0.0, 0.0)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn single_particle_exp_moment() {
        let (x, g) = (0.35, 0.7);
        let f = arcsine_cdf(x).unwrap();
        let direct = (-SQRT2_PI * g * f).exp()
            * (0.5 * (1.0 + x) * (SQRT2_PI * g).exp() + 0.5 * (1.0 - x));
        let v = log_exp_moment(1, x, g, &WeightSpec::jacobi(0.0, 0.0)).unwrap();
        assert!((v - direct.ln()).abs() < 1e-13);
        assert_eq!(log_exp_moment(5, x, 0.0, &WeightSpec::jacobi(0.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn christoffel_darboux_matches_sum() {
        let w = WeightSpec::jacobi(0.5, -0.3).with_jump(0.1, 0.4);
        let r = log_hankel_detailed(&w, 6, &HankelOptions::default()).unwrap();
        let x = 0.37;
        let (pn, dn) = r.table.monic_with_derivative(6, x);
        let (pm, dm) = r.table.monic_with_derivative(5, x);
        let cd = (pm * dn - pn * dm) / r.table.h(5);
        assert!((cd - r.table.christoffel_sum(6, x)).abs() < 1e-10 * cd.abs());
    }

    #[test]
    fn graded_panels_cover_interval() {
        let p = graded(-1.0, 0.999, Some(0.001), None);
        assert_eq!(p.first().unwrap().0, -1.0);
        assert_eq!(p.last().unwrap().1, 0.999);
        assert!(p.windows(2).all(|w| w[0].1 == w[1].0));
        assert!(p.len() > 3);
    }
}
