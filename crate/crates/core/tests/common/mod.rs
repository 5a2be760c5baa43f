#![allow(dead_code)]

use juelab_core::cheb::ChebSeries;
use juelab_core::hankel::{log_hankel_detailed, HankelOptions, WeightSpec};
use juelab_core::quadrature::tanh_sinh;
use juelab_core::rng::StreamRng;
use rand::Rng;

/// Random weight with α, β ∈ (-0.9, 3), up to two jumps at least 0.05 apart
/// and a Chebyshev perturbation of degree ≤ 5.
pub fn random_weight(rng: &mut StreamRng) -> WeightSpec {
    let mut w = WeightSpec::jacobi(rng.random_range(-0.9..3.0), rng.random_range(-0.9..3.0));
    let jumps = rng.random_range(0..=2);
    let mut xs: Vec<f64> = (0..jumps).map(|_| rng.random_range(-0.9..0.9)).collect();
    xs.sort_by(f64::total_cmp);
    if xs.len() == 2 && xs[1] - xs[0] < 0.05 {
        xs[1] = xs[0] + 0.05;
    }
    for x in xs {
        w = w.with_jump(x, rng.random_range(-0.8..0.8));
    }
    let degree = rng.random_range(0..=5);
    let coeffs: Vec<f64> = (0..=degree).map(|_| rng.random_range(-0.5..0.5)).collect();
    w.with_t(ChebSeries::new(coeffs))
}

/// Expected fraction of eigenvalues in each cell `[edges[i], edges[i+1]]`,
/// from the one-point density `𝒲(x) K_N(x, x) / N`.
pub fn one_point_cell_mass(w: &WeightSpec, n: usize, edges: &[f64]) -> Vec<f64> {
    let table = log_hankel_detailed(w, n, &HankelOptions::default()).unwrap().table;
    edges
        .windows(2)
        .map(|e| {
            tanh_sinh(
                |x, _, _| w.eval(x) * table.christoffel_sum(n, x) / n as f64,
                e[0],
                e[1],
                1e-10,
            )
            .unwrap()
        })
        .collect()
}

/// `count + 1` cell edges equally spaced in the arcsine distribution.
pub fn arcsine_edges(count: usize) -> Vec<f64> {
    (0..=count)
        .map(|i| -(std::f64::consts::PI * i as f64 / count as f64).cos())
        .collect()
}

pub fn histogram(values: impl Iterator<Item = f64>, edges: &[f64]) -> Vec<f64> {
    let mut h = vec![0.0; edges.len() - 1];
    for v in values {
        let i = edges.partition_point(|&e| e <= v).clamp(1, edges.len() - 1) - 1;
        h[i] += 1.0;
    }
    h
}
