mod common;

use common::random_weight;
use juelab_core::cheb::ChebSeries;
use juelab_core::hankel::{
    build_quadrature, log_hankel, log_two_point_ratio, moment_determinant_oracle,
    verify_differential_identity, MomentBasis, WeightSpec,
};
use juelab_core::rng;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn agrees_with_moment_determinant(seed in any::<u64>(), n in 1usize..=8) {
        let w = random_weight(&mut rng::stream(seed, 0));
        let fast = log_hankel(&w, n).unwrap();
        let oracle = moment_determinant_oracle(&w, n, MomentBasis::Chebyshev).unwrap();
        prop_assert!((fast - oracle).abs() < 1e-8 * fast.abs().max(1e-300), "{w:?} N={n}: {fast} vs {oracle}");
    }

    #[test]
    fn adding_a_positive_jump_increases_the_mass(seed in any::<u64>(), x in -0.9f64..0.9, g in 0.01f64..1.0) {
        let mut w = random_weight(&mut rng::stream(seed, 1));
        w.jumps.clear();
        let before = log_hankel(&w, 1).unwrap();
        let after = log_hankel(&w.clone().with_jump(x, g), 1).unwrap();
        prop_assert!(after > before);
    }

    #[test]
    fn coincident_jumps_add(seed in any::<u64>(), x in -0.9f64..0.9, g1 in -1.0f64..1.0, g2 in -1.0f64..1.0, n in 1usize..12) {
        let mut w = random_weight(&mut rng::stream(seed, 2));
        w.jumps.clear();
        let split = log_hankel(&w.clone().with_jump(x, g1).with_jump(x, g2), n).unwrap();
        let merged = log_hankel(&w.clone().with_jump(x, g1 + g2), n).unwrap();
        prop_assert_eq!(split, merged);
    }

    #[test]
    fn constant_shift_scales_by_n(seed in any::<u64>(), c in -2.0f64..2.0, n in 1usize..40) {
        let w = random_weight(&mut rng::stream(seed, 3));
        let mut coeffs = w.t.coeffs().to_vec();
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        coeffs[0] += c;
        let shifted = w.clone().with_t(ChebSeries::new(coeffs));
        let d = log_hankel(&shifted, n).unwrap() - log_hankel(&w, n).unwrap();
        prop_assert!((d - n as f64 * c).abs() < 1e-10 * (1.0 + n as f64 * c.abs()));
    }
}

#[test]
fn monomial_and_chebyshev_oracles_agree_for_small_n() {
    let w = WeightSpec::jacobi(0.4, 1.1).with_jump(-0.2, 0.5);
    for n in 1..=5 {
        let a = moment_determinant_oracle(&w, n, MomentBasis::Monomial).unwrap();
        let b = moment_determinant_oracle(&w, n, MomentBasis::Chebyshev).unwrap();
        assert!((a - b).abs() < 1e-9 * a.abs(), "N={n}: {a} vs {b}");
    }
}

#[test]
fn quadrature_integrates_chebyshev_polynomials_exactly() {
    let cheb = |m: usize, x: f64| (m as f64 * x.clamp(-1.0, 1.0).acos()).cos();
    let antiderivative = |m: usize, x: f64| match m {
        0 => x,
        1 => 0.5 * x * x,
        _ => cheb(m + 1, x) / (2.0 * (m + 1) as f64) - cheb(m - 1, x) / (2.0 * (m - 1) as f64),
    };
    let w = WeightSpec::jacobi(0.0, 0.0).with_jump(-0.55, -0.2).with_jump(0.3, 0.4);
    let order = 16;
    let grid = build_quadrature(&w, order).unwrap();
    let cuts = [-1.0, -0.55, 0.3, 1.0];
    for m in 0..2 * order {
        let mut exact = 0.0;
        for piece in cuts.windows(2) {
            let mid = 0.5 * (piece[0] + piece[1]);
            exact += w.eval(mid) * (antiderivative(m, piece[1]) - antiderivative(m, piece[0]));
        }
        let got = grid.integrate(|t| cheb(m, t));
        assert!((got - exact).abs() < 1e-13, "m={m}: {got} vs {exact}");
    }
}

#[test]
fn differential_identity_holds() {
    for w in [
        WeightSpec::jacobi(0.0, 0.0).with_jump(0.2, 0.3),
        WeightSpec::jacobi(0.6, -0.3).with_jump(0.2, 0.3),
        WeightSpec::jacobi(1.5, 0.2)
            .with_jump(-0.4, 0.5)
            .with_jump(0.2, 0.3)
            .with_t(ChebSeries::new(vec![0.1, 0.3, -0.2])),
    ] {
        let c = verify_differential_identity(&w, 4, 0.2, 1e-4).unwrap();
        assert!(c.residual < 1e-5, "{w:?}: {c:?}");
    }
}

#[test]
fn two_point_ratio_is_reflection_symmetric() {
    // t ↦ -t maps the jump at x with strength γ to one at -x with strength -γ.
    let w = WeightSpec::jacobi(0.5, 0.5);
    let a = log_two_point_ratio(30, -0.3, 0.4, 0.5, &w).unwrap();
    let b = log_two_point_ratio(30, -0.4, 0.3, -0.5, &w).unwrap();
    assert!((a - b).abs() < 1e-9);
}
