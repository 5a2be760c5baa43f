use juelab_core::field::{
    compare_measures, gmc_weights, sample_field, CompareOptions, FieldSample, MollifiedBasis,
};
use juelab_core::rng;
use juelab_core::stats::{mean, shapiro_francia, skewness, std_error, variance, variance_std_error};
use juelab_core::{EnsembleSpec, McmcConfig, Method};

const DRAWS: u64 = 1000;

fn draws(k: usize, seed: u64) -> Vec<FieldSample> {
    (0..DRAWS)
        .map(|i| sample_field(k, &mut rng::stream(seed, i)).unwrap())
        .collect()
}

#[test]
fn truncated_field_is_centred_gaussian_with_series_variance() {
    let k = 256;
    let fields = draws(k, 5);
    for x in [-0.7, 0.0, 0.45] {
        let v: Vec<f64> = fields.iter().map(|f| f.eval(x)).collect();
        let (_, p) = shapiro_francia(&v).unwrap();
        assert!(p > 1e-3, "x = {x}: Shapiro–Francia p = {p}");
        assert!(mean(&v).abs() < 4.0 * std_error(&v), "x = {x}: mean {}", mean(&v));
        let want = FieldSample::variance_at(k, x);
        assert!(
            (variance(&v) - want).abs() < 4.0 * variance_std_error(&v),
            "x = {x}: variance {} vs {want}",
            variance(&v)
        );
    }
}

#[test]
fn mollified_variance_matches_independent_quadrature() {
    // Σ_k (2/k) (∫ φ_ε(x - u) sin(k arccos(-u)) du)², K = 200, ε = 0.1,
    // evaluated with 30-digit adaptive quadrature.
    let basis = MollifiedBasis::new(200, 0.1, &[0.0, 0.5]).unwrap();
    let v = basis.variance();
    assert!((v[0] - 2.307_560_258_420_63).abs() < 1e-10, "{}", v[0]);
    assert!((v[1] - 2.027_995_665_903_9).abs() < 1e-10, "{}", v[1]);
}

#[test]
fn chaos_weights_have_unit_mean_and_right_skew() {
    let k = 256;
    let points = [-0.5, 0.0, 0.6];
    let basis = MollifiedBasis::new(k, 0.05, &points).unwrap();
    let ws: Vec<Vec<f64>> = draws(k, 9)
        .iter()
        .map(|f| gmc_weights(&basis, f, 0.9).weights)
        .collect();
    for (i, x) in points.iter().enumerate() {
        let v: Vec<f64> = ws.iter().map(|w| w[i]).collect();
        assert!((mean(&v) - 1.0).abs() < 4.0 * std_error(&v), "x = {x}: mean {}", mean(&v));
        assert!(skewness(&v) > 0.0, "x = {x}");
    }
}

#[test]
fn measure_comparison_is_trivial_without_coupling_and_reproducible() {
    let spec = EnsembleSpec::new(8, 0.5, 0.5, Method::Tridiagonal, 21);
    let opts = CompareOptions {
        grid_points: 32,
        field_terms: 64,
    };
    let mcmc = McmcConfig::default();
    let flat = compare_measures(&spec, 0.0, 0.1, 100, &opts, &mcmc).unwrap();
    for f in &flat.functionals {
        assert_eq!(f.ks.statistic, 0.0, "T_{}", f.k);
        assert!(f.mean_difference.abs() < 1e-12);
    }
    let a = compare_measures(&spec, 0.6, 0.1, 100, &opts, &mcmc).unwrap();
    let b = compare_measures(&spec, 0.6, 0.1, 100, &opts, &mcmc).unwrap();
    assert_eq!(a, b);
    assert!(a.functionals.iter().any(|f| f.ks.statistic > 0.0));
}
