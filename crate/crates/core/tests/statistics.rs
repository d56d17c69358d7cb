//! Seeded Monte Carlo checks of the samplers, estimators and fit tools.

use intensive::distribution::{pdf, QuadratureCdf};
use intensive::estimation::{
    estimate_homogeneous, estimate_unlikely_closed, histfit, Dataset, HistfitOptions,
    VarianceConvention,
};
use intensive::goodness_of_fit::{build_histogram, pp_series, r_squared_pp, Binning};
use intensive::sampling::{
    ks_critical_value, ks_statistic_from_cdf, ks_two_sample, ks_two_sample_critical_value, sample,
    sample_unlikely_reciprocal, SampleRequest,
};
use intensive::{
    GenericParams, HomogeneousParams, LikelyParams, Model, NormalParams, UnlikelyParams,
};

fn draws(model: Model, count: usize, seed: u64) -> Vec<f64> {
    sample(&SampleRequest { model, count, seed }).unwrap()
}

fn unlikely() -> Model {
    UnlikelyParams::new(10.0, 2.0).unwrap().into()
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn harmonic(xs: &[f64]) -> f64 {
    xs.len() as f64 / xs.iter().map(|x| 1.0 / x).sum::<f64>()
}

#[test]
fn every_variant_passes_ks_against_its_quadrature_cdf() {
    let models: Vec<Model> = vec![
        unlikely(),
        LikelyParams::new(25.0, 2.0, 30.0).unwrap().into(),
        HomogeneousParams::new(10.0, 0.01, 100.0).unwrap().into(),
        GenericParams::new(9000.0, 1e-4, 30000.0).unwrap().into(),
    ];
    let n = 20_000;
    let crit = ks_critical_value(n, 0.01).unwrap();
    for m in models {
        let c = QuadratureCdf::new(&m).unwrap();
        let mut passed = 0;
        for seed in 0..10 {
            let mut xs = draws(m, n, seed);
            assert!(xs.iter().all(|&x| m.in_closed_support(x)));
            xs.sort_by(f64::total_cmp);
            let d = ks_statistic_from_cdf(&c.cdf_sorted(&xs).unwrap());
            passed += usize::from(d < crit);
        }
        assert!(passed >= 9, "{:?}: {passed}/10", m.kind());
    }
}

#[test]
fn likely_draws_match_mirrored_unlikely_draws() {
    let u = 30.0;
    let direct = draws(LikelyParams::new(25.0, 2.0, u).unwrap().into(), 50_000, 1);
    let via: Vec<f64> =
        sample_unlikely_reciprocal(&UnlikelyParams::new(u - 25.0, 2.0).unwrap(), 50_000, 2)
            .into_iter()
            .map(|y| u - y)
            .collect();
    let d = ks_two_sample(&direct, &via).unwrap();
    assert!(
        d < ks_two_sample_critical_value(50_000, 50_000, 0.01).unwrap(),
        "D = {d}"
    );
}

#[test]
fn large_unlikely_samples_recover_the_means() {
    for xs in [
        draws(unlikely(), 1_000_000, 3),
        sample_unlikely_reciprocal(&UnlikelyParams::new(10.0, 2.0).unwrap(), 1_000_000, 3),
    ] {
        assert!((harmonic(&xs) / 10.0 - 1.0).abs() < 0.01);
        assert!((mean(&xs) / 12.0 - 1.0).abs() < 0.01);
        let p = estimate_unlikely_closed(&Dataset::new(xs).unwrap()).unwrap();
        assert!(
            (p.mu() / 10.0 - 1.0).abs() < 0.01 && (p.k() / 2.0 - 1.0).abs() < 0.03,
            "{p:?}"
        );
    }
}

#[test]
fn homogeneous_moments_and_k_round_trip() {
    let h = HomogeneousParams::new(10.0, 0.01, 100.0).unwrap();
    let xs = draws(h.into(), 1_000_000, 4);
    let n = xs.len() as f64;
    let m = mean(&xs);
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    let target = h.sigma_sq();
    assert!((m - 10.0).abs() < 3.0 * (target / n).sqrt());
    // the variance of the sample variance of a normal law is 2σ⁴/(n − 1)
    assert!((var - target).abs() < 3.0 * target * (2.0 / (n - 1.0)).sqrt());

    let open = HomogeneousParams::unbounded(10.0, 0.1).unwrap();
    let fit = estimate_homogeneous(
        &Dataset::new(draws(open.into(), 1_000_000, 5)).unwrap(),
        VarianceConvention::Sample,
    )
    .unwrap();
    assert!((fit.k() / 0.1 - 1.0).abs() < 0.02);
}

#[test]
fn estimation_error_shrinks_with_sample_size() {
    let mut medians = Vec::new();
    for n in [1_000, 10_000, 100_000] {
        let mut mu_err = Vec::new();
        let mut k_err = Vec::new();
        for seed in 0..20 {
            let p =
                estimate_unlikely_closed(&Dataset::new(draws(unlikely(), n, 100 + seed)).unwrap())
                    .unwrap();
            mu_err.push((p.mu() - 10.0).abs());
            k_err.push((p.k() - 2.0).abs());
        }
        mu_err.sort_by(f64::total_cmp);
        k_err.sort_by(f64::total_cmp);
        medians.push((mu_err[10], k_err[10]));
    }
    for w in medians.windows(2) {
        assert!(w[1].0 < w[0].0 && w[1].1 < w[0].1, "{medians:?}");
    }
}

#[test]
fn arithmetic_mean_overshoots_mu_by_k() {
    let bias: f64 = (0..100)
        .map(|seed| mean(&draws(unlikely(), 1000, 1000 + seed)) - 10.0)
        .sum::<f64>()
        / 100.0;
    assert!((bias / 2.0 - 1.0).abs() < 0.05, "{bias}");
}

#[test]
fn histogram_tracks_the_density() {
    let xs = draws(unlikely(), 100_000, 6);
    let h = build_histogram(&xs, Binning::Count(60)).unwrap();
    let n = xs.len() as f64;
    let c = QuadratureCdf::new(&unlikely()).unwrap();
    let mut inside = 0;
    for (i, w) in h.edges.windows(2).enumerate() {
        let width = w[1] - w[0];
        let expected = n * (c.cdf(w[1]).unwrap() - c.cdf(w[0]).unwrap());
        let mid = 0.5 * (w[0] + w[1]);
        let band = 3.0 * expected.sqrt().max(1.0) / (n * width);
        let dens_err = (h.densities[i] - pdf(&unlikely(), mid).unwrap()).abs();
        // the midpoint value differs from the bin average by O(width²)
        let curvature = (pdf(&unlikely(), w[0]).unwrap() + pdf(&unlikely(), w[1]).unwrap()
            - 2.0 * pdf(&unlikely(), mid).unwrap())
        .abs();
        inside += usize::from(dens_err <= band + curvature);
    }
    assert!(
        inside as f64 >= 0.95 * h.bins() as f64,
        "{inside}/{}",
        h.bins()
    );
}

#[test]
fn pp_r_squared_prefers_the_true_model() {
    let xs = draws(unlikely(), 10_000, 7);
    let truth = r_squared_pp(&pp_series(&xs, &unlikely()).unwrap()).unwrap();
    let wrong: Model = NormalParams::new(12.0, 28f64.sqrt()).unwrap().into();
    let other = r_squared_pp(&pp_series(&xs, &wrong).unwrap()).unwrap();
    assert!(truth >= 0.995, "{truth}");
    assert!(other < truth, "{other} vs {truth}");
}

#[test]
fn histfit_recovers_parameters_from_draws() {
    let xs = draws(unlikely(), 100_000, 8);
    let h = build_histogram(&xs, Binning::Count(40)).unwrap();
    let init: Model = UnlikelyParams::new(8.0, 3.0).unwrap().into();
    let fit = histfit(&h, &init, &HistfitOptions::default()).unwrap();
    let Model::Unlikely(p) = fit.model else {
        unreachable!()
    };
    assert!(
        (p.mu() / 10.0 - 1.0).abs() < 0.05 && (p.k() / 2.0 - 1.0).abs() < 0.05,
        "{p:?}"
    );
}
