use intensive::distribution::{log_pdf, pdf, pdf_generic, pdf_likely, pdf_unlikely};
use intensive::estimation::{
    estimate_likely_closed, estimate_unlikely_closed, mle_unlikely, Dataset,
};
use intensive::goodness_of_fit::{build_histogram, Binning};
use intensive::lognormal_bridge::{gap, series_lhs, series_rhs};
use intensive::{GenericParams, LikelyParams, Model, UnlikelyParams};
use proptest::prelude::*;

fn positive_data() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..100.0, 3..40)
        .prop_filter("needs spread", |v| v.iter().any(|x| *x != v[0]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_estimators_are_scale_equivariant(data in positive_data(), c in 0.01f64..100.0) {
        let a = estimate_unlikely_closed(&Dataset::new(data.clone()).unwrap()).unwrap();
        let scaled: Vec<f64> = data.iter().map(|x| x * c).collect();
        let b = estimate_unlikely_closed(&Dataset::new(scaled).unwrap()).unwrap();
        prop_assert!((b.mu() / (c * a.mu()) - 1.0).abs() < 1e-12);
        prop_assert!((b.k() / (c * a.k()) - 1.0).abs() < 1e-8 * (a.mu() / a.k()).max(1.0));
    }

    #[test]
    fn likely_estimates_mirror_unlikely_ones(data in positive_data(), extra in 0.0f64..50.0) {
        let u = 100.0 + extra;
        let d = Dataset::new(data.clone()).unwrap();
        let unl = estimate_unlikely_closed(&d).unwrap();
        let mirrored = Dataset::new(data.iter().map(|x| u - x).collect()).unwrap();
        let lik = estimate_likely_closed(&mirrored, u).unwrap();
        prop_assert!(((u - lik.mu()) / unl.mu() - 1.0).abs() < 1e-12);
        prop_assert!((lik.k() - unl.k()).abs() < 1e-9 * u);
    }

    #[test]
    fn log_pdf_agrees_with_pdf(mu in 0.1f64..100.0, kf in 0.01f64..0.5, r in 0.05f64..5.0) {
        let m: Model = UnlikelyParams::new(mu, kf * mu).unwrap().into();
        let x = r * mu;
        let f = pdf(&m, x).unwrap();
        let lf = log_pdf(&m, x).unwrap();
        prop_assert!((lf.exp() - f).abs() <= 1e-12 * f.max(1e-300));
    }

    #[test]
    fn likely_is_an_exact_mirror(mu in 1.0f64..99.0, k in 0.01f64..5.0, x in -50.0f64..100.0) {
        let l = LikelyParams::new(mu, k, 100.0).unwrap();
        let via = pdf_unlikely(&UnlikelyParams::new(100.0 - mu, k).unwrap(), 100.0 - x).unwrap();
        prop_assert_eq!(pdf_likely(&l, x).unwrap(), via);
    }

    #[test]
    fn generic_is_symmetric_about_half_u(k in 1e-4f64..0.1, t in 0.0f64..1.0) {
        let u = 30_000.0;
        let g = GenericParams::new(u / 2.0, k, u).unwrap();
        let x = u / 2.0 + t * u / 2.0;
        prop_assert_eq!(pdf_generic(&g, x).unwrap(), pdf_generic(&g, u - x).unwrap());
    }

    #[test]
    fn histogram_densities_integrate_to_one(data in prop::collection::vec(-1e3f64..1e3, 2..500)) {
        prop_assume!(data.iter().any(|x| *x != data[0]));
        let h = build_histogram(&data, Binning::default()).unwrap();
        let total: f64 = h.densities.iter().zip(h.widths()).map(|(d, w)| d * w).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert_eq!(h.total() as usize, data.len());
    }

    #[test]
    fn gap_is_odd_under_inversion(r in 0.05f64..20.0) {
        prop_assume!((r - 1.0).abs() > 1e-6);
        let a = gap(r).unwrap();
        let b = gap(1.0 / r).unwrap();
        prop_assert!((a.lhs + b.lhs).abs() < 1e-12 * a.lhs.abs().max(1.0));
        prop_assert!((a.rhs + b.rhs).abs() < 1e-12 * a.rhs.abs().max(1.0));
        prop_assert!((a.rel_gap.unwrap() - b.rel_gap.unwrap()).abs() < 1e-9);
    }

    #[test]
    fn series_coincide_through_second_order(r in 0.01f64..1.99) {
        for order in 1..=2 {
            prop_assert_eq!(series_lhs(r, order).unwrap(), series_rhs(r, order).unwrap());
        }
    }
}

#[test]
fn mle_matches_closed_form_on_random_datasets() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let n = rng.random_range(5..200);
        let data: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..50.0)).collect();
        let d = Dataset::new(data).unwrap();
        let c = estimate_unlikely_closed(&d).unwrap();
        let m = mle_unlikely(&d).unwrap();
        assert!((m.mu() / c.mu() - 1.0).abs() < 1e-6, "{m:?} vs {c:?}");
        assert!((m.k() / c.k() - 1.0).abs() < 1e-6, "{m:?} vs {c:?}");
    }
}

/// `sup |f_generic − f_unlikely| / f_unlikely` on `(0, 10μ]` with `k·u` fixed.
fn generic_gap(mu: f64, k_eff: f64, u: f64) -> f64 {
    let unl = UnlikelyParams::new(mu, k_eff).unwrap();
    let gen = GenericParams::new(mu, k_eff / u, u).unwrap();
    (1..=1000)
        .map(|i| 0.01 * mu * i as f64)
        .filter_map(|x| {
            let a = pdf_unlikely(&unl, x).unwrap();
            (a > 1e-250).then(|| ((pdf_generic(&gen, x).unwrap() - a) / a).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn generic_tends_to_unlikely_as_u_grows() {
    let (mu, k_eff) = (10.0, 2.0);
    let gaps: Vec<f64> = [1e3, 1e4, 1e5, 1e6, 1e8]
        .iter()
        .map(|&u| generic_gap(mu, k_eff, u))
        .collect();
    for w in gaps.windows(2) {
        assert!(w[1] < w[0], "{gaps:?}");
    }
    assert!(gaps[4] < 1e-3, "{gaps:?}");
}
