use lowlying::debranges::{build_debranges, extremal_ratio, xi0, RATIO_TRUNCATION};
use lowlying::embedding::{
    eigen_multiplicity, rayleigh_quotient, sampling_norm_check, sharp_constants, solve_eta_extremes, EtaEquation,
};
use lowlying::numerics::{sinc_pi_real, QuadratureConfig};
use lowlying::SymmetryGroup;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `Σ a_k sinc(Δ(x − s_k)/2)²`: exponential type `πΔ`, decaying like `1/x²`.
fn band_limited(delta: f64, terms: Vec<(f64, f64)>) -> impl Fn(f64) -> Complex64 {
    move |x| c(terms.iter().map(|(a, s)| a * sinc_pi_real(0.5 * delta * (x - s)).powi(2)).sum(), 0.0)
}

#[test]
fn shifted_sinc_does_not_beat_first_zero() {
    let delta = 2.0;
    let xi = xi0(SymmetryGroup::U, delta).unwrap().xi0;
    let ratio = extremal_ratio(SymmetryGroup::U, delta, |x| c(sinc_pi_real(delta * (x - 0.6)), 0.0), RATIO_TRUNCATION)
        .unwrap();
    assert!(ratio >= xi - 1e-3);
}

#[test]
fn first_zero_is_shared_by_sharp_pairs() {
    for d in [1.1, 1.6, 2.0] {
        assert_eq!(xi0(SymmetryGroup::O, d).unwrap().xi0, xi0(SymmetryGroup::U, d).unwrap().xi0);
        assert_eq!(xi0(SymmetryGroup::SoOdd, d).unwrap().xi0, xi0(SymmetryGroup::Sp, d).unwrap().xi0);
    }
}

#[test]
fn no_smaller_sign_change_on_scan_grid() {
    for (g, d) in [(SymmetryGroup::SoEven, 1.5), (SymmetryGroup::Sp, 2.0), (SymmetryGroup::U, 1.0)] {
        let db = build_debranges(g, d).unwrap();
        let x0 = xi0(g, d).unwrap().xi0;
        let f0 = db.first_zero_function(0.0);
        let mut x = 1e-3;
        while x < x0 - 1e-3 {
            assert_eq!(db.first_zero_function(x) > 0.0, f0 > 0.0, "{g} {d} {x}");
            x += 1e-3;
        }
        let (lo, hi) = (db.first_zero_function(x0 - 1e-9), db.first_zero_function(x0 + 1e-9));
        assert!(lo * hi <= 0.0);
    }
}

#[test]
fn sampling_sum_matches_quadrature() {
    let delta = 1.5;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let terms: Vec<(f64, f64)> = (0..5).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-2.0..2.0))).collect();
    let f = band_limited(delta, terms);
    let sampled = sampling_norm_check(&f, delta, 20_000);
    let direct: f64 = QuadratureConfig::default()
        .integrate(-2000.0, 2000.0, &[0.0], |x| f(x).norm_sqr())
        .unwrap();
    assert!((sampled - direct).abs() < 1e-6, "{sampled} vs {direct}");
}

#[test]
fn degenerate_bandwidth_has_double_eigenvalue() {
    let d = (1.0 + 3.0 * PI) / (1.0 + 1.5 * PI);
    let k = sharp_constants(SymmetryGroup::SoEven, d).unwrap();
    assert!((k.eta_minus + (d - 1.0) / (3.0 * PI)).abs() < 1e-10);
    assert_eq!(eigen_multiplicity(SymmetryGroup::SoEven, d, 1000, k.eta_minus, 1e-5).unwrap(), 2);
    let k = sharp_constants(SymmetryGroup::SoEven, 1.5).unwrap();
    assert_eq!(eigen_multiplicity(SymmetryGroup::SoEven, 1.5, 1000, k.eta_minus, 1e-5).unwrap(), 1);
}

#[test]
fn eta_range_is_validated() {
    assert!(solve_eta_extremes(EtaEquation::SoOdd, 1.0).is_err());
    assert!(solve_eta_extremes(EtaEquation::SoEvenSp, 2.5).is_err());
    for d in [1.0 + 1e-9, 1.001, 1.5, 2.0] {
        let (m, p) = solve_eta_extremes(EtaEquation::SoEvenSp, d).unwrap();
        assert!(-1.0 < m && m < 0.0 && p > 0.0);
    }
    let (_, p) = solve_eta_extremes(EtaEquation::SoEvenSp, 1.0 + 1e-9).unwrap();
    assert!((p - 0.5).abs() < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn rayleigh_quotient_within_sharp_constants(
        g in prop::sample::select(vec![SymmetryGroup::U, SymmetryGroup::O, SymmetryGroup::Sp, SymmetryGroup::SoEven, SymmetryGroup::SoOdd]),
        d in 0.2f64..=2.0,
        terms in prop::collection::vec((-1.0f64..1.0, -2.0f64..2.0), 1..5),
    ) {
        prop_assume!(terms.iter().any(|(a, _)| a.abs() > 0.05));
        let k = sharp_constants(g, d).unwrap();
        let q = rayleigh_quotient(g, d, band_limited(d, terms), 400.0, 20_000).unwrap();
        prop_assert!(q >= k.c_minus.powi(2) - 1e-6 && q <= k.c_plus.powi(2) + 1e-6, "{g} {d}: {q} vs {k:?}");
    }
}
