//! Estimator invariants on synthetic profiles, gauged sums on E0, and the
//! complexity-profile functionals.

use gaugedim::algodim::{gauged_dim_from_profile, jump_characterization, ratio_dimension, Synthetic};
use gaugedim::constructions::{endpoints_and_midpoints, pow7, self_similar_e0};
use gaugedim::covering::{CoverOptions, LogProfile, Mode};
use gaugedim::dimension::{cover_sum, loglog_slope, minkowski_dimension, packing_sum, EstimatorConfig, Kind, Window};
use gaugedim::gauge::{canonical, check_doubling, check_jump_smallness, jump_log_identity, Scale, ValidationConfig};
use gaugedim::metric::{ExactLine, Rational};
use proptest::prelude::*;

const TOL: f64 = 2e-3;

fn levels(n: u32) -> Vec<f64> {
    (1..=n).map(|k| -f64::from(k)).collect()
}

/// Nondecreasing log2 counts as δ shrinks.
fn random_profile() -> impl Strategy<Value = LogProfile> {
    (8usize..40, prop::collection::vec(0.0..2.0f64, 40)).prop_map(|(n, steps)| {
        let mut acc = 0.0;
        let counts: Vec<f64> = steps[..n]
            .iter()
            .map(|s| {
                acc += s;
                acc
            })
            .collect();
        LogProfile::new(levels(n as u32), counts).unwrap()
    })
}

fn estimate(p: &LogProfile, family: &gaugedim::gauge::GaugeFamily, kind: Kind) -> f64 {
    minkowski_dimension(p, family, kind, &EstimatorConfig::default()).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn lower_never_exceeds_upper(p in random_profile()) {
        let theta = canonical();
        prop_assert!(estimate(&p, &theta, Kind::Lower) <= estimate(&p, &theta, Kind::Upper) + TOL);
    }

    #[test]
    fn jump_never_increases_the_estimate(p in random_profile()) {
        let theta = canonical();
        for kind in [Kind::Lower, Kind::Upper] {
            prop_assert!(estimate(&p, &theta.jump(), kind) <= estimate(&p, &theta, kind) + TOL);
        }
    }

    #[test]
    fn bisection_agrees_with_loglog_on_power_laws(c in 0.1..3.0f64, log2_c0 in 0.0..0.1f64, n in 8u32..40) {
        // N(δ) = C·δ^{-c}; the bisection is biased by log2(C)/log2(1/δ)
        let p = LogProfile::from_fn(&levels(n), |l| log2_c0 - c * l).unwrap();
        let slope = loglog_slope(&p, Window::All).unwrap().value;
        prop_assert!((slope - c).abs() < 1e-9);
        for kind in [Kind::Lower, Kind::Upper] {
            let b = estimate(&p, &canonical(), kind);
            prop_assert!((b - slope).abs() <= 0.02, "{kind:?}: bisection {b} vs slope {slope}");
        }
    }

    #[test]
    fn theta_recovers_complexity_ratios(a in 0.05..2.0f64, b in 0.05..2.0f64) {
        let rs: Vec<f64> = (1..=40).map(f64::from).collect();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        for synth in [Synthetic::Linear(a), Synthetic::Alternating(lo, hi), Synthetic::Const(a * 10.0)] {
            let p = synth.profile(&rs).unwrap();
            for kind in [Kind::Lower, Kind::Upper] {
                let est = gauged_dim_from_profile(&p, &canonical(), kind, &EstimatorConfig::default()).unwrap().value;
                let ratio = ratio_dimension(&p, kind, None).unwrap();
                prop_assert!((est - ratio).abs() <= 0.02, "{synth:?} {kind:?}: {est} vs {ratio}");
            }
        }
    }

    #[test]
    fn jump_gauge_never_beats_its_family_on_complexity(a in 0.05..2.0f64) {
        let rs: Vec<f64> = (1..=40).map(f64::from).collect();
        let p = Synthetic::Linear(a).profile(&rs).unwrap();
        let cfg = EstimatorConfig::default();
        for kind in [Kind::Lower, Kind::Upper] {
            let plain = gauged_dim_from_profile(&p, &canonical(), kind, &cfg).unwrap().value;
            let jumped = gauged_dim_from_profile(&p, &canonical().jump(), kind, &cfg).unwrap().value;
            prop_assert!(jumped <= plain + TOL);
        }
    }

    #[test]
    fn log_identity(k in 0.0..1e4f64, s in 0.01..4.0f64, r in 0.0..30.0f64) {
        let id = jump_log_identity(&canonical(), k, s, Scale::from_log2(-r)).unwrap();
        prop_assert!(id.relative_error <= 1e-12, "{id:?}");
    }
}

#[test]
fn jump_characterization_on_pure_powers() {
    // k(2^-r) = 2^{c r}: the direct dimension is c
    let rs: Vec<f64> = (1..=40).map(f64::from).collect();
    for c in [0.1, 0.5, 0.9, 1.7] {
        let p = Synthetic::Exp(c).profile(&rs).unwrap();
        let j = jump_characterization(&p, &canonical(), Kind::Upper, &EstimatorConfig::default()).unwrap();
        assert!((j.s_direct.value - c).abs() <= TOL, "{c}: {}", j.s_direct.value);
        assert!(j.discrepancy <= TOL, "{c}: {j:?}");
    }
}

#[test]
fn jump_smallness_and_doubling_for_theta() {
    let schedule: Vec<f64> = (1..=60).map(|k| (-f64::from(k)).exp2()).collect();
    let cfg = ValidationConfig::default();
    for s in [0.5, 1.0, 2.0] {
        assert!(check_jump_smallness(&canonical(), s, &schedule, &cfg).unwrap().passed());
        assert!(check_doubling(&canonical(), s, s + 0.5, &schedule, &cfg).unwrap().passed());
    }
}

#[test]
fn gauged_sums_on_e0_straddle_the_dimension() {
    let dim = 2f64.ln() / 7f64.ln();
    let points = endpoints_and_midpoints(&self_similar_e0(6).unwrap()).unwrap();
    let opts = CoverOptions::default();
    let (below, above) = (dim - 0.1, dim + 0.1);
    let mut pack = Vec::new();
    let mut cover = Vec::new();
    for l in 1..=6u32 {
        let delta = Rational::new(1, i128::from(pow7(l)));
        pack.push(packing_sum(&ExactLine, &points, delta, &canonical(), below, Mode::Exact, &opts).unwrap().log2);
        // the canonical cover: 2^l intervals of diameter 7^-l
        let diameters = vec![7f64.powi(-(l as i32)); 1 << l];
        cover.push(cover_sum(&diameters, &canonical(), above).unwrap().log2);
    }
    assert!(pack.windows(2).all(|w| w[1] > w[0]), "{pack:?}");
    assert!(cover.windows(2).all(|w| w[1] < w[0]), "{cover:?}");
    // log2 of 2^l 7^{-ls} is linear in l with slope 1 − s log2 7
    let slope = 1.0 - above * 7f64.log2();
    assert!((cover[5] - 6.0 * slope).abs() < 1e-9);
}
