//! Hyperspace covering numbers against an exhaustive oracle.

use gaugedim::gauge::{canonical, jump_log_identity, Scale};
use gaugedim::hyperspace::{hyperspace_covering_number, HyperMode, HyperOptions};
use proptest::prelude::*;

fn hausdorff(a: &[f64], b: &[f64]) -> f64 {
    let dir = |x: &[f64], y: &[f64]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).abs()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    dir(a, b).max(dir(b, a))
}

/// Minimum number of nonempty subsets of `e` whose open Hausdorff δ-balls
/// contain every nonempty subset of `e`.
fn oracle(e: &[f64], delta: f64) -> u64 {
    let subsets: Vec<Vec<f64>> = (1u32..1 << e.len())
        .map(|m| (0..e.len()).filter(|i| m >> i & 1 == 1).map(|i| e[i]).collect())
        .collect();
    let k = subsets.len();
    let balls: Vec<u32> = subsets
        .iter()
        .map(|t| (0..k).filter(|&i| hausdorff(&subsets[i], t) < delta).fold(0, |m, i| m | 1 << i))
        .collect();
    let full = (1u32 << k) - 1;
    (1u32..1 << k)
        .filter(|choice| (0..k).filter(|i| choice >> i & 1 == 1).fold(0, |u, i| u | balls[i]) == full)
        .map(|c| u64::from(c.count_ones()))
        .min()
        .unwrap()
}

fn distinct(max: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::btree_set(0u32..1000, 1..=max)
        .prop_map(|s| s.into_iter().map(|x| f64::from(x) / 1000.0).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn exact_matches_oracle_and_sits_in_the_sandwich(e in distinct(4), delta in 0.02..0.6f64) {
        let h = hyperspace_covering_number(&gaugedim::metric::RealLine, &e, delta, HyperMode::Exact, &HyperOptions::default()).unwrap();
        let exact = h.exact.unwrap();
        prop_assert_eq!(exact, oracle(&e, delta));
        prop_assert!(h.lower.exact.unwrap() <= u128::from(exact));
        prop_assert!(u128::from(exact) <= h.upper.exact.unwrap());
        prop_assert!(h.n_cover_anywhere <= h.n_cover);
    }

    #[test]
    fn sandwich_up_to_ten_points(e in distinct(10), delta in 0.02..0.6f64) {
        let h = hyperspace_covering_number(&gaugedim::metric::RealLine, &e, delta, HyperMode::Exact, &HyperOptions::default()).unwrap();
        let exact = u128::from(h.exact.unwrap());
        prop_assert!(h.lower.exact.unwrap() <= exact && exact <= h.upper.exact.unwrap());
        let greedy = hyperspace_covering_number(&gaugedim::metric::RealLine, &e, delta, HyperMode::Greedy, &HyperOptions::default()).unwrap();
        prop_assert!(u128::from(greedy.greedy.unwrap()) >= exact);
    }

    #[test]
    fn jump_exponent_identity_on_counts(n in 1u64..200, s in 0.05..3.0f64, r in 0.0..25.0f64) {
        let id = jump_log_identity(&canonical(), n as f64, s, Scale::from_log2(-r)).unwrap();
        prop_assert!(id.relative_error <= 1e-12, "{id:?}");
    }
}
