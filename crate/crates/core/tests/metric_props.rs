//! Metric axioms on every built-in space, Hausdorff distance as a metric,
//! and the hyperspace net contract.

use gaugedim::hyperspace::{hausdorff_distance, hyperspace_net, nearest_subset, CompactApprox};
use gaugedim::metric::{
    check_metric_axioms, dyadic_net, Euclidean, ExactLine, FiniteMatrix, MetricSpace, Rational, RealLine, Region,
    SequenceSpace,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

// 150 points give 11175 pairs and over 5·10^5 triples.
const N: usize = 150;

fn assert_axioms<M: MetricSpace>(space: &M, points: &[M::Point]) {
    let report = check_metric_axioms(space, points, 1e-12);
    assert!(report.holds(), "{}: {report:?}", space.descriptor());
}

#[test]
fn euclidean_axioms() {
    let mut rng = StdRng::seed_from_u64(1);
    for dim in [1, 2, 5] {
        let pts: Vec<Vec<f64>> = (0..N).map(|_| (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect()).collect();
        assert_axioms(&Euclidean::new(dim), &pts);
    }
}

#[test]
fn line_axioms() {
    let mut rng = StdRng::seed_from_u64(2);
    let pts: Vec<f64> = (0..N).map(|_| rng.gen_range(-10.0..10.0)).collect();
    assert_axioms(&RealLine, &pts);
    let exact: Vec<Rational> = (0..N)
        .map(|_| Rational::new(rng.gen_range(-1000..1000), rng.gen_range(1..500)))
        .collect();
    assert_axioms(&ExactLine, &exact);
}

#[test]
fn sequence_space_axioms() {
    let mut rng = StdRng::seed_from_u64(3);
    let pts: Vec<Vec<bool>> = (0..N)
        .map(|_| (0..rng.gen_range(0..12)).map(|_| rng.gen()).collect())
        .collect();
    assert_axioms(&SequenceSpace, &pts);
}

#[test]
fn matrix_axioms() {
    // Euclidean distances of random planar points form a valid matrix metric
    let mut rng = StdRng::seed_from_u64(4);
    let xy: Vec<(f64, f64)> = (0..N).map(|_| (rng.gen(), rng.gen())).collect();
    let d = xy
        .iter()
        .map(|a| xy.iter().map(|b| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()).collect())
        .collect();
    let m = FiniteMatrix::new(d).unwrap();
    assert_axioms(&m, &m.points());
}

fn random_subset(rng: &mut StdRng) -> Vec<f64> {
    (0..rng.gen_range(1..8)).map(|_| rng.gen()).collect()
}

#[test]
fn hausdorff_is_a_metric() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..10_000 {
        let (a, b, c) = (random_subset(&mut rng), random_subset(&mut rng), random_subset(&mut rng));
        let ab = hausdorff_distance(&RealLine, &a, &b).unwrap();
        let bc = hausdorff_distance(&RealLine, &b, &c).unwrap();
        let ac = hausdorff_distance(&RealLine, &a, &c).unwrap();
        assert_eq!(ab, hausdorff_distance(&RealLine, &b, &a).unwrap());
        assert_eq!(hausdorff_distance(&RealLine, &a, &a).unwrap(), 0.0);
        assert!(ac <= ab + bc + 1e-15, "{a:?} {b:?} {c:?}");
        if ab == 0.0 {
            // identity: same closure, so same point set up to duplicates
            let mut x = a.clone();
            let mut y = b.clone();
            x.sort_by(f64::total_cmp);
            x.dedup();
            y.sort_by(f64::total_cmp);
            y.dedup();
            assert_eq!(x, y);
        }
    }
}

#[test]
fn hyperspace_net_contract() {
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..100 {
        let delta = rng.gen_range(0.08..0.5);
        let l = CompactApprox::new(&RealLine, random_subset(&mut rng), None).unwrap();
        let net = dyadic_net(&Region::interval(0.0, 1.0), delta, 1 << 10).unwrap().line_points();
        let subsets = hyperspace_net(&net, 20).unwrap();
        let (_, d) = nearest_subset(&RealLine, &l.points, &subsets).unwrap();
        assert!(d < delta, "ρ_H = {d} >= δ = {delta}");
    }
}
