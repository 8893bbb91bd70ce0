//! Seven-adic construction: level geometry, bit accounting, the digit map.

use gaugedim::constructions::{
    arrange_for_g_map, build_construction, digits_interval, g_map_digits, self_similar_e0, BitSource, IntervalSet,
};
use gaugedim::metric::Rational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn r7(n: u64, level: u32) -> Rational {
    Rational::new(i128::from(n), 7i128.pow(level))
}

/// Checks the level geometry from the rational endpoints alone.
fn check_level(set: &IntervalSet, level: u32) {
    let width = r7(1, level);
    assert_eq!(set.len(), 1 << level);
    let ivs: Vec<(Rational, Rational)> = set.iter().map(|i| (i.lo_rational(), i.hi_rational())).collect();
    for (lo, hi) in &ivs {
        assert_eq!(hi - lo, width);
        assert!(*lo >= Rational::from_integer(0) && *hi <= Rational::from_integer(1));
    }
    for w in ivs.windows(2) {
        assert!(w[1].0 - w[0].1 >= width, "gap below 7^-{level}");
    }
    let mut labels = set.labels.clone();
    labels.sort();
    assert_eq!(labels, set.labels);
    assert!(set.labels.iter().all(|l| l.len() == 2 * level as usize));
}

#[test]
fn levels_have_the_stated_geometry() {
    for seed in 0..5 {
        let levels = build_construction(&mut BitSource::seeded(seed), 10).unwrap();
        for (l, set) in levels.iter().enumerate() {
            check_level(set, l as u32);
        }
        for w in levels.windows(2) {
            for child in w[1].iter() {
                let (lo, hi) = (child.lo_rational(), child.hi_rational());
                assert!(w[0].iter().any(|p| p.lo_rational() <= lo && hi <= p.hi_rational()));
            }
        }
    }
}

#[test]
fn bit_accounting() {
    for depth in 0..=12u32 {
        let mut bits = BitSource::seeded(u64::from(depth) + 100);
        build_construction(&mut bits, depth).unwrap();
        assert_eq!(bits.cursor(), (1u64 << (depth + 1)) - 2);
    }
}

#[test]
fn e0_is_the_all_zero_stream() {
    for depth in 0..=6 {
        let e0 = self_similar_e0(depth).unwrap();
        // every interval has base-7 digits from {1, 4}
        for iv in e0.iter() {
            let mut lo = iv.lo;
            for _ in 0..depth {
                assert!(matches!(lo % 7, 1 | 4));
                lo /= 7;
            }
        }
    }
}

#[test]
fn g_map_lands_in_the_matching_interval() {
    let mut rng = StdRng::seed_from_u64(7);
    for depth in 1..=4u32 {
        for _ in 0..8 {
            let r: Vec<bool> = (0..2 * depth as usize + 5).map(|_| rng.gen()).collect();
            let stream = arrange_for_g_map(&r, depth).unwrap();
            let levels = build_construction(&mut BitSource::from_bits(stream), depth).unwrap();
            let top = &levels[depth as usize];
            for mask in 0u32..1 << depth {
                let s: Vec<u8> = (0..depth).map(|n| if mask >> n & 1 == 1 { 4 } else { 1 }).collect();
                let digits = g_map_digits(&s, &r, depth as usize).unwrap();
                // the label picks a = [S[n] = 4] at each step
                let idx = top
                    .labels
                    .iter()
                    .position(|label| {
                        label
                            .as_bytes()
                            .chunks(2)
                            .zip(&s)
                            .all(|(ab, &d)| (ab[0] == b'1') == (d == 4))
                    })
                    .expect("a label matches S");
                assert_eq!(digits_interval(&digits).unwrap(), top.interval(idx), "S = {s:?}");
            }
        }
    }
}
