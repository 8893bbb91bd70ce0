//! Covering and packing numbers of a random planar cloud and of points on a
//! line, in greedy and exact mode.

use gaugedim::covering::{covering_number, packing_number, Centers, CoverOptions, Mode};
use gaugedim::metric::{Euclidean, RealLine};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

fn main() -> gaugedim::Result<()> {
    let mut rng = Xoshiro256StarStar::seed_from_u64(7);
    let mut unit = || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let cloud: Vec<Vec<f64>> = (0..40).map(|_| vec![unit(), unit()]).collect();
    let plane = Euclidean::new(2);
    let opts = CoverOptions::default();

    println!("40 random points in the unit square");
    println!("{:>6} {:>7} {:>7} {:>10} {:>8}", "delta", "greedy", "exact", "restricted", "packing");
    for delta in [0.5, 0.3, 0.2, 0.15] {
        let greedy = covering_number(&plane, &cloud, delta, Centers::Anywhere, Mode::Greedy, &opts)?;
        let exact = covering_number(&plane, &cloud, delta, Centers::Anywhere, Mode::Exact, &opts)?;
        let pack = packing_number(&plane, &cloud, delta, Mode::Exact, &opts)?;
        println!(
            "{delta:>6} {:>7} {:>7} {:>10} {:>8}",
            greedy.count, exact.count, exact.restricted, pack.count
        );
    }

    let line: Vec<f64> = (0..=20).map(|i| f64::from(i) / 20.0).collect();
    println!("21 equally spaced points in [0,1]");
    for delta in [0.26, 0.1, 0.05] {
        let cover = covering_number(&RealLine, &line, delta, Centers::Anywhere, Mode::Exact, &opts)?;
        println!("  N(E, {delta}) = {} by {:?}", cover.count, cover.method);
    }
    Ok(())
}
