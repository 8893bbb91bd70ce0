//! Build the randomized seven-adic Cantor set from a seeded bit stream and
//! check its covering numbers at δ = 7^-l.

use gaugedim::constructions::{build_construction, endpoints_and_midpoints, pow7, BitSource};
use gaugedim::covering::{covering_profile, ProfileOptions};
use gaugedim::metric::{ExactLine, Rational};

fn main() -> gaugedim::Result<()> {
    let mut bits = BitSource::seeded(42);
    let levels = build_construction(&mut bits, 5)?;
    for set in levels.iter().take(3) {
        let ivs: Vec<String> = set
            .iter()
            .map(|i| format!("[{}/{d}, {}/{d}]", i.lo, i.hi, d = pow7(i.level)))
            .collect();
        println!("level {}: {} labels {:?}", set.level, ivs.join(" "), set.labels);
    }
    println!("bits consumed through level 5: {}", bits.cursor());

    let points = endpoints_and_midpoints(&levels[5])?;
    let schedule: Vec<Rational> = (1..=5).map(|l| Rational::new(1, i128::from(pow7(l)))).collect();
    let profile = covering_profile(&ExactLine, &points, &schedule, &ProfileOptions::default())?;
    let counts: Vec<u64> = profile.entries.iter().map(|e| e.n_cover).collect();
    println!("N(E, 7^-l) for l = 1..5: {counts:?}");
    Ok(())
}
