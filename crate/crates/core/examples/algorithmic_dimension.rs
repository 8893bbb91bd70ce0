//! LZ78 complexity profiles of points of [0,1] and their gauged algorithmic
//! dimensions, plus the jump characterization on a synthetic profile.

use gaugedim::algodim::{
    complexity_profile_of_point, dyadic_depth_schedule, gauged_dim_from_profile, jump_characterization,
    lz_complexity, ExpansionPoint, Synthetic,
};
use gaugedim::dimension::{EstimatorConfig, Kind};
use gaugedim::gauge::canonical;

fn main() -> gaugedim::Result<()> {
    let zeros = vec![false; 2048];
    let random = ExpansionPoint::Seeded { seed: 1 }.prefix(2048);
    println!("LZ length of 0^2048: {} bits", lz_complexity(&zeros));
    println!("LZ length of 2048 random bits: {} bits", lz_complexity(&random));

    let schedule = dyadic_depth_schedule(20);
    let cfg = EstimatorConfig::default();
    for point in [ExpansionPoint::ratio(1, 3)?, ExpansionPoint::ratio(5, 7)?, ExpansionPoint::Seeded { seed: 9 }] {
        let profile = complexity_profile_of_point(&point, &schedule)?;
        let lower = gauged_dim_from_profile(&profile, &canonical(), Kind::Lower, &cfg)?;
        let upper = gauged_dim_from_profile(&profile, &canonical(), Kind::Upper, &cfg)?;
        println!("{:>10}: lower {:.4}, upper {:.4}", point.descriptor(), lower.value, upper.value);
    }

    let rs: Vec<f64> = (1..=40).map(f64::from).collect();
    let profile = Synthetic::Exp(0.5).profile(&rs)?;
    let j = jump_characterization(&profile, &canonical(), Kind::Upper, &cfg)?;
    println!(
        "k = 2^(r/2): direct {:.4}, through jump(θ) {:.4}",
        j.s_direct.value, j.s_jump.value
    );
    Ok(())
}
