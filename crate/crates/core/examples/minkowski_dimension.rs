//! The θ-gauged upper and lower Minkowski dimension of the self-similar set
//! E0 (base-7 digits 1 and 4), from exact covering numbers at δ = 7^-l.

use gaugedim::constructions::{endpoints_and_midpoints, pow7, self_similar_e0};
use gaugedim::covering::{covering_profile, ProfileOptions};
use gaugedim::dimension::{loglog_slope, minkowski_dimension, EstimatorConfig, Kind, Window};
use gaugedim::gauge::canonical;
use gaugedim::metric::{ExactLine, Rational};

fn main() -> gaugedim::Result<()> {
    let depth = 6;
    let points = endpoints_and_midpoints(&self_similar_e0(depth)?)?;
    let schedule: Vec<Rational> = (1..=depth).map(|l| Rational::new(1, i128::from(pow7(l)))).collect();
    let profile = covering_profile(&ExactLine, &points, &schedule, &ProfileOptions::default())?;
    for e in &profile.entries {
        println!("N(E0, {:.3e}) = {}", e.delta, e.n_cover);
    }
    let logp = profile.log_profile();
    let cfg = EstimatorConfig::default();
    let upper = minkowski_dimension(&logp, &canonical(), Kind::Upper, &cfg)?;
    let lower = minkowski_dimension(&logp, &canonical(), Kind::Lower, &cfg)?;
    let slope = loglog_slope(&logp, Window::All)?;
    println!("upper {:.4} bracket {:?}", upper.value, upper.bracket);
    println!("lower {:.4} bracket {:?}", lower.value, lower.bracket);
    println!("log-log slope {:.5}, log 2 / log 7 = {:.5}", slope.value, 2f64.ln() / 7f64.ln());
    Ok(())
}
