//! The countable set {1/n : n <= 10^4}: Hausdorff dimension 0 but box-counting
//! dimension 1/2, seen in its exact covering numbers.

use gaugedim::constructions::one_over_n_points;
use gaugedim::covering::{covering_profile, ProfileOptions};
use gaugedim::dimension::{loglog_slope, Window};
use gaugedim::metric::{rational_to_f64, RealLine};

fn main() -> gaugedim::Result<()> {
    let points: Vec<f64> = one_over_n_points(10_000)?.iter().map(rational_to_f64).collect();
    let schedule: Vec<f64> = (0..=8).map(|k| 10f64.powf(-2.0 - f64::from(k) / 4.0)).collect();
    let profile = covering_profile(&RealLine, &points, &schedule, &ProfileOptions::default())?;
    for e in &profile.entries {
        println!("N(E, {:.2e}) = {:>4}   N·δ^1/2 = {:.3}", e.delta, e.n_cover, e.n_cover as f64 * e.delta.sqrt());
    }
    let slope = loglog_slope(&profile.log_profile(), Window::All)?;
    println!("log-log slope {:.4}", slope.value);
    Ok(())
}
