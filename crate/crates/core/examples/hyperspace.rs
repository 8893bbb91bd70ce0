//! Bounds on covering numbers of the hyperspace K(E) and the comparison of
//! dim^θ(E) with dim^{jump θ}(K(E)) on [0,1].

use gaugedim::constructions::unit_interval_grid;
use gaugedim::dimension::Kind;
use gaugedim::gauge::canonical;
use gaugedim::hyperspace::{hyperspace_covering_number, verify_hyperspace_minkowski, HyperMode, HyperOptions, VerifyConfig};
use gaugedim::metric::RealLine;

fn main() -> gaugedim::Result<()> {
    let e = [0.0, 0.5, 1.0];
    for delta in [0.3, 0.6] {
        let h = hyperspace_covering_number(&RealLine, &e, delta, HyperMode::Exact, &HyperOptions::default())?;
        println!(
            "E = {e:?}, δ = {delta}: {} <= N(K(E), δ) = {} <= {}",
            h.lower.exact.unwrap_or(0),
            h.exact.unwrap_or(0),
            h.upper.exact.unwrap_or(0)
        );
    }

    let schedule: Vec<f64> = (1..=20).map(|k| (-f64::from(k)).exp2()).collect();
    let report =
        verify_hyperspace_minkowski(&RealLine, unit_interval_grid, &canonical(), &schedule, Kind::Upper, &VerifyConfig::default())?;
    println!("dim of [0,1]:            {:.4}", report.set_estimate.value);
    println!("dim of K([0,1]), lower:  {:.4}", report.hyper_lower_estimate.value);
    println!("dim of K([0,1]), upper:  {:.4}", report.hyper_upper_estimate.value);
    println!("difference {:.4} (tolerance {}): {}", report.difference, report.tolerance, report.passed);
    Ok(())
}
