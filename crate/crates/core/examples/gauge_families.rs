//! Evaluate θ, a power family and their jumps in log space, then run the
//! sampled axiom checks and a precision-family cross sum.

use gaugedim::gauge::{
    canonical, validate_gauge_family, validate_precision_family, GaugeFamily, PrecisionFamily, Scale,
    ValidationConfig,
};

fn main() -> gaugedim::Result<()> {
    let families = [canonical(), GaugeFamily::parse("pow(2)")?, GaugeFamily::parse("jump(theta)")?];
    println!("{:<12} {:>6} {:>14} {:>14}", "family", "s", "log2 φ(2^-10)", "log2 φ(2^-40)");
    for f in &families {
        for s in [0.5, 1.0] {
            let a = f.eval(s, Scale::from_log2(-10.0))?;
            let b = f.eval(s, Scale::from_log2(-40.0))?;
            println!("{:<12} {s:>6} {:>14.4e} {:>14.4e}", f.descriptor(), a.0, b.0);
        }
    }

    let cfg = ValidationConfig::default();
    let schedule: Vec<f64> = (1..=40).map(|k| (-f64::from(k)).exp2()).collect();
    for f in &families {
        let report = validate_gauge_family(f, &[0.5, 1.0, 2.0], &schedule, &cfg)?;
        println!("{}: axioms {}", f.descriptor(), if report.passed() { "hold" } else { "fail" });
        for c in report.failures() {
            println!("  {} failed: {:?}", c.name, c.witness);
        }
    }

    for alpha in [PrecisionFamily::Canonical, PrecisionFamily::Harmonic] {
        let report = validate_precision_family(&alpha, &canonical(), &[(1.0, 2.0)], 40, &cfg)?;
        let cs = &report.cross_sums[0];
        println!(
            "{}: cross sum (1,2) to r=40 is {:.10}, last term {:.2e}, {}",
            alpha.descriptor(),
            cs.partial_sum,
            cs.last_increment,
            if report.passed() { "precision family" } else { "flagged" }
        );
    }
    Ok(())
}
