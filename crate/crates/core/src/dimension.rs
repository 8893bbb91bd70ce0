//! Gauged Minkowski dimension estimates from covering profiles, and gauged
//! cover and packing sums.
//!
//! The lower and upper dimensions are `inf{s : lim N(E,δ)·φ_s(δ) = 0}` with a
//! liminf or limsup. On a finite schedule the limit is replaced by a trend
//! test on `v_i = log2 N(δ_i) + log2 φ_s(δ_i)` over the finest scales, and the
//! boundary in `s` is located by bisection.

use serde::{Deserialize, Serialize};

use crate::covering::{packing_number, CoverOptions, LogProfile, Mode};
use crate::error::{Error, Result};
use crate::gauge::{GaugeFamily, Scale};
use crate::logspace::log2_sum;
use crate::metric::MetricSpace;

const MODULE: &str = "dimension";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Lower,
    Upper,
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "lower" => Ok(Kind::Lower),
            "upper" => Ok(Kind::Upper),
            other => Err(Error::Parse(format!("unknown kind `{other}` (expected lower|upper)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bisection,
    Loglog,
    /// Bisection over a complexity profile.
    #[serde(rename = "gauged-algo")]
    GaugedAlgo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EstimatorConfig {
    pub s_min: f64,
    pub s_max: f64,
    pub tolerance: f64,
    pub max_iterations: u32,
    /// Number of finest scales examined; `None` means the finest half, rounded up.
    pub window: Option<usize>,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            s_min: 1e-3,
            s_max: 64.0,
            tolerance: 1e-3,
            max_iterations: 60,
            window: None,
        }
    }
}

/// The trend test applied at one candidate `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendRecord {
    pub s: f64,
    /// `v_i` over the window, coarse to fine.
    pub values: Vec<f64>,
    pub first_max: f64,
    pub second_max: f64,
    pub first_min: f64,
    pub second_min: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub value: f64,
    pub bracket: (f64, f64),
    pub kind: Kind,
    pub method: Method,
    pub family: String,
    /// `(log2 δ_max, log2 δ_min)` of the scales actually used.
    pub log2_window: (f64, f64),
    pub diagnostics: Vec<TrendRecord>,
}

impl DimensionEstimate {
    pub fn window_deltas(&self) -> (f64, f64) {
        (self.log2_window.0.exp2(), self.log2_window.1.exp2())
    }
}

fn window_len(n: usize, config: &EstimatorConfig) -> Result<usize> {
    let w = config.window.unwrap_or(n.div_ceil(2));
    if w < 2 || w > n {
        return Err(Error::pre(
            MODULE,
            format!("window of {w} scales is invalid for a profile of {n}"),
        ));
    }
    Ok(w)
}

fn max(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn min(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Classify one sequence `v_i` (coarse to fine). The window is split into an
/// earlier and a later half.
///
/// Upper: the later half stays below 0 and its maximum is smaller than the
/// earlier maximum (or is `-inf`, a saturated gauge). Lower: upper acceptance,
/// or some value below 0 with the later minimum below the earlier minimum.
pub fn classify_trend(s: f64, values: Vec<f64>, kind: Kind) -> TrendRecord {
    let split = values.len() / 2;
    let (first, second) = values.split_at(split);
    let (first_max, second_max) = (max(first), max(second));
    let (first_min, second_min) = (min(first), min(second));
    let upper = second_max < 0.0 && (second_max < first_max || second_max == f64::NEG_INFINITY);
    let accepted = match kind {
        Kind::Upper => upper,
        Kind::Lower => upper || (min(&values) < 0.0 && second_min < first_min),
    };
    TrendRecord {
        s,
        values,
        first_max,
        second_max,
        first_min,
        second_min,
        accepted,
    }
}

/// Trend record of `profile` at one candidate `s`.
pub fn trend_at(profile: &LogProfile, family: &GaugeFamily, kind: Kind, s: f64, window: usize) -> Result<TrendRecord> {
    let start = profile.len() - window;
    let values = (start..profile.len())
        .map(|i| {
            let g = family.eval(s, Scale::from_log2(profile.log2_delta[i]))?;
            Ok(profile.log2_count[i] + g.0)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(classify_trend(s, values, kind))
}

/// Gauged lower or upper Minkowski dimension of a profile by bisection on `s`.
pub fn minkowski_dimension(
    profile: &LogProfile,
    family: &GaugeFamily,
    kind: Kind,
    config: &EstimatorConfig,
) -> Result<DimensionEstimate> {
    let n = profile.len();
    if n < 4 {
        return Err(Error::pre(MODULE, format!("profile has {n} scales, need at least 4")));
    }
    if !(config.s_min > 0.0 && config.s_min < config.s_max && config.tolerance > 0.0) {
        return Err(Error::pre(MODULE, "need 0 < s_min < s_max and tolerance > 0"));
    }
    let window = window_len(n, config)?;
    let log2_window = (profile.log2_delta[n - window], profile.log2_delta[n - 1]);
    let mut diagnostics = Vec::new();
    let mut test = |s: f64| -> Result<bool> {
        let r = trend_at(profile, family, kind, s, window)?;
        let ok = r.accepted;
        diagnostics.push(r);
        Ok(ok)
    };

    if !test(config.s_max)? {
        let last = &diagnostics[0];
        return Err(Error::NoBracket {
            s_lo: config.s_min,
            s_hi: config.s_max,
            detail: format!(
                "rejected at s_hi: later max {:.6e}, earlier max {:.6e}",
                last.second_max, last.first_max
            ),
        });
    }
    let (mut lo, mut hi) = if test(config.s_min)? {
        // accepted everywhere tested; the infimum lies in [0, s_min]
        (0.0, config.s_min)
    } else {
        (config.s_min, config.s_max)
    };
    for _ in 0..config.max_iterations {
        if hi - lo <= config.tolerance {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if test(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(DimensionEstimate {
        value: 0.5 * (lo + hi),
        bracket: (lo, hi),
        kind,
        method: Method::Bisection,
        family: family.descriptor(),
        log2_window,
        diagnostics,
    })
}

/// Scales entering a regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Window {
    All,
    /// The finest `n` scales.
    Finest(usize),
    /// Index range `start..end` into the profile.
    Range(usize, usize),
}

/// Least-squares slope of `log N(δ)` against `log(1/δ)`: the classical
/// box-counting dimension.
pub fn loglog_slope(profile: &LogProfile, window: Window) -> Result<DimensionEstimate> {
    let n = profile.len();
    let (a, b) = match window {
        Window::All => (0, n),
        Window::Finest(k) => (n.saturating_sub(k), n),
        Window::Range(a, b) => (a, b.min(n)),
    };
    if b < a + 3 {
        return Err(Error::pre(MODULE, "regression needs at least 3 scales in the window"));
    }
    let xs: Vec<f64> = profile.log2_delta[a..b].iter().map(|l| -l).collect();
    let ys = &profile.log2_count[a..b];
    if ys.iter().any(|&y| !(y >= 0.0) || !y.is_finite()) {
        return Err(Error::pre(MODULE, "counts must be finite and at least 1"));
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::pre(MODULE, "zero variance in log(1/delta)"));
    }
    let slope = sxy / sxx;
    Ok(DimensionEstimate {
        value: slope,
        bracket: (slope, slope),
        kind: Kind::Upper,
        method: Method::Loglog,
        family: "theta".into(),
        log2_window: (profile.log2_delta[a], profile.log2_delta[b - 1]),
        diagnostics: Vec::new(),
    })
}

/// A gauged sum kept in log space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaugedSum {
    pub log2: f64,
    /// Set for the empty cover, whose sum is 0.
    pub empty: bool,
    /// Mode of the count behind a packing sum.
    pub mode: Option<Mode>,
    pub count: Option<u64>,
}

impl GaugedSum {
    pub fn value(&self) -> f64 {
        self.log2.exp2()
    }
}

/// `Σ φ_s(d_i)` over the diameters of an explicit cover.
pub fn cover_sum(diameters: &[f64], family: &GaugeFamily, s: f64) -> Result<GaugedSum> {
    let logs: Vec<f64> = diameters
        .iter()
        .map(|&d| {
            if !(d > 0.0) || !d.is_finite() {
                return Err(Error::pre(MODULE, format!("diameters must be positive, got {d}")));
            }
            Ok(d.log2())
        })
        .collect::<Result<_>>()?;
    cover_sum_log2(&logs, family, s)
}

/// [`cover_sum`] with diameters given as base-2 logarithms.
pub fn cover_sum_log2(log2_diameters: &[f64], family: &GaugeFamily, s: f64) -> Result<GaugedSum> {
    let terms = log2_diameters
        .iter()
        .map(|&l| family.eval(s, Scale::from_log2(l)).map(|g| g.0))
        .collect::<Result<Vec<f64>>>()?;
    Ok(GaugedSum {
        log2: log2_sum(&terms),
        empty: terms.is_empty(),
        mode: None,
        count: None,
    })
}

/// `N_p(E,δ)·φ_s(δ)`, a lower bound for the gauged packing premeasure.
pub fn packing_sum<M: MetricSpace>(
    space: &M,
    points: &[M::Point],
    delta: M::Distance,
    family: &GaugeFamily,
    s: f64,
    mode: Mode,
    options: &CoverOptions,
) -> Result<GaugedSum> {
    let packing = packing_number(space, points, delta, mode, options)?;
    let g = family.eval(s, Scale::new(space.to_f64(delta))?)?;
    Ok(GaugedSum {
        log2: (packing.count as f64).log2() + g.0,
        empty: false,
        mode: Some(mode),
        count: Some(packing.count),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::canonical;
    use crate::metric::RealLine;

    fn dyadic(count: impl Fn(f64) -> f64, levels: std::ops::RangeInclusive<i32>) -> LogProfile {
        let l: Vec<f64> = levels.map(|k| -f64::from(k)).collect();
        LogProfile::from_fn(&l, count).unwrap()
    }

    #[test]
    fn ceil_inverse_profile_has_dimension_one() {
        let p = dyadic(|l| (-l).exp2().ceil().log2(), 1..=16);
        let est = minkowski_dimension(&p, &canonical(), Kind::Upper, &EstimatorConfig::default()).unwrap();
        assert!((est.value - 1.0).abs() < 0.02, "{}", est.value);
        assert!(est.bracket.1 - est.bracket.0 <= 1e-3);
        assert!(est.bracket.0 <= est.value && est.value <= est.bracket.1);
    }

    #[test]
    fn seven_adic_profile() {
        let l7 = 7f64.log2();
        let levels: Vec<f64> = (1..=6).map(|k| -f64::from(k) * l7).collect();
        let p = LogProfile::from_fn(&levels, |l| -l / l7).unwrap();
        let expect = 2f64.ln() / 7f64.ln();
        let est = minkowski_dimension(&p, &canonical(), Kind::Upper, &EstimatorConfig::default()).unwrap();
        assert!((est.value - expect).abs() < 0.01, "{}", est.value);
        let slope = loglog_slope(&p, Window::All).unwrap();
        assert!((slope.value - expect).abs() < 1e-12);
    }

    #[test]
    fn constant_profile_lower_is_zero() {
        let p = dyadic(|_| 0.0, 1..=10);
        let est = minkowski_dimension(&p, &canonical(), Kind::Lower, &EstimatorConfig::default()).unwrap();
        assert!(est.value <= 1e-3);
        assert_eq!(est.bracket.0, 0.0);
    }

    #[test]
    fn no_bracket_when_dimension_diverges() {
        // log2 N = 2^k grows faster than any power of 1/δ
        let p = dyadic(|l| (-l).exp2(), 1..=12);
        let r = minkowski_dimension(&p, &canonical(), Kind::Upper, &EstimatorConfig::default());
        assert!(matches!(r, Err(Error::NoBracket { .. })));
        // but the jump family brackets it
        let est = minkowski_dimension(&p, &canonical().jump(), Kind::Upper, &EstimatorConfig::default()).unwrap();
        assert!((est.value - 1.0).abs() < 0.02, "{}", est.value);
    }

    #[test]
    fn short_profiles_rejected() {
        let p = dyadic(|l| -l, 1..=3);
        assert!(minkowski_dimension(&p, &canonical(), Kind::Upper, &EstimatorConfig::default()).is_err());
        let p = dyadic(|l| -2.0 * l, 1..=1);
        assert!(loglog_slope(&p, Window::All).is_err());
    }

    #[test]
    fn loglog_exact_fit() {
        let p = dyadic(|l| -2.0 * l, 1..=10);
        assert_eq!(loglog_slope(&p, Window::All).unwrap().value, 2.0);
        assert_eq!(loglog_slope(&p, Window::Finest(4)).unwrap().value, 2.0);
    }

    #[test]
    fn cover_sums() {
        let s = 2f64.ln() / 7f64.ln();
        let sum = cover_sum(&[7f64.powi(-3); 8], &canonical(), s).unwrap();
        assert!((sum.value() - 1.0).abs() < 1e-12);
        assert_eq!(cover_sum(&[1.0], &canonical(), 2.0).unwrap().value(), 1.0);
        let empty = cover_sum(&[], &canonical(), 1.0).unwrap();
        assert!(empty.empty && empty.value() == 0.0);
        assert!(cover_sum(&[0.0], &canonical(), 1.0).is_err());
        let a = cover_sum(&[0.1, 0.2], &canonical(), 1.0).unwrap().log2;
        let b = cover_sum(&[0.1, 0.2], &canonical(), 3.0).unwrap().log2;
        assert!(b < a);
    }

    #[test]
    fn packing_sum_two_points() {
        let o = CoverOptions::default();
        let p = packing_sum(&RealLine, &[0.0, 1.0], 0.5, &canonical(), 1.0, Mode::Exact, &o).unwrap();
        assert_eq!(p.value(), 1.0);
        assert_eq!(p.count, Some(2));
    }
}
