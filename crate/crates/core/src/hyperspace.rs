//! The hyperspace `K(X)` of nonempty compact subsets under the Hausdorff
//! metric, restricted to finite sets.
//!
//! For finite `E` and a scale δ the hyperspace covering number is bracketed by
//! `2^{M(2δ)} − 1 ≤ N(K(E),δ) ≤ 2^{N(E,δ)}`, where `M(2δ)` is the packing
//! number of `E` at `2δ`. Exact values take candidate centers among the
//! nonempty subsets of `E`, and the matching upper bound uses covers of `E`
//! centered in `E` itself. Counts are carried as base-2 logarithms since they
//! grow doubly exponentially.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covering::{covering_number, packing_number, Centers, CoverOptions, LogProfile, Mode};
use crate::dimension::{minkowski_dimension, DimensionEstimate, EstimatorConfig, Kind};
use crate::error::{Error, Result};
use crate::gauge::GaugeFamily;
use crate::logspace::log2_pow2_minus_one;
use crate::metric::MetricSpace;
use crate::setcover::{self, SetSystem};

const MODULE: &str = "hyperspace";

/// A finite, nonempty, duplicate-free point set standing in for a compact set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompactApprox<P> {
    pub points: Vec<P>,
    /// Scale at which this set approximates the intended compact set.
    pub resolution: Option<f64>,
}

impl<P: Clone + PartialEq> CompactApprox<P> {
    /// Validate the points, drop duplicates and, on a line, sort them.
    pub fn new<M: MetricSpace<Point = P>>(space: &M, points: Vec<P>, resolution: Option<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty {
                module: MODULE,
                what: "compact approximation",
            });
        }
        for p in &points {
            space.check_point(p)?;
        }
        let points = if space.is_line() {
            let mut sorted = points;
            sorted.sort_by(|a, b| space.line_order(a, b).unwrap_or(std::cmp::Ordering::Equal));
            sorted.dedup();
            sorted
        } else {
            let mut out: Vec<P> = Vec::with_capacity(points.len());
            for p in points {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
            out
        };
        Ok(CompactApprox { points, resolution })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `max(sup_{x∈E} ρ(x,F), sup_{y∈F} ρ(E,y))` for finite nonempty sets.
pub fn hausdorff_distance<M: MetricSpace>(space: &M, e: &[M::Point], f: &[M::Point]) -> Result<M::Distance> {
    if e.is_empty() || f.is_empty() {
        return Err(Error::Empty {
            module: MODULE,
            what: "Hausdorff operand",
        });
    }
    let directed = |a: &[M::Point], b: &[M::Point]| -> M::Distance {
        let mut worst = space.distance(&a[0], &a[0]);
        for x in a {
            let mut near = space.distance(x, &b[0]);
            for y in &b[1..] {
                let d = space.distance(x, y);
                if d < near {
                    near = d;
                }
            }
            if near > worst {
                worst = near;
            }
        }
        worst
    };
    let (a, b) = (directed(e, f), directed(f, e));
    Ok(if a > b { a } else { b })
}

/// Default cap on the size of the net whose subsets are enumerated.
pub const DEFAULT_NET_CAP: usize = 20;

/// All nonempty subsets of a finite δ-net `F` of `E`: a δ-net of `K(E)`.
/// Subset `i` (1-based bitmask) is returned at index `i − 1`.
pub fn hyperspace_net<P: Clone>(net: &[P], cap: usize) -> Result<Vec<Vec<P>>> {
    if net.is_empty() {
        return Err(Error::Empty {
            module: MODULE,
            what: "net",
        });
    }
    if net.len() > cap.min(30) {
        return Err(Error::CapExceeded {
            module: MODULE,
            what: "hyperspace net size",
            limit: cap.min(30) as u64,
            needed: net.len() as u64,
        });
    }
    Ok((1u32..1 << net.len())
        .map(|mask| {
            net.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect())
}

/// Index and distance of the subset nearest to `target` in Hausdorff distance.
pub fn nearest_subset<M: MetricSpace>(
    space: &M,
    target: &[M::Point],
    subsets: &[Vec<M::Point>],
) -> Result<(usize, M::Distance)> {
    let mut best: Option<(usize, M::Distance)> = None;
    for (i, s) in subsets.iter().enumerate() {
        let d = hausdorff_distance(space, target, s)?;
        if best.is_none_or(|(_, b)| d < b) {
            best = Some((i, d));
        }
    }
    best.ok_or(Error::Empty {
        module: MODULE,
        what: "subset list",
    })
}

/// A possibly astronomically large count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BigCount {
    pub log2: f64,
    /// The count itself when it fits.
    pub exact: Option<u128>,
}

impl BigCount {
    /// `2^m`.
    pub fn pow2(m: u64) -> Self {
        BigCount {
            log2: m as f64,
            exact: (m < 128).then(|| 1u128 << m),
        }
    }

    /// `2^m − 1`.
    pub fn pow2_minus_one(m: u64) -> Self {
        BigCount {
            log2: log2_pow2_minus_one(m as f64),
            exact: (m <= 128).then(|| if m == 128 { u128::MAX } else { (1u128 << m) - 1 }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HyperMode {
    /// Bounds only.
    Bounds,
    /// Bounds plus a greedy cover over subset centers.
    Greedy,
    /// Bounds plus a minimum cover over subset centers.
    Exact,
}

impl std::str::FromStr for HyperMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<HyperMode> {
        match s {
            "bounds" => Ok(HyperMode::Bounds),
            "greedy" => Ok(HyperMode::Greedy),
            "exact" => Ok(HyperMode::Exact),
            other => Err(Error::Parse(format!(
                "unknown hyperspace mode `{other}` (expected bounds|greedy|exact)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperOptions {
    /// Largest number of hyperspace points (nonempty subsets) searched.
    pub subset_cap: u64,
    pub cover: CoverOptions,
}

impl Default for HyperOptions {
    fn default() -> Self {
        HyperOptions {
            subset_cap: 4095,
            cover: CoverOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperspaceCover {
    /// `2^{M(2δ)} − 1`.
    pub lower: BigCount,
    /// `2^{N(E,δ)}` with covers of `E` centered in `E`.
    pub upper: BigCount,
    /// `2^{N(E,δ)}` with unrestricted centers; bounds covers centered anywhere.
    pub upper_anywhere: BigCount,
    /// Minimum cover with centers among nonempty subsets of `E`.
    pub exact: Option<u64>,
    /// Greedy cover with the same candidates.
    pub greedy: Option<u64>,
    pub packing_2delta: u64,
    pub n_cover: u64,
    pub n_cover_anywhere: u64,
    pub mode: HyperMode,
}

/// Bracket, and optionally compute, `N(K(E),δ)`.
pub fn hyperspace_covering_number<M: MetricSpace>(
    space: &M,
    points: &[M::Point],
    delta: M::Distance,
    mode: HyperMode,
    options: &HyperOptions,
) -> Result<HyperspaceCover> {
    let packing_2delta = packing_number(space, points, delta + delta, Mode::Exact, &options.cover)?.count;
    let n_cover = covering_number(
        space,
        points,
        delta,
        Centers::FromNet(points),
        Mode::Exact,
        &options.cover,
    )?
    .count;
    let n_cover_anywhere = covering_number(space, points, delta, Centers::Anywhere, Mode::Exact, &options.cover)?.count;

    let mut report = HyperspaceCover {
        lower: BigCount::pow2_minus_one(packing_2delta),
        upper: BigCount::pow2(n_cover),
        upper_anywhere: BigCount::pow2(n_cover_anywhere),
        exact: None,
        greedy: None,
        packing_2delta,
        n_cover,
        n_cover_anywhere,
        mode,
    };
    if mode == HyperMode::Bounds {
        return Ok(report);
    }

    let n = points.len();
    let subsets = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    if subsets > options.subset_cap {
        return Err(Error::CapExceeded {
            module: MODULE,
            what: "hyperspace points",
            limit: options.subset_cap,
            needed: subsets,
        });
    }
    let system = subset_ball_system(space, points, delta);
    match mode {
        HyperMode::Greedy => {
            report.greedy = Some(setcover::greedy_cover(&system)?.len() as u64);
        }
        HyperMode::Exact => {
            let budget = (system.sets.len() > options.cover.candidate_cap).then_some(options.cover.node_cap);
            let exact = setcover::exact_cover(&system, budget)?.chosen.len() as u64;
            let lower = report.lower.exact.unwrap_or(u128::MAX);
            let upper = report.upper.exact.unwrap_or(u128::MAX);
            if u128::from(exact) < lower || u128::from(exact) > upper {
                return Err(Error::InvalidData(format!(
                    "hyperspace sandwich violated: {lower} <= {exact} <= {upper} fails"
                )));
            }
            report.exact = Some(exact);
        }
        HyperMode::Bounds => unreachable!(),
    }
    Ok(report)
}

/// Set system over the nonempty subsets of `E` (as bitmasks, `mask − 1` is
/// the element index): candidate `T` covers `S` when `ρ_H(S,T) < δ`.
fn subset_ball_system<M: MetricSpace>(space: &M, points: &[M::Point], delta: M::Distance) -> SetSystem {
    let n = points.len();
    // near[i]: points of E within δ of point i
    let near: Vec<u64> = points
        .iter()
        .map(|a| {
            points
                .iter()
                .enumerate()
                .filter(|(_, b)| space.distance(a, b) < delta)
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect();
    let total = (1u64 << n) - 1;
    let reach: Vec<u64> = (1..=total)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).fold(0, |r, i| r | near[i]))
        .collect();
    let sets = (1..=total)
        .into_par_iter()
        .map(|t| {
            let rt = reach[(t - 1) as usize];
            let mut set = fixedbitset::FixedBitSet::with_capacity(total as usize);
            for s in 1..=total {
                let rs = reach[(s - 1) as usize];
                // every point of S near T and every point of T near S
                if s & !rt == 0 && t & !rs == 0 {
                    set.insert((s - 1) as usize);
                }
            }
            set
        })
        .collect();
    SetSystem {
        universe: total as usize,
        sets,
    }
}

// ---------------------------------------------------------------------------
// Profiles and the dimension check

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperspaceEntry {
    pub delta: f64,
    pub log2_delta: f64,
    /// `N(E,δ)` of the approximation at this scale.
    pub n_cover: u64,
    /// `M(2δ)`.
    pub packing_2delta: u64,
    pub log2_lower: f64,
    pub log2_upper: f64,
    pub exact: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperspaceProfile {
    pub entries: Vec<HyperspaceEntry>,
}

impl HyperspaceProfile {
    /// `log2 N(E,δ)` against `δ`.
    pub fn set_profile(&self) -> Result<LogProfile> {
        LogProfile::new(
            self.entries.iter().map(|e| e.log2_delta).collect(),
            self.entries.iter().map(|e| (e.n_cover as f64).log2()).collect(),
        )
    }

    /// `log2` of the lower hyperspace bound against `δ`.
    pub fn lower_profile(&self) -> Result<LogProfile> {
        LogProfile::new(
            self.entries.iter().map(|e| e.log2_delta).collect(),
            self.entries.iter().map(|e| e.log2_lower).collect(),
        )
    }

    /// `log2` of the upper hyperspace bound against `δ`.
    pub fn upper_profile(&self) -> Result<LogProfile> {
        LogProfile::new(
            self.entries.iter().map(|e| e.log2_delta).collect(),
            self.entries.iter().map(|e| e.log2_upper).collect(),
        )
    }

    /// CSV with columns `delta,n_cover,packing_2delta,log2_lower,log2_upper,exact`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["delta", "n_cover", "packing_2delta", "log2_lower", "log2_upper", "exact"])?;
        for e in &self.entries {
            w.write_record([
                format!("{:e}", e.delta),
                e.n_cover.to_string(),
                e.packing_2delta.to_string(),
                e.log2_lower.to_string(),
                e.log2_upper.to_string(),
                e.exact.map(|x| x.to_string()).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Hyperspace bounds along a schedule. `generator(δ)` returns a finite
/// approximation of `E` fine enough for scale δ. Exact covers of `E` use
/// unrestricted centers here, as the dimension statement does.
pub fn hyperspace_profile<M, G>(
    space: &M,
    generator: G,
    schedule: &[M::Distance],
    options: &HyperOptions,
) -> Result<HyperspaceProfile>
where
    M: MetricSpace,
    G: Fn(M::Distance) -> Result<Vec<M::Point>> + Sync,
{
    if schedule.is_empty() {
        return Err(Error::pre(MODULE, "schedule must be nonempty"));
    }
    if schedule.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::pre(MODULE, "schedule must be strictly decreasing"));
    }
    let entries = schedule
        .par_iter()
        .map(|&delta| {
            let f = space.to_f64(delta);
            let at = |e: Error| Error::AtScale {
                delta: f,
                source: Box::new(e),
            };
            let points = generator(delta).map_err(at)?;
            let n_cover = covering_number(space, &points, delta, Centers::Anywhere, Mode::Exact, &options.cover)
                .map_err(at)?
                .count;
            let packing_2delta = packing_number(space, &points, delta + delta, Mode::Exact, &options.cover)
                .map_err(at)?
                .count;
            Ok(HyperspaceEntry {
                delta: f,
                log2_delta: f.log2(),
                n_cover,
                packing_2delta,
                log2_lower: log2_pow2_minus_one(packing_2delta as f64),
                log2_upper: n_cover as f64,
                exact: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HyperspaceProfile { entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub estimator: EstimatorConfig,
    /// Largest accepted gap between the set and hyperspace estimates.
    pub tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            estimator: EstimatorConfig::default(),
            tolerance: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub kind: Kind,
    /// φ-gauged dimension of `E`.
    pub set_estimate: DimensionEstimate,
    /// jump(φ)-gauged dimension of `K(E)` from the lower bound profile.
    pub hyper_lower_estimate: DimensionEstimate,
    /// jump(φ)-gauged dimension of `K(E)` from the upper bound profile.
    pub hyper_upper_estimate: DimensionEstimate,
    /// Largest gap between the set estimate and either hyperspace estimate.
    pub difference: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub profile: HyperspaceProfile,
}

/// Compare the φ-gauged Minkowski dimension of `E` with the jump(φ)-gauged
/// Minkowski dimension of `K(E)`, both estimated along `schedule`.
pub fn verify_hyperspace_minkowski<M, G>(
    space: &M,
    generator: G,
    family: &GaugeFamily,
    schedule: &[M::Distance],
    kind: Kind,
    config: &VerifyConfig,
) -> Result<VerificationReport>
where
    M: MetricSpace,
    G: Fn(M::Distance) -> Result<Vec<M::Point>> + Sync,
{
    let profile = hyperspace_profile(space, generator, schedule, &HyperOptions::default())?;
    let jumped = family.jump();
    let set_estimate = minkowski_dimension(&profile.set_profile()?, family, kind, &config.estimator)?;
    let hyper_lower_estimate = minkowski_dimension(&profile.lower_profile()?, &jumped, kind, &config.estimator)?;
    let hyper_upper_estimate = minkowski_dimension(&profile.upper_profile()?, &jumped, kind, &config.estimator)?;
    let difference = (hyper_lower_estimate.value - set_estimate.value)
        .abs()
        .max((hyper_upper_estimate.value - set_estimate.value).abs());
    Ok(VerificationReport {
        family: family.descriptor(),
        kind,
        set_estimate,
        hyper_lower_estimate,
        hyper_upper_estimate,
        difference,
        tolerance: config.tolerance,
        passed: difference <= config.tolerance,
        profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::RealLine;

    #[test]
    fn hausdorff_examples() {
        let l = RealLine;
        assert_eq!(hausdorff_distance(&l, &[0.0], &[1.0]).unwrap(), 1.0);
        assert_eq!(hausdorff_distance(&l, &[0.0, 1.0], &[0.0]).unwrap(), 1.0);
        assert_eq!(hausdorff_distance(&l, &[0.0, 2.0], &[1.0]).unwrap(), 1.0);
        assert_eq!(hausdorff_distance(&l, &[0.3, 0.7], &[0.7, 0.3]).unwrap(), 0.0);
        assert!(hausdorff_distance(&l, &[], &[1.0]).is_err());
    }

    #[test]
    fn net_of_subsets() {
        let subsets = hyperspace_net(&[0.0, 1.0], DEFAULT_NET_CAP).unwrap();
        assert_eq!(subsets, vec![vec![0.0], vec![1.0], vec![0.0, 1.0]]);
        let ten: Vec<f64> = (0..10).map(f64::from).collect();
        assert_eq!(hyperspace_net(&ten, DEFAULT_NET_CAP).unwrap().len(), 1023);
        assert!(hyperspace_net(&ten, 5).is_err());
        let subsets = hyperspace_net(&[0.0, 0.5, 1.0], DEFAULT_NET_CAP).unwrap();
        let (i, d) = nearest_subset(&RealLine, &[0.1, 0.9], &subsets).unwrap();
        assert_eq!(subsets[i], vec![0.0, 1.0]);
        assert!((d - 0.1).abs() < 1e-15);
    }

    #[test]
    fn two_point_sandwich() {
        let h = hyperspace_covering_number(&RealLine, &[0.0, 1.0], 0.5, HyperMode::Exact, &HyperOptions::default())
            .unwrap();
        assert_eq!(h.lower.exact, Some(3));
        assert_eq!(h.upper.exact, Some(4));
        assert_eq!(h.exact, Some(3));
    }

    #[test]
    fn three_point_sandwich_uses_intrinsic_centers() {
        let h = hyperspace_covering_number(
            &RealLine,
            &[0.0, 0.5, 1.0],
            0.3,
            HyperMode::Exact,
            &HyperOptions::default(),
        )
        .unwrap();
        assert_eq!(h.packing_2delta, 2);
        assert_eq!(h.n_cover_anywhere, 2);
        assert_eq!(h.n_cover, 3);
        assert_eq!(h.lower.exact, Some(3));
        assert_eq!(h.upper_anywhere.exact, Some(4));
        assert_eq!(h.upper.exact, Some(8));
        // all seven subsets are pairwise at least 0.5 apart
        assert_eq!(h.exact, Some(7));
    }

    #[test]
    fn singleton() {
        let h = hyperspace_covering_number(&RealLine, &[0.25], 0.1, HyperMode::Exact, &HyperOptions::default())
            .unwrap();
        assert_eq!((h.lower.exact, h.upper.exact, h.exact), (Some(1), Some(2), Some(1)));
    }

    #[test]
    fn cap_and_empty() {
        let pts: Vec<f64> = (0..13).map(f64::from).collect();
        let r = hyperspace_covering_number(&RealLine, &pts, 0.5, HyperMode::Exact, &HyperOptions::default());
        assert!(matches!(r, Err(Error::CapExceeded { .. })));
        let r = hyperspace_covering_number(&RealLine, &pts, 0.5, HyperMode::Bounds, &HyperOptions::default());
        assert_eq!(r.unwrap().lower.exact, Some((1 << 13) - 1));
        assert!(hyperspace_covering_number(&RealLine, &[], 0.5, HyperMode::Bounds, &HyperOptions::default()).is_err());
    }

    #[test]
    fn compact_approx_dedups() {
        let c = CompactApprox::new(&RealLine, vec![0.5, 0.1, 0.5], Some(0.01)).unwrap();
        assert_eq!(c.points, vec![0.1, 0.5]);
        assert!(CompactApprox::new(&RealLine, vec![], None).is_err());
    }
}
