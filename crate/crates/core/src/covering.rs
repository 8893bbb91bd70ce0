//! Covering numbers `N(E,δ)`, dense-centered covering numbers `N̂(E,δ)` and
//! packing numbers `N_p(E,δ)` of finite point sets.
//!
//! Balls are open: a center `c` covers `x` when `ρ(c,x) < δ`. A packing is a
//! set of points with pairwise distances `≥ δ`.
//!
//! On a line, exact covers with unrestricted centers come from a left-to-right
//! sweep and are optimal over the continuum. Elsewhere, `Centers::Anywhere`
//! means the points of `E` plus pairwise midpoints, so exact values are
//! optimal over that restricted candidate set and are labeled as such.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::io::Write;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::setcover::{self, Graph, SetSystem};

const MODULE: &str = "covering";

#[derive(Debug, Clone, Copy)]
pub enum Centers<'a, P> {
    /// Centers anywhere in the space (see module docs for the restriction).
    Anywhere,
    /// Centers drawn from a finite piece of a countable dense set.
    FromNet(&'a [P]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Greedy,
    Exact,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Greedy => "greedy",
            Mode::Exact => "exact",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "greedy" => Ok(Mode::Greedy),
            "exact" => Ok(Mode::Exact),
            other => Err(Error::Parse(format!("unknown mode `{other}` (expected greedy|exact)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Left-to-right sweep along a line; optimal.
    LineSweep,
    /// Branch and bound over a finite candidate set; optimal for that set.
    BranchAndBound,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverOptions {
    /// Exact searches over at most this many candidates run without a node budget.
    pub candidate_cap: usize,
    /// Node budget for larger exact searches.
    pub node_cap: u64,
    /// Pairwise midpoints are added as candidates only when `|E|` is at most this.
    pub midpoint_limit: usize,
}

/// Environment variable overriding the default branch-and-bound node budget.
pub const NODE_CAP_ENV: &str = "GAUGEDIM_MAX_NODES";

impl Default for CoverOptions {
    fn default() -> Self {
        let node_cap = std::env::var(NODE_CAP_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(1 << 20);
        CoverOptions {
            candidate_cap: 24,
            node_cap,
            midpoint_limit: 256,
        }
    }
}

impl CoverOptions {
    fn budget(&self, candidates: usize) -> Option<u64> {
        (candidates > self.candidate_cap).then_some(self.node_cap)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cover<P> {
    pub count: u64,
    pub centers: Vec<P>,
    pub mode: Mode,
    pub method: Method,
    /// True when optimality holds only over a restricted candidate set.
    pub restricted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Packing<P> {
    pub count: u64,
    pub points: Vec<P>,
    pub mode: Mode,
    pub method: Method,
}

fn check_inputs<M: MetricSpace>(space: &M, points: &[M::Point], delta: M::Distance) -> Result<()> {
    let first = points.first().ok_or(Error::Empty {
        module: MODULE,
        what: "point set",
    })?;
    let zero = space.distance(first, first);
    if !(delta > zero) {
        return Err(Error::pre(MODULE, format!("delta must be positive, got {delta:?}")));
    }
    for p in points {
        space.check_point(p)?;
    }
    Ok(())
}

fn sorted_along_line<M: MetricSpace>(space: &M, points: &[M::Point]) -> Vec<M::Point> {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| space.line_order(a, b).unwrap_or(Ordering::Equal));
    sorted
}

/// `N(E,δ)` or `N̂(E,δ)`: minimum (exact) or an upper bound (greedy) on the
/// number of open δ-balls covering `points`.
pub fn covering_number<M: MetricSpace>(
    space: &M,
    points: &[M::Point],
    delta: M::Distance,
    centers: Centers<'_, M::Point>,
    mode: Mode,
    options: &CoverOptions,
) -> Result<Cover<M::Point>> {
    check_inputs(space, points, delta)?;
    if let Centers::FromNet(net) = centers {
        if net.is_empty() {
            return Err(Error::Empty {
                module: MODULE,
                what: "center net",
            });
        }
    }
    if mode == Mode::Exact && space.is_line() {
        let centers = match centers {
            Centers::Anywhere => line_sweep_anywhere(space, points, delta),
            Centers::FromNet(net) => line_sweep_from_net(space, points, net, delta)?,
        };
        return Ok(Cover {
            count: centers.len() as u64,
            centers,
            mode,
            method: Method::LineSweep,
            restricted: false,
        });
    }

    let candidates: Vec<M::Point> = match centers {
        Centers::Anywhere => anywhere_candidates(space, points, options.midpoint_limit),
        Centers::FromNet(net) => net.to_vec(),
    };
    let system = coverage_system(space, points, &candidates, delta);
    if !system.is_feasible() {
        return Err(Error::pre(MODULE, "no candidate center lies within delta of some point"));
    }
    let (chosen, method) = match mode {
        Mode::Greedy => (lazy_greedy_cover(&system), Method::Greedy),
        Mode::Exact => {
            let sol = setcover::exact_cover(&system, options.budget(candidates.len()))?;
            (sol.chosen, Method::BranchAndBound)
        }
    };
    Ok(Cover {
        count: chosen.len() as u64,
        centers: chosen.into_iter().map(|i| candidates[i].clone()).collect(),
        mode,
        method,
        restricted: matches!(centers, Centers::Anywhere),
    })
}

/// `E` followed by its distinct pairwise midpoints when `|E|` is small enough.
pub fn anywhere_candidates<M: MetricSpace>(space: &M, points: &[M::Point], midpoint_limit: usize) -> Vec<M::Point> {
    let mut out = points.to_vec();
    if points.len() <= midpoint_limit {
        for (i, a) in points.iter().enumerate() {
            for b in &points[i + 1..] {
                if let Some(m) = space.midpoint(a, b) {
                    out.push(m);
                }
            }
        }
    }
    out
}

fn coverage_system<M: MetricSpace>(
    space: &M,
    points: &[M::Point],
    candidates: &[M::Point],
    delta: M::Distance,
) -> SetSystem {
    let sets: Vec<FixedBitSet> = candidates
        .par_iter()
        .map(|c| {
            let mut s = FixedBitSet::with_capacity(points.len());
            s.extend(
                points
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| space.distance(c, p) < delta)
                    .map(|(i, _)| i),
            );
            s
        })
        .collect();
    SetSystem {
        universe: points.len(),
        sets,
    }
}

/// Greedy cover with lazily refreshed gains; same choices as plain greedy
/// (largest gain, lowest index on ties).
fn lazy_greedy_cover(system: &SetSystem) -> Vec<usize> {
    let mut uncovered = FixedBitSet::with_capacity(system.universe);
    uncovered.insert_range(..);
    let mut heap: BinaryHeap<(usize, std::cmp::Reverse<usize>)> = system
        .sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.count_ones(..), std::cmp::Reverse(i)))
        .collect();
    let mut chosen = Vec::new();
    while !uncovered.is_clear() {
        let Some((gain, std::cmp::Reverse(i))) = heap.pop() else {
            break;
        };
        let fresh = system.sets[i].intersection_count(&uncovered);
        if fresh == gain {
            if fresh == 0 {
                break;
            }
            uncovered.difference_with(&system.sets[i]);
            chosen.push(i);
        } else {
            heap.push((fresh, std::cmp::Reverse(i)));
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Optimal cover of points on a line by open δ-balls with free centers: from
/// the leftmost uncovered point `p`, center the ball at the midpoint of `p`
/// and the farthest point `q` it can still reach.
fn line_sweep_anywhere<M: MetricSpace>(space: &M, points: &[M::Point], delta: M::Distance) -> Vec<M::Point> {
    let sorted = sorted_along_line(space, points);
    let mut centers = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let p = &sorted[i];
        let mut center = sorted[i].clone();
        let mut j = i + 1;
        while j < sorted.len() {
            let q = &sorted[j];
            match space.midpoint(p, q) {
                Some(m) if space.distance(&m, p) < delta && space.distance(&m, q) < delta => {
                    center = m;
                    j += 1;
                }
                _ => break,
            }
        }
        centers.push(center);
        i = j;
    }
    centers
}

/// Optimal cover of points on a line using centers from `net`: from the
/// leftmost uncovered point, take the rightmost center that still covers it.
fn line_sweep_from_net<M: MetricSpace>(
    space: &M,
    points: &[M::Point],
    net: &[M::Point],
    delta: M::Distance,
) -> Result<Vec<M::Point>> {
    let sorted = sorted_along_line(space, points);
    let net = sorted_along_line(space, net);
    let mut centers = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let p = &sorted[i];
        // first net index strictly right of p
        let right = net.partition_point(|c| space.line_order(c, p) != Some(Ordering::Greater));
        // centers covering p are contiguous around p; take the rightmost
        let mut pick = None;
        let mut k = right;
        while k < net.len() && space.distance(&net[k], p) < delta {
            pick = Some(k);
            k += 1;
        }
        if pick.is_none() && right > 0 && space.distance(&net[right - 1], p) < delta {
            pick = Some(right - 1);
        }
        let k = pick.ok_or_else(|| Error::pre(MODULE, format!("no net center within delta of point {p:?}")))?;
        let c = &net[k];
        let mut j = i + 1;
        while j < sorted.len() && space.distance(c, &sorted[j]) < delta {
            j += 1;
        }
        centers.push(c.clone());
        i = j;
    }
    Ok(centers)
}

/// `N_p(E,δ)`: maximum (exact) or a lower bound (greedy) on the number of
/// points of `E` with pairwise distances `≥ δ`.
pub fn packing_number<M: MetricSpace>(
    space: &M,
    points: &[M::Point],
    delta: M::Distance,
    mode: Mode,
    options: &CoverOptions,
) -> Result<Packing<M::Point>> {
    check_inputs(space, points, delta)?;
    if mode == Mode::Exact && space.is_line() {
        let sorted = sorted_along_line(space, points);
        let mut chosen = vec![sorted[0].clone()];
        for x in &sorted[1..] {
            if space.distance(chosen.last().expect("nonempty"), x) >= delta {
                chosen.push(x.clone());
            }
        }
        return Ok(Packing {
            count: chosen.len() as u64,
            points: chosen,
            mode,
            method: Method::LineSweep,
        });
    }
    let mut graph = Graph::new(points.len());
    for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate().skip(i + 1) {
            if space.distance(a, b) < delta {
                graph.add_edge(i, j);
            }
        }
    }
    let (chosen, method) = match mode {
        Mode::Greedy => (setcover::greedy_independent(&graph), Method::Greedy),
        Mode::Exact => {
            let sol = setcover::exact_independent(&graph, options.budget(points.len()))?;
            (sol.chosen, Method::BranchAndBound)
        }
    };
    Ok(Packing {
        count: chosen.len() as u64,
        points: chosen.into_iter().map(|i| points[i].clone()).collect(),
        mode,
        method,
    })
}

/// Minimum cover over `candidates` by trying every subset in order of size.
/// Feasible only for small candidate sets; used as a reference.
pub fn brute_force_covering_number<M: MetricSpace>(
    space: &M,
    points: &[M::Point],
    candidates: &[M::Point],
    delta: M::Distance,
) -> Result<u64> {
    if candidates.len() > 24 {
        return Err(Error::CapExceeded {
            module: MODULE,
            what: "brute-force candidates",
            limit: 24,
            needed: candidates.len() as u64,
        });
    }
    let masks: Vec<u64> = candidates
        .iter()
        .map(|c| {
            points
                .iter()
                .enumerate()
                .filter(|(_, p)| space.distance(c, p) < delta)
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    if points.len() > 64 {
        return Err(Error::CapExceeded {
            module: MODULE,
            what: "brute-force points",
            limit: 64,
            needed: points.len() as u64,
        });
    }
    let full = if points.len() == 64 { u64::MAX } else { (1u64 << points.len()) - 1 };
    (0u32..1 << candidates.len())
        .filter(|subset| {
            let union = (0..candidates.len())
                .filter(|i| subset >> i & 1 == 1)
                .fold(0u64, |u, i| u | masks[i]);
            union == full
        })
        .map(|subset| u64::from(subset.count_ones()))
        .min()
        .ok_or_else(|| Error::pre(MODULE, "candidates cannot cover the point set"))
}

// ---------------------------------------------------------------------------
// Profiles

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub delta: f64,
    pub log2_delta: f64,
    pub n_cover: u64,
    pub n_cover_dense: Option<u64>,
    pub n_pack: Option<u64>,
    pub mode: Mode,
}

/// Covering counts along a strictly decreasing schedule of scales.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringProfile {
    pub entries: Vec<ProfileEntry>,
}

#[derive(Debug, Clone)]
pub struct ProfileOptions<'a, P> {
    pub mode: Mode,
    /// Finite piece of a dense set; when present `n_cover_dense` is filled in.
    pub dense_net: Option<&'a [P]>,
    pub packing: bool,
    pub cover: CoverOptions,
}

impl<P> Default for ProfileOptions<'_, P> {
    fn default() -> Self {
        ProfileOptions {
            mode: Mode::Exact,
            dense_net: None,
            packing: false,
            cover: CoverOptions::default(),
        }
    }
}

pub(crate) fn check_schedule<D: PartialOrd + Copy + std::fmt::Debug>(schedule: &[D], zero: D) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::pre(MODULE, "schedule must be nonempty"));
    }
    if schedule.iter().any(|d| !(*d > zero)) {
        return Err(Error::pre(MODULE, "schedule entries must be positive"));
    }
    if schedule.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::pre(MODULE, "schedule must be strictly decreasing"));
    }
    Ok(())
}

/// Compute the covering profile of `points` along `schedule`. Scales are
/// processed in parallel and merged in schedule order.
pub fn covering_profile<M: MetricSpace>(
    space: &M,
    points: &[M::Point],
    schedule: &[M::Distance],
    options: &ProfileOptions<'_, M::Point>,
) -> Result<CoveringProfile> {
    let first = points.first().ok_or(Error::Empty {
        module: MODULE,
        what: "point set",
    })?;
    check_schedule(schedule, space.distance(first, first))?;

    let at_scale = |delta: M::Distance| -> Result<ProfileEntry> {
        let f = space.to_f64(delta);
        let wrap = |e: Error| Error::AtScale {
            delta: f,
            source: Box::new(e),
        };
        let mode = options.mode;
        let n_cover = covering_number(space, points, delta, Centers::Anywhere, mode, &options.cover)
            .map_err(wrap)?
            .count;
        let n_cover_dense = options
            .dense_net
            .map(|net| covering_number(space, points, delta, Centers::FromNet(net), mode, &options.cover))
            .transpose()
            .map_err(wrap)?
            .map(|c| c.count);
        let n_pack = options
            .packing
            .then(|| packing_number(space, points, delta, mode, &options.cover))
            .transpose()
            .map_err(wrap)?
            .map(|p| p.count);
        Ok(ProfileEntry {
            delta: f,
            log2_delta: f.log2(),
            n_cover,
            n_cover_dense,
            n_pack,
            mode,
        })
    };
    let mut entries: Vec<ProfileEntry> = schedule
        .par_iter()
        .map(|&d| at_scale(d))
        .collect::<Result<Vec<_>>>()?;

    if options.mode == Mode::Greedy {
        repair_monotone(&mut entries);
    }
    let profile = CoveringProfile { entries };
    let doubled: Vec<Option<usize>> = schedule
        .iter()
        .map(|&d| {
            let two = d + d;
            schedule.iter().position(|&x| !(x < two) && !(two < x))
        })
        .collect();
    profile.check_invariants(&doubled)?;
    Ok(profile)
}

/// Any cover at a fine scale also covers at a coarser one, and any packing at
/// a coarse scale is also a packing at a finer one; greedy bounds are
/// tightened accordingly.
fn repair_monotone(entries: &mut [ProfileEntry]) {
    for i in (0..entries.len().saturating_sub(1)).rev() {
        let finer = entries[i + 1].clone();
        let e = &mut entries[i];
        e.n_cover = e.n_cover.min(finer.n_cover);
        if let (Some(a), Some(b)) = (e.n_cover_dense, finer.n_cover_dense) {
            e.n_cover_dense = Some(a.min(b));
        }
    }
    for i in 1..entries.len() {
        let coarser = entries[i - 1].n_pack;
        if let (Some(a), Some(b)) = (entries[i].n_pack, coarser) {
            entries[i].n_pack = Some(a.max(b));
        }
    }
}

impl CoveringProfile {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `doubled[i]` is the index of the entry at twice the scale of entry `i`.
    fn check_invariants(&self, doubled: &[Option<usize>]) -> Result<()> {
        let bad = |delta: f64, what: String| Error::AtScale {
            delta,
            source: Box::new(Error::InvalidData(format!("profile invariant violated: {what}"))),
        };
        for w in self.entries.windows(2) {
            if !(w[1].delta < w[0].delta) {
                return Err(bad(w[1].delta, "scales not strictly decreasing".into()));
            }
            if w[1].n_cover < w[0].n_cover {
                return Err(bad(w[1].delta, "covering number decreased as delta decreased".into()));
            }
        }
        for (i, e) in self.entries.iter().enumerate() {
            if let (Some(j), Some(pack)) = (doubled.get(i).copied().flatten(), e.n_pack) {
                let coarse = &self.entries[j];
                if e.mode == Mode::Exact && coarse.mode == Mode::Exact && coarse.n_cover > pack {
                    return Err(bad(
                        e.delta,
                        format!("N(2δ) = {} exceeds N_p(δ) = {pack}", coarse.n_cover),
                    ));
                }
            }
        }
        Ok(())
    }

    /// `(log2 δ, log2 N)` pairs for the dimension estimators.
    pub fn log_profile(&self) -> LogProfile {
        LogProfile {
            log2_delta: self.entries.iter().map(|e| e.log2_delta).collect(),
            log2_count: self.entries.iter().map(|e| (e.n_cover as f64).log2()).collect(),
        }
    }

    /// Same as [`log_profile`](Self::log_profile) but from the dense-centered counts.
    pub fn dense_log_profile(&self) -> Option<LogProfile> {
        let counts: Option<Vec<f64>> = self
            .entries
            .iter()
            .map(|e| e.n_cover_dense.map(|n| (n as f64).log2()))
            .collect();
        Some(LogProfile {
            log2_delta: self.entries.iter().map(|e| e.log2_delta).collect(),
            log2_count: counts?,
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["delta", "n_cover", "n_cover_dense", "n_pack", "mode"])?;
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        for e in &self.entries {
            w.write_record([
                format!("{:e}", e.delta),
                e.n_cover.to_string(),
                opt(e.n_cover_dense),
                opt(e.n_pack),
                e.mode.as_str().to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// A count-versus-scale profile in log space. Counts may be astronomically
/// large (hyperspace covers), so both axes are base-2 logarithms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogProfile {
    /// Strictly decreasing.
    pub log2_delta: Vec<f64>,
    pub log2_count: Vec<f64>,
}

impl LogProfile {
    pub fn new(log2_delta: Vec<f64>, log2_count: Vec<f64>) -> Result<Self> {
        if log2_delta.len() != log2_count.len() {
            return Err(Error::pre(MODULE, "scale and count lists differ in length"));
        }
        if log2_delta.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(Error::pre(MODULE, "scales must be strictly decreasing"));
        }
        if log2_count.iter().any(|c| c.is_nan()) {
            return Err(Error::pre(MODULE, "counts must not be NaN"));
        }
        Ok(LogProfile { log2_delta, log2_count })
    }

    /// Profile of a count function on the scales `δ = 2^{log2_delta}`.
    pub fn from_fn(log2_delta: &[f64], count: impl Fn(f64) -> f64) -> Result<Self> {
        LogProfile::new(log2_delta.to_vec(), log2_delta.iter().map(|&l| count(l)).collect())
    }

    pub fn len(&self) -> usize {
        self.log2_delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log2_delta.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{Euclidean, ExactLine, FiniteMatrix, RealLine, Rational};

    fn opts() -> CoverOptions {
        CoverOptions::default()
    }

    #[test]
    fn two_points() {
        let e = [0.0, 1.0];
        let c = covering_number(&RealLine, &e, 0.6, Centers::Anywhere, Mode::Exact, &opts()).unwrap();
        assert_eq!(c.count, 1);
        assert_eq!(c.centers, vec![0.5]);
        let c = covering_number(&RealLine, &e, 0.4, Centers::Anywhere, Mode::Exact, &opts()).unwrap();
        assert_eq!(c.count, 2);
        // delta exactly half the gap: open balls cannot share a center
        let c = covering_number(&RealLine, &e, 0.5, Centers::Anywhere, Mode::Exact, &opts()).unwrap();
        assert_eq!(c.count, 2);
    }

    #[test]
    fn packings() {
        let o = opts();
        assert_eq!(packing_number(&RealLine, &[0.0, 1.0], 0.5, Mode::Exact, &o).unwrap().count, 2);
        assert_eq!(
            packing_number(&RealLine, &[0.0, 0.4, 1.0], 0.5, Mode::Exact, &o).unwrap().count,
            2
        );
        assert_eq!(packing_number(&RealLine, &[0.3], 0.5, Mode::Exact, &o).unwrap().count, 1);
        // separation is ρ ≥ δ
        assert_eq!(packing_number(&RealLine, &[0.0, 0.5], 0.5, Mode::Exact, &o).unwrap().count, 2);
        let e = Euclidean::new(1);
        let pts: Vec<Vec<f64>> = [0.0, 0.4, 1.0].iter().map(|&x| vec![x]).collect();
        assert_eq!(packing_number(&e, &pts, 0.5, Mode::Exact, &o).unwrap().count, 2);
    }

    #[test]
    fn errors() {
        let o = opts();
        assert!(covering_number(&RealLine, &[], 0.5, Centers::Anywhere, Mode::Exact, &o).is_err());
        assert!(covering_number(&RealLine, &[0.0], 0.0, Centers::Anywhere, Mode::Exact, &o).is_err());
        assert!(packing_number(&RealLine, &[], 0.5, Mode::Exact, &o).is_err());
        let r = covering_profile(&RealLine, &[0.0, 1.0], &[], &ProfileOptions::default());
        assert!(matches!(r, Err(Error::Precondition { .. })));
        let r = covering_profile(&RealLine, &[0.0, 1.0], &[0.1, 0.2], &ProfileOptions::default());
        assert!(r.is_err());
    }

    #[test]
    fn exact_cap_is_enforced_off_the_line() {
        // 30 points on a circle-ish curve in the plane, tiny node budget
        let pts: Vec<Vec<f64>> = (0..30)
            .map(|i| {
                let t = i as f64 * 0.2;
                vec![t.cos(), t.sin()]
            })
            .collect();
        let o = CoverOptions {
            node_cap: 0,
            ..opts()
        };
        let r = covering_number(&Euclidean::new(2), &pts, 0.15, Centers::Anywhere, Mode::Exact, &o);
        assert!(matches!(r, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn one_over_n_cluster() {
        let pts: Vec<f64> = (1..=100).map(|n| 1.0 / n as f64).collect();
        let c = covering_number(&RealLine, &pts, 0.1, Centers::Anywhere, Mode::Exact, &opts()).unwrap();
        assert!(c.count <= 4, "got {}", c.count);
    }

    #[test]
    fn net_sweep_matches_branch_and_bound() {
        let pts = [0.05, 0.1, 0.33, 0.4, 0.61, 0.9, 0.97];
        let net: Vec<f64> = (0..=16).map(|k| k as f64 / 16.0).collect();
        let swept = covering_number(&RealLine, &pts, 0.1, Centers::FromNet(&net), Mode::Exact, &opts()).unwrap();
        let net_v: Vec<Vec<f64>> = net.iter().map(|&x| vec![x]).collect();
        let pts_v: Vec<Vec<f64>> = pts.iter().map(|&x| vec![x]).collect();
        let bb = covering_number(&FiniteLine, &pts_v, 0.1, Centers::FromNet(&net_v), Mode::Exact, &opts()).unwrap();
        assert_eq!(swept.method, Method::LineSweep);
        assert_eq!(bb.method, Method::BranchAndBound);
        assert_eq!(swept.count, bb.count);
    }

    /// Euclidean line that hides its line structure, forcing the generic path.
    struct FiniteLine;

    impl MetricSpace for FiniteLine {
        type Point = Vec<f64>;
        type Distance = f64;

        fn distance(&self, a: &Vec<f64>, b: &Vec<f64>) -> f64 {
            (a[0] - b[0]).abs()
        }

        fn to_f64(&self, d: f64) -> f64 {
            d
        }

        fn midpoint(&self, a: &Vec<f64>, b: &Vec<f64>) -> Option<Vec<f64>> {
            Some(vec![(a[0] + b[0]) / 2.0])
        }

        fn descriptor(&self) -> String {
            "hidden-line".into()
        }
    }

    #[test]
    fn exact_profile_on_rationals_and_csv() {
        let pts: Vec<Rational> = (0..=8).map(|k| Rational::new(k, 8)).collect();
        let schedule: Vec<Rational> = (1..=4).map(|k| Rational::new(1, 1 << k)).collect();
        let p = covering_profile(
            &ExactLine,
            &pts,
            &schedule,
            &ProfileOptions {
                packing: true,
                ..ProfileOptions::default()
            },
        )
        .unwrap();
        let counts: Vec<u64> = p.entries.iter().map(|e| e.n_cover).collect();
        // gap 1/8; a ball of radius 1/2^k covers the points in an open window of width 2^{1-k}
        assert_eq!(counts, vec![2, 3, 5, 9]);
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("delta,n_cover,n_cover_dense,n_pack,mode\n"));
        assert!(text.lines().nth(1).unwrap().ends_with(",exact"));
    }

    #[test]
    fn greedy_profile_is_monotone() {
        let m = FiniteMatrix::new(vec![
            vec![0.0, 0.3, 0.5, 0.9],
            vec![0.3, 0.0, 0.4, 0.8],
            vec![0.5, 0.4, 0.0, 0.45],
            vec![0.9, 0.8, 0.45, 0.0],
        ])
        .unwrap();
        let p = covering_profile(
            &m,
            &m.points(),
            &[1.0, 0.5, 0.35, 0.2],
            &ProfileOptions {
                mode: Mode::Greedy,
                packing: true,
                ..ProfileOptions::default()
            },
        )
        .unwrap();
        assert!(p.entries.windows(2).all(|w| w[0].n_cover <= w[1].n_cover));
        assert_eq!(p.entries.last().unwrap().n_cover, 4);
    }
}
