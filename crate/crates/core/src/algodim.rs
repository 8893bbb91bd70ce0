//! Algorithmic dimension of points from complexity profiles.
//!
//! Kolmogorov complexity is replaced by an LZ78 code length. A point of
//! `[0,1]` at precision `δ = 2^{-r}` has complexity `k(δ)`, the smallest code
//! length among dyadic codewords within δ of it. The gauged algorithmic
//! dimension is `inf{s : lim 2^{k(δ)}·φ_s(δ) = 0}`, estimated with the same
//! trend tests and bisection as the Minkowski estimators.

use std::collections::HashMap;
use std::io::Write;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::covering::LogProfile;
use crate::dimension::{minkowski_dimension, DimensionEstimate, EstimatorConfig, Kind, Method};
use crate::error::{Error, Result};
use crate::gauge::{GaugeFamily, Scale};
use crate::metric::trim_code;

const MODULE: &str = "algodim";

// ---------------------------------------------------------------------------
// Coder

/// Number of phrases in the LZ78 parse of `w`; a trailing phrase that
/// repeats a dictionary entry counts as one.
pub fn lz78_phrases(w: &[bool]) -> u64 {
    let mut trie: HashMap<(u32, bool), u32> = HashMap::new();
    let mut next = 1u32;
    let mut phrases = 0;
    let mut i = 0;
    while i < w.len() {
        let mut node = 0u32;
        while i < w.len() {
            match trie.get(&(node, w[i])) {
                Some(&child) => {
                    node = child;
                    i += 1;
                }
                None => break,
            }
        }
        if i < w.len() {
            trie.insert((node, w[i]), next);
            next += 1;
            i += 1;
        }
        phrases += 1;
    }
    phrases
}

/// Bits to write `c` LZ78 phrases: phrase `i` names one of `i` earlier
/// dictionary entries and appends one bit, costing `⌈log2 i⌉ + 1`.
pub fn lz78_code_length(phrases: u64) -> u64 {
    (1..=phrases).map(|i| u64::from(ceil_log2(i)) + 1).sum()
}

fn ceil_log2(i: u64) -> u32 {
    if i <= 1 {
        0
    } else {
        64 - (i - 1).leading_zeros()
    }
}

/// Proxy complexity of `w` in bits: one flag bit, then either the LZ78 code
/// or `w` verbatim, whichever is shorter. 0 for the empty string.
pub fn lz_complexity(w: &[bool]) -> u64 {
    if w.is_empty() {
        return 0;
    }
    1 + lz78_code_length(lz78_phrases(w)).min(w.len() as u64)
}

// ---------------------------------------------------------------------------
// Points with long binary expansions

/// A point of `[0,1]` given by its binary expansion `x = Σ b_i 2^{-i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ExpansionPoint {
    /// `p/q` with `0 ≤ p < q`.
    Ratio { p: u64, q: u64 },
    /// Bits from a seeded xoshiro256** stream.
    Seeded { seed: u64 },
    /// Explicit leading bits, followed by zeros.
    Explicit { bits: Vec<bool> },
}

impl ExpansionPoint {
    pub fn ratio(p: u64, q: u64) -> Result<Self> {
        if q == 0 || p >= q {
            return Err(Error::pre(MODULE, format!("need 0 <= p < q, got {p}/{q}")));
        }
        Ok(ExpansionPoint::Ratio { p, q })
    }

    /// First `r` bits `b_1 … b_r`.
    pub fn prefix(&self, r: usize) -> Vec<bool> {
        match self {
            ExpansionPoint::Ratio { p, q } => {
                let (q, mut rem) = (u128::from(*q), u128::from(*p));
                (0..r)
                    .map(|_| {
                        rem *= 2;
                        let bit = rem >= q;
                        if bit {
                            rem -= q;
                        }
                        bit
                    })
                    .collect()
            }
            ExpansionPoint::Seeded { seed } => {
                let mut rng = Xoshiro256StarStar::seed_from_u64(*seed);
                let mut out = Vec::with_capacity(r);
                while out.len() < r {
                    let word = rng.next_u64();
                    out.extend((0..64).map(|k| word >> k & 1 == 1).take(r - out.len()));
                }
                out
            }
            ExpansionPoint::Explicit { bits } => {
                let mut out: Vec<bool> = bits.iter().copied().take(r).collect();
                out.resize(r, false);
                out
            }
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            ExpansionPoint::Ratio { p, q } => format!("{p}/{q}"),
            ExpansionPoint::Seeded { seed } => format!("seeded:{seed}"),
            ExpansionPoint::Explicit { bits } => format!("bits:{}", bits.len()),
        }
    }
}

/// Dyadic codewords within `2^{-r}` of the point with expansion `prefix`
/// (at least `r` bits): the truncation and the truncation plus `2^{-r}`.
/// Codewords are those of the dyadic enumeration of `[0,1]`.
pub fn dyadic_candidates(prefix: &[bool], r: usize) -> Result<Vec<Vec<bool>>> {
    if prefix.len() < r {
        return Err(Error::pre(MODULE, "expansion shorter than the precision"));
    }
    let mut floor = Vec::with_capacity(r + 1);
    floor.push(false);
    floor.extend_from_slice(&prefix[..r]);
    let mut ceil = floor.clone();
    // add 2^{-r}, carrying into the integer bit when the prefix is all ones
    let mut k = r;
    loop {
        if ceil[k] {
            ceil[k] = false;
            if k == 0 {
                break;
            }
            k -= 1;
        } else {
            ceil[k] = true;
            break;
        }
    }
    let mut out = vec![trim_code(floor)];
    let ceil = trim_code(ceil);
    if ceil != out[0] {
        out.push(ceil);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Profiles

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Proxy,
    Synthetic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexityEntry {
    pub log2_delta: f64,
    pub k: f64,
}

/// Complexity values along strictly decreasing scales.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    pub entries: Vec<ComplexityEntry>,
    pub provenance: Provenance,
}

impl ComplexityProfile {
    pub fn new(entries: Vec<ComplexityEntry>, provenance: Provenance) -> Result<Self> {
        if entries.windows(2).any(|w| !(w[1].log2_delta < w[0].log2_delta)) {
            return Err(Error::pre(MODULE, "scales must be strictly decreasing"));
        }
        if entries.iter().any(|e| !(e.k >= 0.0) || !e.k.is_finite()) {
            return Err(Error::pre(MODULE, "complexities must be finite and nonnegative"));
        }
        Ok(ComplexityProfile { entries, provenance })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(log2 δ, k)` as a log-count profile: `2^k` plays the role of the count.
    pub fn as_log_profile(&self) -> Result<LogProfile> {
        LogProfile::new(
            self.entries.iter().map(|e| e.log2_delta).collect(),
            self.entries.iter().map(|e| e.k).collect(),
        )
    }

    /// `(log2 δ, log2 k)`: `k` itself as the count.
    pub fn as_direct_profile(&self) -> Result<LogProfile> {
        LogProfile::new(
            self.entries.iter().map(|e| e.log2_delta).collect(),
            self.entries.iter().map(|e| e.k.log2()).collect(),
        )
    }

    /// CSV with columns `delta,k,provenance`. Scales below the `f64` range
    /// are written as `2^<log2>`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["delta", "k", "provenance"])?;
        let prov = match self.provenance {
            Provenance::Proxy => "proxy",
            Provenance::Synthetic => "synthetic",
        };
        for e in &self.entries {
            w.write_record([format_delta(e.log2_delta), e.k.to_string(), prov.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `δ` in scientific notation, or `2^<log2 δ>` when it underflows.
pub fn format_delta(log2_delta: f64) -> String {
    if log2_delta >= -1000.0 {
        format!("{:e}", log2_delta.exp2())
    } else {
        format!("2^{log2_delta}")
    }
}

/// Precisions `r_j = 2^j` bits for `j = 1..=depth`.
pub fn dyadic_depth_schedule(depth: u32) -> Vec<Scale> {
    (1..=depth).map(|j| Scale::from_log2(-(2f64.powi(j as i32)))).collect()
}

/// Proxy complexity profile of a point along `schedule`. At scale δ the
/// precision is `r = ⌈log2(1/δ)⌉` bits, so every candidate is within δ.
pub fn complexity_profile_of_point(point: &ExpansionPoint, schedule: &[Scale]) -> Result<ComplexityProfile> {
    if schedule.is_empty() {
        return Err(Error::pre(MODULE, "schedule must be nonempty"));
    }
    let precisions: Vec<usize> = schedule
        .iter()
        .map(|s| {
            let r = (-s.log2()).ceil();
            if !(r >= 0.0) || r > f64::from(1u32 << 28) {
                return Err(Error::NetTooCoarse { log2_delta: s.log2() });
            }
            Ok(r as usize)
        })
        .collect::<Result<_>>()?;
    let longest = precisions.iter().copied().max().unwrap_or(0);
    let prefix = point.prefix(longest);
    let entries = schedule
        .iter()
        .zip(&precisions)
        .map(|(s, &r)| {
            let k = dyadic_candidates(&prefix, r)?
                .iter()
                .map(|c| lz_complexity(c))
                .min()
                .ok_or(Error::NetTooCoarse { log2_delta: s.log2() })?;
            Ok(ComplexityEntry {
                log2_delta: s.log2(),
                k: k as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ComplexityProfile::new(entries, Provenance::Proxy)
}

// ---------------------------------------------------------------------------
// Functionals

/// `inf{s : lim 2^{k(δ)}·φ_s(δ) = 0}` by bisection on `k + log2 φ_s(δ)`.
pub fn gauged_dim_from_profile(
    profile: &ComplexityProfile,
    family: &GaugeFamily,
    kind: Kind,
    config: &EstimatorConfig,
) -> Result<DimensionEstimate> {
    let mut est = minkowski_dimension(&profile.as_log_profile()?, family, kind, config)?;
    est.method = Method::GaugedAlgo;
    Ok(est)
}

/// Both sides of the jump characterization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JumpCharacterization {
    /// `inf{s : lim k(δ)·φ_s(δ) = 0}`.
    pub s_direct: DimensionEstimate,
    /// Gauged dimension of the profile under `jump(φ)`.
    pub s_jump: DimensionEstimate,
    pub discrepancy: f64,
}

pub fn jump_characterization(
    profile: &ComplexityProfile,
    family: &GaugeFamily,
    kind: Kind,
    config: &EstimatorConfig,
) -> Result<JumpCharacterization> {
    let mut s_direct = minkowski_dimension(&profile.as_direct_profile()?, family, kind, config)?;
    s_direct.method = Method::GaugedAlgo;
    let s_jump = gauged_dim_from_profile(profile, &family.jump(), kind, config)?;
    Ok(JumpCharacterization {
        discrepancy: (s_direct.value - s_jump.value).abs(),
        s_direct,
        s_jump,
    })
}

/// `k(δ)/log2(1/δ)` over the trend window: the minimum over the window for
/// the lower dimension, the maximum over its later half for the upper one.
pub fn ratio_dimension(profile: &ComplexityProfile, kind: Kind, window: Option<usize>) -> Result<f64> {
    let n = profile.len();
    let w = window.unwrap_or(n.div_ceil(2));
    if w < 2 || w > n {
        return Err(Error::pre(MODULE, "invalid window"));
    }
    let ratios: Vec<f64> = profile.entries[n - w..].iter().map(|e| e.k / -e.log2_delta).collect();
    let fold = |xs: &[f64], f: fn(f64, f64) -> f64, init: f64| xs.iter().copied().fold(init, f);
    Ok(match kind {
        Kind::Lower => fold(&ratios, f64::min, f64::INFINITY),
        Kind::Upper => fold(&ratios[w / 2..], f64::max, f64::NEG_INFINITY),
    })
}

// ---------------------------------------------------------------------------
// Synthetic profiles

/// Closed-form complexity functions of the precision `r = log2(1/δ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Synthetic {
    /// `k = c`.
    Const(f64),
    /// `k = a·r`.
    Linear(f64),
    /// `k = a·r` for even `r`, `b·r` for odd `r`.
    Alternating(f64, f64),
    /// `k = 2^{a·r}`.
    Exp(f64),
    /// `k = 2^{slopes[i]·r}` for `r` up to `breaks[i]` (the last piece runs
    /// on), i.e. `k = δ^{-slopes[i]}` piecewise.
    PiecewisePower { slopes: Vec<f64>, breaks: Vec<f64> },
}

impl Synthetic {
    pub fn k(&self, r: f64) -> f64 {
        match self {
            Synthetic::Const(c) => *c,
            Synthetic::Linear(a) => a * r,
            Synthetic::Alternating(a, b) => {
                if (r as i64) % 2 == 0 {
                    a * r
                } else {
                    b * r
                }
            }
            Synthetic::Exp(a) => (a * r).exp2(),
            Synthetic::PiecewisePower { slopes, breaks } => {
                let piece = breaks.iter().take_while(|&&b| r > b).count();
                (slopes[piece.min(slopes.len() - 1)] * r).exp2()
            }
        }
    }

    /// Parse `const(c)`, `linear(a)`, `alt(a,b)` or `exp(a)`.
    pub fn parse(text: &str) -> Result<Synthetic> {
        let t = text.trim();
        let (name, rest) = t
            .split_once('(')
            .ok_or_else(|| Error::Parse(format!("bad synthetic profile `{t}`")))?;
        let args = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("missing `)` in `{t}`")))?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<f64>().map_err(|e| Error::Parse(format!("`{a}`: {e}"))))
            .collect::<Result<Vec<f64>>>()?;
        match (name.trim(), nums.as_slice()) {
            ("const", [c]) => Ok(Synthetic::Const(*c)),
            ("linear", [a]) => Ok(Synthetic::Linear(*a)),
            ("alt", [a, b]) => Ok(Synthetic::Alternating(*a, *b)),
            ("exp", [a]) => Ok(Synthetic::Exp(*a)),
            _ => Err(Error::Parse(format!("unknown synthetic profile `{t}`"))),
        }
    }

    /// Random piecewise-power profile with 1 to 3 pieces on `[0, r_max]`.
    pub fn random_piecewise(seed: u64, r_max: f64) -> Synthetic {
        let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
        let mut unit = || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        let pieces = 1 + (unit() * 3.0) as usize;
        let slopes: Vec<f64> = (0..pieces).map(|_| 0.05 + 1.95 * unit()).collect();
        // breaks stay in the first half so the final power law owns the trend window
        let mut breaks: Vec<f64> = (1..pieces).map(|_| r_max * (0.05 + 0.4 * unit())).collect();
        breaks.sort_by(f64::total_cmp);
        Synthetic::PiecewisePower { slopes, breaks }
    }

    /// Profile at precisions `rs` (strictly increasing).
    pub fn profile(&self, rs: &[f64]) -> Result<ComplexityProfile> {
        ComplexityProfile::new(
            rs.iter()
                .map(|&r| ComplexityEntry {
                    log2_delta: -r,
                    k: self.k(r),
                })
                .collect(),
            Provenance::Synthetic,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::canonical;

    fn linear_rs(n: u32) -> Vec<f64> {
        (1..=n).map(f64::from).collect()
    }

    #[test]
    fn coder_basics() {
        assert_eq!(lz_complexity(&[]), 0);
        assert_eq!(lz78_phrases(&[false, true, false, false]), 3);
        let zeros = vec![false; 2048];
        assert!((lz_complexity(&zeros) as f64) <= 0.2 * 2048.0);
        let random = ExpansionPoint::Seeded { seed: 3 }.prefix(1024);
        assert!(lz_complexity(&random) as f64 >= 0.8 * 1024.0);
        assert!(lz_complexity(&random) <= 1025);
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!((1..=9).map(ceil_log2).collect::<Vec<_>>(), vec![0, 1, 2, 2, 3, 3, 3, 3, 4]);
    }

    #[test]
    fn expansions() {
        let third = ExpansionPoint::ratio(1, 3).unwrap();
        assert_eq!(third.prefix(6), vec![false, true, false, true, false, true]);
        assert!(ExpansionPoint::ratio(3, 3).is_err());
        let e = ExpansionPoint::Explicit { bits: vec![true] };
        assert_eq!(e.prefix(3), vec![true, false, false]);
    }

    #[test]
    fn candidates_are_neighbors() {
        // x = 0.011..., r = 2: floor 0.01, ceil 0.10
        let c = dyadic_candidates(&[false, true, true], 2).unwrap();
        assert_eq!(c, vec![vec![false, false, true], vec![false, true]]);
        // all ones carries to 1
        let c = dyadic_candidates(&[true, true], 2).unwrap();
        assert_eq!(c[1], vec![true]);
        // zero is one symbol at every precision
        let c = dyadic_candidates(&[false; 8], 8).unwrap();
        assert_eq!(c[0], vec![false]);
    }

    #[test]
    fn zero_has_constant_complexity() {
        let p = complexity_profile_of_point(&ExpansionPoint::Explicit { bits: vec![] }, &dyadic_depth_schedule(12))
            .unwrap();
        assert!(p.entries.iter().all(|e| e.k == 2.0));
    }

    #[test]
    fn synthetic_examples() {
        let cfg = EstimatorConfig::default();
        let p = Synthetic::Linear(1.0).profile(&linear_rs(40)).unwrap();
        for kind in [Kind::Lower, Kind::Upper] {
            let d = gauged_dim_from_profile(&p, &canonical(), kind, &cfg).unwrap();
            assert!((d.value - 1.0).abs() < 2e-3, "{kind:?} {}", d.value);
        }
        let p = Synthetic::Alternating(1.0, 2.0).profile(&linear_rs(40)).unwrap();
        let lo = gauged_dim_from_profile(&p, &canonical(), Kind::Lower, &cfg).unwrap();
        let hi = gauged_dim_from_profile(&p, &canonical(), Kind::Upper, &cfg).unwrap();
        assert!((lo.value - 1.0).abs() < 2e-3, "{}", lo.value);
        assert!((hi.value - 2.0).abs() < 2e-3, "{}", hi.value);
        let rs: Vec<f64> = (1..=20).map(|j| 2f64.powi(j)).collect();
        let p = Synthetic::Const(5.0).profile(&rs).unwrap();
        for kind in [Kind::Lower, Kind::Upper] {
            let d = gauged_dim_from_profile(&p, &canonical(), kind, &cfg).unwrap();
            assert!(d.value < 2e-3);
        }
    }

    #[test]
    fn jump_characterization_examples() {
        let cfg = EstimatorConfig::default();
        let p = Synthetic::Exp(0.5).profile(&linear_rs(40)).unwrap();
        let j = jump_characterization(&p, &canonical(), Kind::Upper, &cfg).unwrap();
        assert!((j.s_direct.value - 0.5).abs() < 2e-3, "{}", j.s_direct.value);
        assert!(j.discrepancy <= 2e-3, "{j:?}");
        let p = Synthetic::Const(1.0).profile(&linear_rs(40)).unwrap();
        let j = jump_characterization(&p, &canonical(), Kind::Upper, &cfg).unwrap();
        assert!(j.s_direct.value < 2e-3 && j.s_jump.value < 2e-3);
    }

    #[test]
    fn parse_synthetic() {
        assert_eq!(Synthetic::parse("alt(1, 2)").unwrap(), Synthetic::Alternating(1.0, 2.0));
        assert_eq!(Synthetic::parse("exp(0.5)").unwrap(), Synthetic::Exp(0.5));
        assert!(Synthetic::parse("pow(2)").is_err());
        assert!(Synthetic::parse("linear(x)").is_err());
    }

    #[test]
    fn piecewise_pieces() {
        let s = Synthetic::PiecewisePower {
            slopes: vec![1.0, 0.5],
            breaks: vec![10.0],
        };
        assert_eq!(s.k(4.0), 16.0);
        assert_eq!(s.k(10.0), 2f64.powi(10));
        assert_eq!(s.k(12.0), 2f64.powi(6));
    }

    #[test]
    fn csv_writes_underflowing_scales() {
        let p = complexity_profile_of_point(&ExpansionPoint::ratio(1, 3).unwrap(), &dyadic_depth_schedule(11)).unwrap();
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("delta,k,provenance\n"));
        assert!(text.lines().last().unwrap().starts_with("2^-2048,"));
    }
}
