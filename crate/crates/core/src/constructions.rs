//! Explicit sets: a randomized seven-adic Cantor set driven by a bit stream,
//! the self-similar set `E₀` of reals with base-7 digits in `{1,4}`, the
//! digit map `g`, and the sequence `{1/n}`.
//!
//! Intervals are stored as numerators over `7^level`, so widths, gaps and
//! nesting are checked exactly.

use std::path::Path;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::Rational;

const MODULE: &str = "constructions";

/// Deepest level whose denominator `7^level` fits in a `u64`.
pub const MAX_LEVEL: u32 = 22;

pub fn pow7(level: u32) -> u64 {
    7u64.pow(level)
}

// ---------------------------------------------------------------------------
// Bit streams

#[derive(Debug, Clone)]
enum Backing {
    Seeded { rng: Xoshiro256StarStar, word: u64, left: u32 },
    Constant(bool),
    Explicit(Vec<bool>),
}

/// A deterministic stream of bits with a count of bits handed out.
///
/// Seeded streams come from a xoshiro256** generator. They stand in for a
/// random sequence; no randomness claim is made about them.
#[derive(Debug, Clone)]
pub struct BitSource {
    backing: Backing,
    seed: Option<u64>,
    cursor: u64,
}

impl BitSource {
    pub fn seeded(seed: u64) -> Self {
        BitSource {
            backing: Backing::Seeded {
                rng: Xoshiro256StarStar::seed_from_u64(seed),
                word: 0,
                left: 0,
            },
            seed: Some(seed),
            cursor: 0,
        }
    }

    /// The infinite stream `bbbb…`.
    pub fn constant(bit: bool) -> Self {
        BitSource {
            backing: Backing::Constant(bit),
            seed: None,
            cursor: 0,
        }
    }

    /// A finite stream; reading past its end is an error.
    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitSource {
            backing: Backing::Explicit(bits),
            seed: None,
            cursor: 0,
        }
    }

    /// Parse ASCII `0`/`1`, ignoring whitespace.
    pub fn parse_ascii(text: &str) -> Result<Self> {
        let bits = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("bit stream contains `{other}`"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(BitSource::from_bits(bits))
    }

    pub fn from_ascii_file(path: impl AsRef<Path>) -> Result<Self> {
        BitSource::parse_ascii(&std::fs::read_to_string(path)?)
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Bits handed out so far.
    pub fn cursor(&self) -> u64 {
        self.cursor
    }

    pub fn next_bit(&mut self) -> Result<bool> {
        let bit = match &mut self.backing {
            Backing::Seeded { rng, word, left } => {
                if *left == 0 {
                    *word = rng.next_u64();
                    *left = 64;
                }
                let b = *word & 1 == 1;
                *word >>= 1;
                *left -= 1;
                b
            }
            Backing::Constant(b) => *b,
            Backing::Explicit(bits) => *bits
                .get(self.cursor as usize)
                .ok_or(Error::BitsExhausted { consumed: self.cursor })?,
        };
        self.cursor += 1;
        Ok(bit)
    }

    pub fn take(&mut self, n: usize) -> Result<Vec<bool>> {
        (0..n).map(|_| self.next_bit()).collect()
    }
}

// ---------------------------------------------------------------------------
// Intervals

/// Closed interval `[lo/7^level, hi/7^level]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval7 {
    pub level: u32,
    pub lo: u64,
    pub hi: u64,
}

impl Interval7 {
    pub const UNIT: Interval7 = Interval7 { level: 0, lo: 0, hi: 1 };

    pub fn lo_rational(&self) -> Rational {
        Rational::new(i128::from(self.lo), i128::from(pow7(self.level)))
    }

    pub fn hi_rational(&self) -> Rational {
        Rational::new(i128::from(self.hi), i128::from(pow7(self.level)))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo_rational() <= *x && *x <= self.hi_rational()
    }

    /// Same interval expressed over `7^level` for a deeper level.
    pub fn at_level(&self, level: u32) -> Interval7 {
        let f = pow7(level - self.level);
        Interval7 {
            level,
            lo: self.lo * f,
            hi: self.hi * f,
        }
    }

    /// The `k`-th of seven equal closed pieces, `k ∈ 0..7`.
    pub fn seventh(&self, k: u64) -> Result<Interval7> {
        if self.hi <= self.lo {
            return Err(Error::pre(MODULE, "degenerate interval"));
        }
        if self.level >= MAX_LEVEL {
            return Err(Error::pre(MODULE, format!("level {} is the deepest supported", MAX_LEVEL)));
        }
        let w = self.hi - self.lo;
        Ok(Interval7 {
            level: self.level + 1,
            lo: 7 * self.lo + k * w,
            hi: 7 * self.lo + (k + 1) * w,
        })
    }

    /// `[J_00, J_01, J_10, J_11]`: the 2nd, 3rd, 5th and 6th sevenths.
    pub fn children(&self) -> Result<[Interval7; 4]> {
        Ok([self.seventh(1)?, self.seventh(2)?, self.seventh(4)?, self.seventh(5)?])
    }
}

/// `J_ab` of an interval given by rational endpoints.
pub fn seven_adic_children(lo: Rational, hi: Rational) -> Result<[(&'static str, Rational, Rational); 4]> {
    if hi <= lo {
        return Err(Error::pre(MODULE, "degenerate interval"));
    }
    let w = (hi - lo) / 7;
    let piece = |k: i128| (lo + w * k, lo + w * (k + 1));
    let [a, b, c, d] = [piece(1), piece(2), piece(4), piece(5)];
    Ok([("00", a.0, a.1), ("01", b.0, b.1), ("10", c.0, c.1), ("11", d.0, d.1)])
}

/// The intervals of one construction level, in label order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSet {
    pub level: u32,
    /// Numerator pairs over `7^denominator_power`.
    pub intervals: Vec<[u64; 2]>,
    pub denominator_power: u32,
    pub labels: Vec<String>,
}

impl IntervalSet {
    pub fn interval(&self, i: usize) -> Interval7 {
        Interval7 {
            level: self.denominator_power,
            lo: self.intervals[i][0],
            hi: self.intervals[i][1],
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Interval7> + '_ {
        (0..self.intervals.len()).map(|i| self.interval(i))
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Count `2^level`, width `7^{-level}`, increasing order with gaps of at
    /// least `7^{-level}`, labels of length `2·level`.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidData(format!("interval set level {}: {m}", self.level)));
        if self.denominator_power != self.level {
            return fail("denominator power differs from level".into());
        }
        if self.level > MAX_LEVEL {
            return fail("level too deep".into());
        }
        if self.intervals.len() as u64 != 1u64 << self.level {
            return fail(format!("{} intervals, expected 2^{}", self.intervals.len(), self.level));
        }
        if self.labels.len() != self.intervals.len() {
            return fail("label count differs from interval count".into());
        }
        if self.labels.iter().any(|l| l.len() != 2 * self.level as usize) {
            return fail("label of wrong length".into());
        }
        if self.labels.windows(2).any(|w| w[0] >= w[1]) {
            return fail("labels not in increasing order".into());
        }
        let top = pow7(self.level);
        for (i, [lo, hi]) in self.intervals.iter().enumerate() {
            if hi.checked_sub(*lo) != Some(1) || *hi > top {
                return fail(format!("interval {i} does not have width 7^-{}", self.level));
            }
        }
        for (i, w) in self.intervals.windows(2).enumerate() {
            if w[1][0] < w[0][1] + 1 {
                return fail(format!("gap after interval {i} is below 7^-{}", self.level));
            }
        }
        Ok(())
    }

    /// Every interval of `self` lies in exactly one interval of `parent`.
    pub fn check_nested_in(&self, parent: &IntervalSet) -> Result<()> {
        if self.level != parent.level + 1 {
            return Err(Error::pre(MODULE, "nesting compares consecutive levels"));
        }
        for c in self.iter() {
            let n = parent
                .iter()
                .map(|p| p.at_level(c.level))
                .filter(|p| p.lo <= c.lo && c.hi <= p.hi)
                .count();
            if n != 1 {
                return Err(Error::InvalidData(format!(
                    "interval [{}, {}] lies in {n} parents",
                    c.lo, c.hi
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parse and validate.
    pub fn from_json(text: &str) -> Result<IntervalSet> {
        let set: IntervalSet = serde_json::from_str(text)?;
        set.check_invariants()?;
        Ok(set)
    }
}

/// Levels `0..=depth` of the seven-adic construction. Passing from level `ℓ`
/// to `ℓ+1` reads one bit `b_{ua}` for each label `u` and `a ∈ {0,1}`, in
/// label order, and keeps the child `J_{a b_{ua}}` of `I_u`, labeled
/// `u a b_{ua}`.
pub fn build_construction(bits: &mut BitSource, depth: u32) -> Result<Vec<IntervalSet>> {
    if depth > MAX_LEVEL {
        return Err(Error::pre(MODULE, format!("depth must be at most {MAX_LEVEL}")));
    }
    let mut levels = vec![IntervalSet {
        level: 0,
        intervals: vec![[0, 1]],
        denominator_power: 0,
        labels: vec![String::new()],
    }];
    for level in 0..depth {
        let prev = levels.last().expect("level 0 present");
        let mut intervals = Vec::with_capacity(prev.len() * 2);
        let mut labels = Vec::with_capacity(prev.len() * 2);
        for (i, u) in prev.labels.iter().enumerate() {
            let children = prev.interval(i).children()?;
            for a in 0..2usize {
                let b = usize::from(bits.next_bit()?);
                let child = children[2 * a + b];
                intervals.push([child.lo, child.hi]);
                labels.push(format!("{u}{a}{b}"));
            }
        }
        levels.push(IntervalSet {
            level: level + 1,
            intervals,
            denominator_power: level + 1,
            labels,
        });
    }
    Ok(levels)
}

/// Intervals of the reals in `[0,1]` whose first `depth` base-7 digits are 1 or 4.
pub fn self_similar_e0(depth: u32) -> Result<IntervalSet> {
    let mut levels = build_construction(&mut BitSource::constant(false), depth)?;
    Ok(levels.pop().expect("nonempty"))
}

/// `g(S)[n] = S[n] + R[2n + S[n]]` for the first `n_digits` digits.
pub fn g_map_digits(s: &[u8], r: &[bool], n_digits: usize) -> Result<Vec<u8>> {
    if s.len() < n_digits {
        return Err(Error::pre(MODULE, "digit sequence shorter than n_digits"));
    }
    (0..n_digits)
        .map(|n| {
            let d = s[n];
            if d != 1 && d != 4 {
                return Err(Error::InvalidData(format!("digit {d} at position {n} is not 1 or 4")));
            }
            let idx = 2 * n + usize::from(d);
            let bit = r.get(idx).ok_or(Error::BitsExhausted { consumed: r.len() as u64 })?;
            Ok(d + u8::from(*bit))
        })
        .collect()
}

/// A bit stream for [`build_construction`] under which the kept child at
/// every node agrees with the digit map: at level `n` every `b_{u0}` equals
/// `R[2n+1]` and every `b_{u1}` equals `R[2n+4]`. The arrangement repeats bits
/// of `R` across the nodes of a level.
pub fn arrange_for_g_map(r: &[bool], depth: u32) -> Result<Vec<bool>> {
    let mut out = Vec::new();
    for n in 0..depth as usize {
        let b0 = *r.get(2 * n + 1).ok_or(Error::BitsExhausted { consumed: r.len() as u64 })?;
        let b1 = *r.get(2 * n + 4).ok_or(Error::BitsExhausted { consumed: r.len() as u64 })?;
        for _ in 0..1usize << n {
            out.push(b0);
            out.push(b1);
        }
    }
    Ok(out)
}

/// Interval of reals whose leading base-7 digits are `digits`.
pub fn digits_interval(digits: &[u8]) -> Result<Interval7> {
    if digits.len() > MAX_LEVEL as usize {
        return Err(Error::pre(MODULE, "too many digits"));
    }
    if let Some(d) = digits.iter().find(|&&d| d > 6) {
        return Err(Error::InvalidData(format!("{d} is not a base-7 digit")));
    }
    let lo = digits.iter().fold(0u64, |acc, &d| acc * 7 + u64::from(d));
    Ok(Interval7 {
        level: digits.len() as u32,
        lo,
        hi: lo + 1,
    })
}

/// `{1/n : 1 ≤ n ≤ n_max}`, largest first.
pub fn one_over_n_points(n_max: u64) -> Result<Vec<Rational>> {
    if n_max == 0 {
        return Err(Error::pre(MODULE, "n_max must be at least 1"));
    }
    Ok((1..=n_max).map(|n| Rational::new(1, i128::from(n))).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum SampleMode {
    /// Both endpoints of each interval.
    Endpoints,
    /// `per_interval` evenly spaced points including both endpoints (the
    /// midpoint alone when `per_interval` is 1).
    Grid { per_interval: u32 },
    /// `per_interval` pseudo-random points in each interval.
    Uniform { per_interval: u32, seed: u64 },
}

/// Finite sample of the union of `set`, as exact rationals.
pub fn sample_points(set: &IntervalSet, mode: SampleMode) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    match mode {
        SampleMode::Endpoints => {
            for iv in set.iter() {
                out.push(iv.lo_rational());
                out.push(iv.hi_rational());
            }
        }
        SampleMode::Grid { per_interval } => {
            if per_interval == 0 {
                return Err(Error::pre(MODULE, "per_interval must be at least 1"));
            }
            for iv in set.iter() {
                let (lo, hi) = (iv.lo_rational(), iv.hi_rational());
                if per_interval == 1 {
                    out.push((lo + hi) / 2);
                    continue;
                }
                let steps = i128::from(per_interval - 1);
                out.extend((0..=steps).map(|j| lo + (hi - lo) * Rational::new(j, steps)));
            }
        }
        SampleMode::Uniform { per_interval, seed } => {
            if per_interval == 0 {
                return Err(Error::pre(MODULE, "per_interval must be at least 1"));
            }
            const FINE: u32 = 20;
            let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
            for iv in set.iter() {
                let (lo, hi) = (iv.lo_rational(), iv.hi_rational());
                for _ in 0..per_interval {
                    let t = Rational::new(i128::from(rng.next_u64() >> (64 - FINE)), 1 << FINE);
                    out.push(lo + (hi - lo) * t);
                }
            }
        }
    }
    Ok(out)
}

/// Endpoints and midpoint of every interval.
pub fn endpoints_and_midpoints(set: &IntervalSet) -> Result<Vec<Rational>> {
    sample_points(set, SampleMode::Grid { per_interval: 3 })
}

/// Dyadic grid of `[0,1]` with spacing the largest power of two at most
/// `δ/2`: a δ-net of the unit interval.
pub fn unit_interval_grid(delta: f64) -> Result<Vec<f64>> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::pre(MODULE, format!("delta must be positive, got {delta}")));
    }
    let k = (-(delta / 2.0).log2()).ceil().max(0.0);
    if k > 26.0 {
        return Err(Error::CapExceeded {
            module: MODULE,
            what: "grid size",
            limit: 1 << 26,
            needed: u64::MAX,
        });
    }
    let n = 1u64 << k as u32;
    let h = (-k).exp2();
    Ok((0..=n).map(|i| i as f64 * h).collect())
}

/// Endpoints and midpoints of the depth-`d` intervals of `E₀`, where `d` is
/// the smallest depth with `7^{-d} ≤ δ`: a δ-net of `E₀`.
pub fn e0_net(delta: &Rational) -> Result<Vec<Rational>> {
    if *delta <= Rational::from_integer(0) {
        return Err(Error::pre(MODULE, "delta must be positive"));
    }
    let mut depth = 0;
    while Rational::new(1, i128::from(pow7(depth))) > *delta {
        depth += 1;
        if depth > 16 {
            return Err(Error::pre(MODULE, "delta too small for an explicit net"));
        }
    }
    endpoints_and_midpoints(&self_similar_e0(depth)?)
}
