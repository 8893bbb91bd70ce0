//! Metric spaces as distance oracles, plus dyadic δ-nets and their dense
//! enumerations.
//!
//! Every space implements [`MetricSpace`]. Distances have an associated type
//! so that exact spaces ([`ExactLine`], rationals) compare `ρ < δ` without
//! rounding; floating spaces use `f64`.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::Add;
use std::path::Path;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MODULE: &str = "metric";

/// Exact rational number used for seven-adic and `1/n` point sets.
pub type Rational = Ratio<i128>;

pub trait MetricSpace: Sync {
    type Point: Clone + Debug + PartialEq + Send + Sync;
    type Distance: Copy + PartialOrd + Debug + Add<Output = Self::Distance> + Send + Sync;

    fn distance(&self, a: &Self::Point, b: &Self::Point) -> Self::Distance;

    fn to_f64(&self, d: Self::Distance) -> f64;

    /// Reject points outside the space's universe.
    fn check_point(&self, _p: &Self::Point) -> Result<()> {
        Ok(())
    }

    /// A point halfway between `a` and `b`, where the space has one.
    fn midpoint(&self, _a: &Self::Point, _b: &Self::Point) -> Option<Self::Point> {
        None
    }

    /// Total order along a line, for one-dimensional spaces only. When this
    /// returns `Some`, `a ≤ b ≤ c` implies `ρ(a,c) = ρ(a,b) + ρ(b,c)`.
    fn line_order(&self, _a: &Self::Point, _b: &Self::Point) -> Option<Ordering> {
        None
    }

    fn is_line(&self) -> bool {
        false
    }

    fn descriptor(&self) -> String;
}

/// Checked distance between two points of `space`.
pub fn distance<M: MetricSpace>(space: &M, a: &M::Point, b: &M::Point) -> Result<M::Distance> {
    space.check_point(a)?;
    space.check_point(b)?;
    Ok(space.distance(a, b))
}

/// Largest pairwise distance; 0 for a singleton.
pub fn diameter<M: MetricSpace>(space: &M, points: &[M::Point]) -> Result<M::Distance> {
    let first = points.first().ok_or(Error::Empty {
        module: MODULE,
        what: "point set",
    })?;
    let mut best = space.distance(first, first);
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = space.distance(a, b);
            if d > best {
                best = d;
            }
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Spaces

/// `ℝⁿ` with the Euclidean norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Euclidean {
    pub dim: usize,
}

impl Euclidean {
    pub fn new(dim: usize) -> Self {
        Euclidean { dim }
    }
}

impl MetricSpace for Euclidean {
    type Point = Vec<f64>;
    type Distance = f64;

    fn distance(&self, a: &Vec<f64>, b: &Vec<f64>) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }

    fn to_f64(&self, d: f64) -> f64 {
        d
    }

    fn check_point(&self, p: &Vec<f64>) -> Result<()> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: p.len(),
            });
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidData(format!("non-finite coordinate in {p:?}")));
        }
        Ok(())
    }

    fn midpoint(&self, a: &Vec<f64>, b: &Vec<f64>) -> Option<Vec<f64>> {
        Some(a.iter().zip(b).map(|(x, y)| x + (y - x) / 2.0).collect())
    }

    fn line_order(&self, a: &Vec<f64>, b: &Vec<f64>) -> Option<Ordering> {
        (self.dim == 1).then(|| a[0].total_cmp(&b[0]))
    }

    fn is_line(&self) -> bool {
        self.dim == 1
    }

    fn descriptor(&self) -> String {
        format!("euclidean-{}", self.dim)
    }
}

/// The real line with `f64` points; cheaper than `Euclidean { dim: 1 }` for
/// large nets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealLine;

impl MetricSpace for RealLine {
    type Point = f64;
    type Distance = f64;

    fn distance(&self, a: &f64, b: &f64) -> f64 {
        (a - b).abs()
    }

    fn to_f64(&self, d: f64) -> f64 {
        d
    }

    fn check_point(&self, p: &f64) -> Result<()> {
        if p.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidData(format!("non-finite point {p}")))
        }
    }

    fn midpoint(&self, a: &f64, b: &f64) -> Option<f64> {
        Some(a + (b - a) / 2.0)
    }

    fn line_order(&self, a: &f64, b: &f64) -> Option<Ordering> {
        Some(a.total_cmp(b))
    }

    fn is_line(&self) -> bool {
        true
    }

    fn descriptor(&self) -> String {
        "real-line".into()
    }
}

/// The real line over exact rationals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactLine;

impl MetricSpace for ExactLine {
    type Point = Rational;
    type Distance = Rational;

    fn distance(&self, a: &Rational, b: &Rational) -> Rational {
        (a - b).abs()
    }

    fn to_f64(&self, d: Rational) -> f64 {
        d.to_f64().unwrap_or(f64::NAN)
    }

    fn midpoint(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        Some((a + b) / 2)
    }

    fn line_order(&self, a: &Rational, b: &Rational) -> Option<Ordering> {
        Some(a.cmp(b))
    }

    fn is_line(&self) -> bool {
        true
    }

    fn descriptor(&self) -> String {
        "exact-line".into()
    }
}

/// A finite space given by an explicit distance matrix; points are indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteMatrix {
    matrix: Vec<Vec<f64>>,
}

impl FiniteMatrix {
    /// Validates squareness, zero diagonal, symmetry and nonnegativity.
    /// The triangle inequality is left to [`check_metric_axioms`].
    pub fn new(matrix: Vec<Vec<f64>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::Empty {
                module: MODULE,
                what: "distance matrix",
            });
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidData(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v.is_nan() || v < 0.0 || v.is_infinite() {
                    return Err(Error::InvalidData(format!("entry ({i},{j}) = {v}")));
                }
                if i == j && v != 0.0 {
                    return Err(Error::InvalidData(format!("diagonal entry ({i},{i}) = {v}")));
                }
                if i != j && v == 0.0 {
                    return Err(Error::InvalidData(format!("distinct points {i},{j} at distance 0")));
                }
                if matrix[j][i] != v {
                    return Err(Error::InvalidData(format!("asymmetric entry ({i},{j})")));
                }
            }
        }
        Ok(FiniteMatrix { matrix })
    }

    pub fn len(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }

    pub fn points(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
}

impl MetricSpace for FiniteMatrix {
    type Point = usize;
    type Distance = f64;

    fn distance(&self, a: &usize, b: &usize) -> f64 {
        self.matrix[*a][*b]
    }

    fn to_f64(&self, d: f64) -> f64 {
        d
    }

    fn check_point(&self, p: &usize) -> Result<()> {
        if *p < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidData(format!(
                "point index {p} outside matrix of size {}",
                self.len()
            )))
        }
    }

    fn descriptor(&self) -> String {
        format!("matrix-{}", self.len())
    }
}

/// Binary sequences with `ρ(x, y) = 2^{-|lcp(x, y)|}`, on finite prefixes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSpace;

impl MetricSpace for SequenceSpace {
    type Point = Vec<bool>;
    type Distance = f64;

    fn distance(&self, a: &Vec<bool>, b: &Vec<bool>) -> f64 {
        if a == b {
            return 0.0;
        }
        let lcp = a.iter().zip(b).take_while(|(x, y)| x == y).count();
        (-(lcp as f64)).exp2()
    }

    fn to_f64(&self, d: f64) -> f64 {
        d
    }

    fn descriptor(&self) -> String {
        "sequence-space".into()
    }
}

/// Sampled report of the metric axioms.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct AxiomReport {
    pub pairs: usize,
    pub triples: usize,
    pub symmetry_violations: usize,
    pub identity_violations: usize,
    pub triangle_violations: usize,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.symmetry_violations == 0 && self.identity_violations == 0 && self.triangle_violations == 0
    }
}

/// Check symmetry and identity on every pair and the triangle inequality on
/// every triple of `points` (which should be duplicate-free).
pub fn check_metric_axioms<M: MetricSpace>(space: &M, points: &[M::Point], slack: f64) -> AxiomReport {
    let mut rep = AxiomReport::default();
    for (i, a) in points.iter().enumerate() {
        let zero = space.to_f64(space.distance(a, a));
        if zero != 0.0 {
            rep.identity_violations += 1;
        }
        for (j, b) in points.iter().enumerate().skip(i + 1) {
            rep.pairs += 1;
            let ab = space.distance(a, b);
            let ba = space.distance(b, a);
            if space.to_f64(ab) != space.to_f64(ba) {
                rep.symmetry_violations += 1;
            }
            if !(space.to_f64(ab) > 0.0) && a != b {
                rep.identity_violations += 1;
            }
            for c in points.iter().skip(j + 1) {
                rep.triples += 1;
                let bc = space.distance(b, c);
                let ac = space.distance(a, c);
                let (ab, bc, ac) = (space.to_f64(ab), space.to_f64(bc), space.to_f64(ac));
                if ac > ab + bc + slack || ab > ac + bc + slack || bc > ab + ac + slack {
                    rep.triangle_violations += 1;
                }
            }
        }
    }
    rep
}

// ---------------------------------------------------------------------------
// Dyadic nets

/// An axis-aligned box `[lo, hi]`; a closed interval when one-dimensional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Region {
    pub fn interval(lo: f64, hi: f64) -> Self {
        Region {
            lo: vec![lo],
            hi: vec![hi],
        }
    }

    pub fn unit_cube(dim: usize) -> Self {
        Region {
            lo: vec![0.0; dim],
            hi: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    fn validate(&self) -> Result<()> {
        if self.lo.is_empty() || self.lo.len() != self.hi.len() {
            return Err(Error::pre(MODULE, "region bounds must be nonempty and of equal length"));
        }
        if self
            .lo
            .iter()
            .zip(&self.hi)
            .any(|(l, h)| !l.is_finite() || !h.is_finite() || l > h)
        {
            return Err(Error::pre(MODULE, "region must be bounded with lo <= hi"));
        }
        Ok(())
    }
}

/// Dense set `D = {lo + (hi − lo)·q : q dyadic}` of a box. A codeword is the
/// concatenation of one chunk per coordinate; chunk `b₀b₁…b_m` encodes
/// `q = b₀.b₁…b_m` in binary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DyadicEnumeration {
    pub region: Region,
}

pub trait DenseEnumeration {
    type Point;

    /// Decode a codeword; `None` for strings of a length the enumeration
    /// does not use.
    fn decode(&self, code: &[bool]) -> Option<Self::Point>;

    fn descriptor(&self) -> String;
}

impl DenseEnumeration for DyadicEnumeration {
    type Point = Vec<f64>;

    fn decode(&self, code: &[bool]) -> Option<Vec<f64>> {
        let d = self.region.dim();
        if code.is_empty() || !code.len().is_multiple_of(d) {
            return None;
        }
        let chunk = code.len() / d;
        Some(
            code.chunks(chunk)
                .enumerate()
                .map(|(i, bits)| {
                    let q = bits_to_dyadic(bits);
                    self.region.lo[i] + (self.region.hi[i] - self.region.lo[i]) * q
                })
                .collect(),
        )
    }

    fn descriptor(&self) -> String {
        format!("dyadic{:?}..{:?}", self.region.lo, self.region.hi)
    }
}

/// `b₀.b₁b₂…` as a real number.
pub fn bits_to_dyadic(bits: &[bool]) -> f64 {
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| (-(i as f64)).exp2())
        .sum()
}

/// Binary codeword `b₀.b₁…b_level` of `index / 2^level`.
pub fn dyadic_code(index: u64, level: u32) -> Vec<bool> {
    (0..=level).rev().map(|k| index >> k & 1 == 1).collect()
}

/// Drop trailing zero bits, keeping at least the leading bit.
pub fn trim_code(mut code: Vec<bool>) -> Vec<bool> {
    while code.len() > 1 && !code[code.len() - 1] {
        code.pop();
    }
    code
}

/// A finite δ-net of a box, with the codeword of each net point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DyadicNet {
    pub region: Region,
    pub delta: f64,
    /// Grid spacing is `(hi − lo)·2^{-level}` along each axis.
    pub level: u32,
    pub points: Vec<Vec<f64>>,
    pub codes: Vec<Vec<bool>>,
}

impl DyadicNet {
    pub fn enumeration(&self) -> DyadicEnumeration {
        DyadicEnumeration {
            region: self.region.clone(),
        }
    }

    /// First coordinates, for one-dimensional nets.
    pub fn line_points(&self) -> Vec<f64> {
        self.points.iter().map(|p| p[0]).collect()
    }
}

/// Default cap on the number of net points.
pub const DEFAULT_NET_CAP: u64 = 1 << 22;

/// Dyadic grid that is a δ-net of `region`: every point of the region lies
/// strictly within δ of some grid point.
pub fn dyadic_net(region: &Region, delta: f64, cap: u64) -> Result<DyadicNet> {
    region.validate()?;
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::pre(MODULE, format!("delta must be positive, got {delta}")));
    }
    let d = region.dim();
    let widths: Vec<f64> = region.lo.iter().zip(&region.hi).map(|(l, h)| h - l).collect();
    let mut level = 0u32;
    loop {
        let spacing: Vec<f64> = widths.iter().map(|w| w * (-(level as f64)).exp2()).collect();
        let half_diag = spacing.iter().map(|h| h * h).sum::<f64>().sqrt() / 2.0;
        if half_diag < delta && spacing.iter().all(|&h| h <= delta) {
            break;
        }
        level += 1;
        if level > 62 {
            return Err(Error::CapExceeded {
                module: MODULE,
                what: "net level",
                limit: 62,
                needed: u64::from(level),
            });
        }
    }
    let side = (1u64 << level) + 1;
    let needed = (side as f64).powi(d as i32);
    if needed > cap as f64 {
        return Err(Error::CapExceeded {
            module: MODULE,
            what: "dyadic net size",
            limit: cap,
            needed: needed.min(u64::MAX as f64) as u64,
        });
    }

    // mixed-radix walk over the grid, last coordinate fastest
    let total = needed as u64;
    let mut points = Vec::with_capacity(total as usize);
    let mut codes = Vec::with_capacity(total as usize);
    let mut idx = vec![0u64; d];
    for _ in 0..total {
        let point: Vec<f64> = (0..d)
            .map(|i| {
                if idx[i] == side - 1 {
                    region.hi[i]
                } else {
                    region.lo[i] + widths[i] * (idx[i] as f64) * (-(level as f64)).exp2()
                }
            })
            .collect();
        points.push(point);
        codes.push(canonical_code(&idx, level));
        for i in (0..d).rev() {
            idx[i] += 1;
            if idx[i] < side {
                break;
            }
            idx[i] = 0;
        }
    }
    Ok(DyadicNet {
        region: region.clone(),
        delta,
        level,
        points,
        codes,
    })
}

/// Shortest codeword of the grid point with integer coordinates `idx` at
/// `level`: trailing zeros shared by all coordinates are dropped.
fn canonical_code(idx: &[u64], level: u32) -> Vec<bool> {
    let shift = idx
        .iter()
        .map(|&i| if i == 0 { level } else { i.trailing_zeros().min(level) })
        .min()
        .unwrap_or(0);
    let lvl = level - shift;
    idx.iter().flat_map(|&i| dyadic_code(i >> shift, lvl)).collect()
}

// ---------------------------------------------------------------------------
// Ingestion

/// Read a point cloud from CSV: one point per row, all rows with the same
/// number of columns. A non-numeric first row is treated as a header.
pub fn read_points_csv(path: impl AsRef<Path>) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let mut points = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let parsed: std::result::Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(p) => points.push(p),
            Err(_) if row == 0 => continue,
            Err(e) => return Err(Error::InvalidData(format!("row {}: {e}", row + 1))),
        }
    }
    validate_cloud(points)
}

/// Read a point cloud from a JSON array of arrays (or of numbers, for 1-D).
pub fn read_points_json(path: impl AsRef<Path>) -> Result<Vec<Vec<f64>>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Cloud {
        Nested(Vec<Vec<f64>>),
        Flat(Vec<f64>),
    }
    let text = std::fs::read_to_string(path)?;
    let cloud: Cloud = serde_json::from_str(&text)?;
    let points = match cloud {
        Cloud::Nested(p) => p,
        Cloud::Flat(p) => p.into_iter().map(|x| vec![x]).collect(),
    };
    validate_cloud(points)
}

fn validate_cloud(points: Vec<Vec<f64>>) -> Result<Vec<Vec<f64>>> {
    let first = points.first().ok_or(Error::Empty {
        module: MODULE,
        what: "point cloud",
    })?;
    let dim = first.len();
    for (i, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: p.len(),
            });
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidData(format!("point {i} has a NaN or infinite coordinate")));
        }
    }
    Ok(points)
}

/// Read an explicit metric from a JSON square matrix.
pub fn read_matrix_json(path: impl AsRef<Path>) -> Result<FiniteMatrix> {
    let text = std::fs::read_to_string(path)?;
    // serde_json rejects NaN literals outright, which is the behavior we want
    let matrix: Vec<Vec<f64>> = serde_json::from_str(&text)?;
    FiniteMatrix::new(matrix)
}

/// Convert an exact rational to `f64`.
pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn rational_is_zero(q: &Rational) -> bool {
    q.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_distances() {
        let e1 = Euclidean::new(1);
        assert_eq!(distance(&e1, &vec![0.0], &vec![1.0]).unwrap(), 1.0);
        let e2 = Euclidean::new(2);
        assert_eq!(distance(&e2, &vec![0.0, 0.0], &vec![3.0, 4.0]).unwrap(), 5.0);
        assert!(matches!(
            distance(&e2, &vec![0.0], &vec![3.0, 4.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn matrix_lookup_and_validation() {
        let m = FiniteMatrix::new(vec![
            vec![0.0, 0.5, 0.6],
            vec![0.5, 0.0, 0.3],
            vec![0.6, 0.3, 0.0],
        ])
        .unwrap();
        assert_eq!(distance(&m, &1, &2).unwrap(), 0.3);
        assert!(distance(&m, &1, &3).is_err());
        assert!(FiniteMatrix::new(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]).is_err());
        assert!(FiniteMatrix::new(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(FiniteMatrix::new(vec![vec![0.0, f64::NAN], vec![f64::NAN, 0.0]]).is_err());
    }

    #[test]
    fn sequence_space_distance() {
        let s = SequenceSpace;
        let a = vec![true, false, true];
        let b = vec![true, false, false];
        assert_eq!(s.distance(&a, &b), 0.25);
        assert_eq!(s.distance(&a, &a), 0.0);
        assert_eq!(s.distance(&vec![false], &vec![true]), 1.0);
    }

    #[test]
    fn diameters() {
        let l = RealLine;
        assert_eq!(diameter(&l, &[0.0, 0.5, 1.0]).unwrap(), 1.0);
        assert_eq!(diameter(&l, &[0.3]).unwrap(), 0.0);
        let sq = [vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
        let d = diameter(&Euclidean::new(2), &sq).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        assert!(diameter(&l, &[]).is_err());
    }

    #[test]
    fn exact_line_midpoint_is_exact() {
        let a = Rational::new(1, 7);
        let b = Rational::new(2, 7);
        assert_eq!(ExactLine.midpoint(&a, &b).unwrap(), Rational::new(3, 14));
        assert_eq!(ExactLine.distance(&b, &a), Rational::new(1, 7));
    }

    #[test]
    fn unit_interval_net() {
        let net = dyadic_net(&Region::interval(0.0, 1.0), 0.25, DEFAULT_NET_CAP).unwrap();
        assert_eq!(net.line_points(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        // codewords decode back to the net points
        let e = net.enumeration();
        for (p, c) in net.points.iter().zip(&net.codes) {
            assert_eq!(&e.decode(c).unwrap(), p);
        }
        assert_eq!(net.codes[0], vec![false]);
        assert_eq!(net.codes[2], vec![false, true]);
        assert_eq!(net.codes[4], vec![true]);
    }

    #[test]
    fn unit_square_net_is_small_and_covers() {
        let net = dyadic_net(&Region::unit_cube(2), 0.5, DEFAULT_NET_CAP).unwrap();
        assert!(net.points.len() <= 9);
        let e2 = Euclidean::new(2);
        for i in 0..=40 {
            for j in 0..=40 {
                let p = vec![i as f64 / 40.0, j as f64 / 40.0];
                let nearest = net
                    .points
                    .iter()
                    .map(|q| e2.distance(&p, q))
                    .fold(f64::INFINITY, f64::min);
                assert!(nearest < 0.5);
            }
        }
    }

    #[test]
    fn net_errors() {
        assert!(dyadic_net(&Region::interval(0.0, 1.0), 0.0, DEFAULT_NET_CAP).is_err());
        assert!(matches!(
            dyadic_net(&Region::unit_cube(3), 1e-3, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn axioms_on_small_sets() {
        let pts: Vec<Vec<f64>> = (0..12).map(|i| vec![(i * 7 % 12) as f64 / 3.0, (i % 5) as f64]).collect();
        assert!(check_metric_axioms(&Euclidean::new(2), &pts, 1e-12).holds());
        let seqs: Vec<Vec<bool>> = (0u32..16).map(|i| (0..4).map(|k| i >> k & 1 == 1).collect()).collect();
        assert!(check_metric_axioms(&SequenceSpace, &seqs, 0.0).holds());
    }

    #[test]
    fn csv_and_json_ingestion() {
        let dir = tempfile::tempdir().unwrap();
        let csv_path = dir.path().join("p.csv");
        std::fs::write(&csv_path, "x,y\n0,0\n1,0.5\n").unwrap();
        assert_eq!(read_points_csv(&csv_path).unwrap(), vec![vec![0.0, 0.0], vec![1.0, 0.5]]);
        std::fs::write(&csv_path, "0,0\n1,nan\n").unwrap();
        assert!(read_points_csv(&csv_path).is_err());
        std::fs::write(&csv_path, "0,0\n1\n").unwrap();
        assert!(read_points_csv(&csv_path).is_err());

        let json_path = dir.path().join("p.json");
        std::fs::write(&json_path, "[0.0, 0.5, 1.0]").unwrap();
        assert_eq!(read_points_json(&json_path).unwrap().len(), 3);
        std::fs::write(&json_path, "[[0.0, 1.0], [2.0, 3.0]]").unwrap();
        assert_eq!(read_points_json(&json_path).unwrap()[1], vec![2.0, 3.0]);

        let m_path = dir.path().join("m.json");
        std::fs::write(&m_path, "[[0, 0.3], [0.3, 0]]").unwrap();
        assert_eq!(read_matrix_json(&m_path).unwrap().len(), 2);
        std::fs::write(&m_path, "[[0, -0.3], [-0.3, 0]]").unwrap();
        assert!(read_matrix_json(&m_path).is_err());
    }
}
