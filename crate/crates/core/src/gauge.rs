//! Gauge functions, gauge families, the jump operator and precision families.
//!
//! A gauge family is a one-parameter family `s ↦ φ_s` of continuous,
//! nondecreasing functions vanishing only at 0, with `φ_s = o(φ_t)` as
//! `δ → 0⁺` whenever `s > t`. Everything here is evaluated in base-2 log
//! space: [`GaugeFamily::eval`] returns `log2 φ_s(δ)`, and scales are
//! carried as [`Scale`] (which stores `log2 δ`) so that scales like
//! `2^{-2^20}` remain usable.
//!
//! Axioms are checked numerically, never proved: [`validate_gauge_family`]
//! samples a caller-supplied δ-schedule and reports each invariant with the
//! witnessing sample on failure.

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::logspace::{Linear, Log2, NeumaierSum};

const MODULE: &str = "gauge";

/// A positive scale δ, stored as `log2 δ`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Scale(f64);

impl Scale {
    pub fn new(delta: f64) -> Result<Scale> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::pre(
                MODULE,
                format!("scale must be positive and finite, got {delta}"),
            ));
        }
        Ok(Scale(delta.log2()))
    }

    /// `δ = 2^{log2_delta}`; panics on NaN.
    pub fn from_log2(log2_delta: f64) -> Scale {
        assert!(!log2_delta.is_nan(), "NaN scale");
        Scale(log2_delta)
    }

    /// `δ = 2^{-bits}`.
    pub fn dyadic(bits: u64) -> Scale {
        Scale(-(bits as f64))
    }

    pub fn log2(self) -> f64 {
        self.0
    }

    /// Linear value of δ; may round to zero for very fine scales.
    pub fn delta(self) -> f64 {
        self.0.exp2()
    }

    pub fn scaled(self, factor: f64) -> Scale {
        Scale(self.0 + factor.log2())
    }
}

type CustomEval = Arc<dyn Fn(f64, Scale) -> f64 + Send + Sync>;

/// A one-parameter gauge family `s ↦ φ_s`.
///
/// Serializes to the descriptor grammar `theta | pow(c) | jump(<family>)`.
/// `Custom` families are for experiments and tests and do not round-trip.
#[derive(Clone)]
pub enum GaugeFamily {
    /// `θ_s(δ) = δ^s`
    Theta,
    /// `φ_s(δ) = δ^{c·s}`
    Pow(f64),
    /// `~φ_s(δ) = 2^{-1/φ_s(δ)}`
    Jump(Box<GaugeFamily>),
    Custom {
        name: String,
        /// `(s, δ) ↦ log2 φ_s(δ)`
        log2_eval: CustomEval,
    },
}

impl fmt::Debug for GaugeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl PartialEq for GaugeFamily {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor() == other.descriptor()
    }
}

/// The canonical family `θ_s(δ) = δ^s`.
pub fn canonical() -> GaugeFamily {
    GaugeFamily::Theta
}

/// The jump `~φ_s(δ) = 2^{-1/φ_s(δ)}` of `family`.
pub fn jump(family: &GaugeFamily) -> GaugeFamily {
    GaugeFamily::Jump(Box::new(family.clone()))
}

impl GaugeFamily {
    pub fn custom(
        name: impl Into<String>,
        log2_eval: impl Fn(f64, Scale) -> f64 + Send + Sync + 'static,
    ) -> GaugeFamily {
        GaugeFamily::Custom {
            name: name.into(),
            log2_eval: Arc::new(log2_eval),
        }
    }

    pub fn jump(&self) -> GaugeFamily {
        jump(self)
    }

    /// `log2 φ_s(δ)`. A result of `-inf` means the value is positive but
    /// below anything an `f64` exponent can hold (saturated).
    pub fn eval(&self, s: f64, scale: Scale) -> Result<Log2> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::pre(
                MODULE,
                format!("gauge parameter must be in (0, inf), got {s}"),
            ));
        }
        Ok(Log2(self.eval_unchecked(s, scale)))
    }

    /// Convenience wrapper over [`eval`](Self::eval) taking δ directly.
    pub fn eval_delta(&self, s: f64, delta: f64) -> Result<Log2> {
        self.eval(s, Scale::new(delta)?)
    }

    pub(crate) fn eval_unchecked(&self, s: f64, scale: Scale) -> f64 {
        match self {
            GaugeFamily::Theta => s * scale.log2(),
            GaugeFamily::Pow(c) => c * s * scale.log2(),
            GaugeFamily::Jump(inner) => {
                let l = inner.eval_unchecked(s, scale);
                // log2 2^{-1/φ} = -1/φ = -2^{-log2 φ}
                -(-l).exp2()
            }
            GaugeFamily::Custom { log2_eval, .. } => log2_eval(s, scale),
        }
    }

    pub fn member(&self, s: f64) -> GaugeFunction<'_> {
        GaugeFunction { family: self, s }
    }

    pub fn descriptor(&self) -> String {
        match self {
            GaugeFamily::Theta => "theta".to_string(),
            GaugeFamily::Pow(c) => format!("pow({c})"),
            GaugeFamily::Jump(inner) => format!("jump({})", inner.descriptor()),
            GaugeFamily::Custom { name, .. } => format!("custom:{name}"),
        }
    }

    /// Parse `theta`, `pow(c)` or `jump(<family>)`.
    pub fn parse(text: &str) -> Result<GaugeFamily> {
        let mut p = DescriptorParser {
            src: text,
            pos: 0,
        };
        let family = p.family()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.error("trailing input"));
        }
        Ok(family)
    }

    /// Number of nested jumps.
    pub fn jump_depth(&self) -> usize {
        match self {
            GaugeFamily::Jump(inner) => 1 + inner.jump_depth(),
            _ => 0,
        }
    }
}

impl std::str::FromStr for GaugeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GaugeFamily::parse(s)
    }
}

impl Serialize for GaugeFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.descriptor())
    }
}

impl<'de> Deserialize<'de> for GaugeFamily {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        GaugeFamily::parse(&text).map_err(serde::de::Error::custom)
    }
}

struct DescriptorParser<'a> {
    src: &'a str,
    pos: usize,
}

impl DescriptorParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!(
            "gauge descriptor {:?}: {what} at byte {}",
            self.src, self.pos
        ))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {token:?}")))
        }
    }

    fn family(&mut self) -> Result<GaugeFamily> {
        if self.eat("theta") {
            Ok(GaugeFamily::Theta)
        } else if self.eat("jump") {
            self.expect("(")?;
            let inner = self.family()?;
            self.expect(")")?;
            Ok(GaugeFamily::Jump(Box::new(inner)))
        } else if self.eat("pow") {
            self.expect("(")?;
            self.skip_ws();
            let rest = &self.src[self.pos..];
            let end = rest.find(')').ok_or_else(|| self.error("unclosed pow("))?;
            let c: f64 = rest[..end]
                .trim()
                .parse()
                .map_err(|_| self.error("pow exponent is not a number"))?;
            if !(c > 0.0) || !c.is_finite() {
                return Err(self.error("pow exponent must be positive"));
            }
            self.pos += end;
            self.expect(")")?;
            Ok(GaugeFamily::Pow(c))
        } else {
            Err(self.error("expected theta, pow(c) or jump(...)"))
        }
    }
}

/// One member `φ_s` of a family.
#[derive(Debug, Clone, Copy)]
pub struct GaugeFunction<'a> {
    pub family: &'a GaugeFamily,
    pub s: f64,
}

impl GaugeFunction<'_> {
    pub fn log2_at(&self, scale: Scale) -> Result<Log2> {
        self.family.eval(self.s, scale)
    }

    /// Linear value, with underflow flagged rather than silently zero.
    pub fn value(&self, delta: f64) -> Result<Linear> {
        Ok(self.family.eval_delta(self.s, delta)?.linear())
    }

    pub fn descriptor(&self) -> String {
        format!("{}[s={}]", self.family.descriptor(), self.s)
    }
}

// ---------------------------------------------------------------------------
// Precision families

/// One value `α_s(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionValue {
    pub log2: f64,
    /// Present when the value is an exactly representable rational.
    pub exact: Option<Ratio<i128>>,
}

impl PrecisionValue {
    pub fn scale(&self) -> Scale {
        Scale::from_log2(self.log2)
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }
}

type CustomAlpha = Arc<dyn Fn(f64, u32) -> f64 + Send + Sync>;

/// A family of scale sequences `α_s : ℕ → ℚ⁺`.
#[derive(Clone)]
pub enum PrecisionFamily {
    /// `α_s(r) = 2^{-sr}`
    Canonical,
    /// `α_s(r) = 1/(r+1)`, independent of `s`. Its cross sums diverge against θ.
    Harmonic,
    Custom {
        name: String,
        /// `(s, r) ↦ log2 α_s(r)`
        log2_alpha: CustomAlpha,
    },
}

impl fmt::Debug for PrecisionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

pub fn canonical_precision() -> PrecisionFamily {
    PrecisionFamily::Canonical
}

impl PrecisionFamily {
    pub fn descriptor(&self) -> String {
        match self {
            PrecisionFamily::Canonical => "canonical(2^-sr)".into(),
            PrecisionFamily::Harmonic => "harmonic(1/(r+1))".into(),
            PrecisionFamily::Custom { name, .. } => format!("custom:{name}"),
        }
    }

    pub fn alpha(&self, s: f64, r: u32) -> Result<PrecisionValue> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::pre(
                MODULE,
                format!("precision parameter must be in (0, inf), got {s}"),
            ));
        }
        Ok(match self {
            PrecisionFamily::Canonical => {
                let exponent = s * f64::from(r);
                let exact = (exponent.fract() == 0.0 && exponent <= 126.0)
                    .then(|| Ratio::new(1i128, 1i128 << (exponent as u32)));
                PrecisionValue {
                    log2: -exponent,
                    exact,
                }
            }
            PrecisionFamily::Harmonic => PrecisionValue {
                log2: -(f64::from(r) + 1.0).log2(),
                exact: Some(Ratio::new(1, i128::from(r) + 1)),
            },
            PrecisionFamily::Custom { log2_alpha, .. } => PrecisionValue {
                log2: log2_alpha(s, r),
                exact: None,
            },
        })
    }
}

// ---------------------------------------------------------------------------
// Validation

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Continuity held from one side only.
    OneSided(Side),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantCheck {
    pub name: String,
    pub status: CheckStatus,
    /// The sample that broke the invariant, when it failed.
    pub witness: Option<String>,
    pub detail: String,
}

impl InvariantCheck {
    fn new(name: &str, ok: bool, witness: Option<String>, detail: String) -> Self {
        InvariantCheck {
            name: name.to_string(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            witness: if ok { None } else { witness },
            detail,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Thresholds used by the sampled "vanishes / o(·)" surrogates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationConfig {
    /// A sequence "tends to 0" when its tail is strictly decreasing and its
    /// last sample is below `2^{vanish_log2}`.
    pub vanish_log2: f64,
    /// Continuity probes at relative offsets `h = 2^{-1} .. 2^{-continuity_steps}`.
    pub continuity_steps: u32,
    /// Absolute `|Δ log2 φ|` regarded as zero for the continuity probe.
    pub continuity_tol: f64,
    /// Largest increment of a cross sum that still counts as converged.
    pub cauchy_tol: f64,
    /// Ratio constants `C` above `2^{max_ratio_log2}` count as unbounded.
    pub max_ratio_log2: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            vanish_log2: -8.0,
            continuity_steps: 30,
            continuity_tol: 1e-9,
            cauchy_tol: 1e-9,
            max_ratio_log2: 64.0,
        }
    }
}

/// Partial-sum summary for one `(s, t)` pair of a precision-family check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossSum {
    pub s: f64,
    pub t: f64,
    pub r_max: u32,
    pub partial_sum: f64,
    pub last_increment: f64,
    /// Geometric tail bound when the terms contract at the end of the prefix.
    pub tail_bound: Option<f64>,
    pub cauchy: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatioBound {
    pub s: f64,
    /// `log2 max_r φ_s(α_s(r)) / φ_s(α_s(r+1))`
    pub log2_c: f64,
    /// Empirical decay exponent: `α_s(r_max) = 2^{-c·r_max}`.
    pub decay_rate: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub subject: String,
    pub s_grid: Vec<f64>,
    pub log2_schedule: Vec<f64>,
    pub config: ValidationConfig,
    pub checks: Vec<InvariantCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cross_sums: Vec<CrossSum>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ratio_bounds: Vec<RatioBound>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(InvariantCheck::passed)
    }

    pub fn check(&self, name: &str) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InvariantCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// `xs` tends to 0 on a descending schedule: strictly decreasing over its
/// second half, last value below the threshold. Works on log2 values.
fn tends_to_zero(log2s: &[f64], threshold: f64) -> std::result::Result<(), String> {
    let n = log2s.len();
    let tail = &log2s[n / 2..];
    for (i, w) in tail.windows(2).enumerate() {
        let decreasing = w[1] < w[0] || (w[1] == f64::NEG_INFINITY && w[0] == f64::NEG_INFINITY);
        if !decreasing {
            return Err(format!(
                "not decreasing at sample {}: log2 {} -> {}",
                n / 2 + i + 1,
                w[0],
                w[1]
            ));
        }
    }
    let last = log2s[n - 1];
    if last.is_nan() || last >= threshold {
        return Err(format!("last sample log2 {last} not below {threshold}"));
    }
    Ok(())
}

fn check_schedule(schedule: &[f64]) -> Result<Vec<Scale>> {
    if schedule.len() < 2 {
        return Err(Error::pre(MODULE, "schedule needs at least two scales"));
    }
    let scales = schedule
        .iter()
        .map(|&d| Scale::new(d))
        .collect::<Result<Vec<_>>>()?;
    if scales.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::pre(MODULE, "schedule must be strictly decreasing"));
    }
    Ok(scales)
}

/// Sampled check of the gauge-function and gauge-family axioms.
///
/// `delta_schedule` must be strictly decreasing; `s_grid` nonempty and
/// strictly increasing. Failures are reported as data.
pub fn validate_gauge_family(
    family: &GaugeFamily,
    s_grid: &[f64],
    delta_schedule: &[f64],
    config: &ValidationConfig,
) -> Result<ValidationReport> {
    if s_grid.is_empty() {
        return Err(Error::pre(MODULE, "s grid is empty"));
    }
    if s_grid.windows(2).any(|w| w[1] <= w[0]) || s_grid.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::pre(MODULE, "s grid must be positive and ascending"));
    }
    let scales = check_schedule(delta_schedule)?;

    let table: Vec<Vec<f64>> = s_grid
        .iter()
        .map(|&s| scales.iter().map(|&d| family.eval_unchecked(s, d)).collect())
        .collect();

    let mut checks = Vec::new();

    // positivity: log2 must be a real number
    let bad = s_grid.iter().zip(&table).find_map(|(&s, row)| {
        row.iter()
            .zip(delta_schedule)
            .find(|(l, _)| !l.is_finite())
            .map(|(l, d)| format!("s={s}, delta={d}: log2 value {l}"))
    });
    checks.push(InvariantCheck::new(
        "positive",
        bad.is_none(),
        bad,
        "log2 φ_s(δ) finite on every sample".into(),
    ));

    // vanishes only at 0
    let bad = s_grid.iter().zip(&table).find_map(|(&s, row)| {
        tends_to_zero(row, config.vanish_log2)
            .err()
            .map(|e| format!("s={s}: {e}"))
    });
    checks.push(InvariantCheck::new(
        "vanishes_at_zero",
        bad.is_none(),
        bad,
        format!(
            "tail strictly decreasing, last sample below 2^{}",
            config.vanish_log2
        ),
    ));

    // nondecreasing in δ
    let bad = s_grid.iter().zip(&table).find_map(|(&s, row)| {
        row.windows(2)
            .zip(delta_schedule.windows(2))
            .find(|(v, _)| v[1] > v[0])
            .map(|(v, d)| {
                format!(
                    "s={s}: φ({}) = 2^{} > φ({}) = 2^{}",
                    d[1], v[1], d[0], v[0]
                )
            })
    });
    checks.push(InvariantCheck::new(
        "nondecreasing",
        bad.is_none(),
        bad,
        "δ₁ ≤ δ₂ ⇒ φ(δ₁) ≤ φ(δ₂) on consecutive samples".into(),
    ));

    checks.push(continuity_check(family, s_grid, &scales, config));

    // ordering: φ_s = o(φ_t) for s > t
    let mut bad = None;
    'pairs: for (j, &s) in s_grid.iter().enumerate() {
        for (i, &t) in s_grid.iter().enumerate().take(j) {
            let ratio: Vec<f64> = table[j]
                .iter()
                .zip(&table[i])
                .map(|(a, b)| a - b)
                .collect();
            if let Err(e) = tends_to_zero(&ratio, config.vanish_log2) {
                bad = Some(format!("φ_{s}/φ_{t}: {e}"));
                break 'pairs;
            }
        }
    }
    checks.push(InvariantCheck::new(
        "ordering",
        bad.is_none(),
        bad,
        "φ_s/φ_t tends to 0 for every s > t in the grid".into(),
    ));

    Ok(ValidationReport {
        subject: family.descriptor(),
        s_grid: s_grid.to_vec(),
        log2_schedule: scales.iter().map(|s| s.log2()).collect(),
        config: config.clone(),
        checks,
        cross_sums: Vec::new(),
        ratio_bounds: Vec::new(),
    })
}

/// Continuity surrogate: along `h = 2^{-k}`, `|log2 φ(δ(1±h)) − log2 φ(δ)|`
/// must shrink to the tolerance or by a factor `2^{-steps/2}`.
fn continuity_check(
    family: &GaugeFamily,
    s_grid: &[f64],
    scales: &[Scale],
    config: &ValidationConfig,
) -> InvariantCheck {
    let side_ok = |s: f64, d: Scale, sign: f64| -> std::result::Result<(), String> {
        let base = family.eval_unchecked(s, d);
        let diffs: Vec<f64> = (1..=config.continuity_steps)
            .map(|k| {
                let h = (-(k as f64)).exp2();
                let probe = Scale::from_log2(d.log2() + (1.0 + sign * h).log2());
                (family.eval_unchecked(s, probe) - base).abs()
            })
            .collect();
        let first = diffs[0];
        let last = *diffs.last().unwrap();
        if last.is_nan() || first.is_nan() {
            return Err("saturated".into());
        }
        let shrink = (-(config.continuity_steps as f64) / 2.0).exp2();
        if last <= config.continuity_tol || last <= first * shrink {
            Ok(())
        } else {
            Err(format!("difference stalls at {last} (first {first})"))
        }
    };

    let mut worst: Option<(CheckStatus, String)> = None;
    for &s in s_grid {
        for &d in scales {
            let left = side_ok(s, d, -1.0);
            let right = side_ok(s, d, 1.0);
            let (status, why) = match (left, right) {
                (Ok(()), Ok(())) => continue,
                (Ok(()), Err(e)) => (CheckStatus::OneSided(Side::Left), e),
                (Err(e), Ok(())) => (CheckStatus::OneSided(Side::Right), e),
                (Err(e), Err(_)) => (CheckStatus::Fail, e),
            };
            let witness = format!("s={s}, delta=2^{}: {why}", d.log2());
            let replace = match &worst {
                None => true,
                Some((CheckStatus::Fail, _)) => false,
                Some(_) => status == CheckStatus::Fail,
            };
            if replace {
                worst = Some((status, witness));
            }
        }
    }
    let detail = format!(
        "two-sided probes h = 2^-1..2^-{}, tolerance {}",
        config.continuity_steps, config.continuity_tol
    );
    match worst {
        None => InvariantCheck::new("continuity", true, None, detail),
        Some((status, witness)) => InvariantCheck {
            name: "continuity".into(),
            status,
            witness: Some(witness),
            detail,
        },
    }
}

/// Sampled check of the precision-family conditions for each `(s, t)` pair.
pub fn validate_precision_family(
    alpha: &PrecisionFamily,
    family: &GaugeFamily,
    pairs: &[(f64, f64)],
    r_max: u32,
    config: &ValidationConfig,
) -> Result<ValidationReport> {
    if r_max < 8 {
        return Err(Error::pre(MODULE, format!("r_max must be >= 8, got {r_max}")));
    }
    if pairs.is_empty() {
        return Err(Error::pre(MODULE, "no (s, t) pairs given"));
    }
    if let Some(&(s, t)) = pairs.iter().find(|(s, t)| !(s < t) || !(*s > 0.0)) {
        return Err(Error::pre(MODULE, format!("pair ({s}, {t}) needs 0 < s < t")));
    }

    let mut s_values: Vec<f64> = pairs.iter().flat_map(|&(s, t)| [s, t]).collect();
    s_values.sort_by(f64::total_cmp);
    s_values.dedup();

    let mut checks = Vec::new();
    let mut ratio_bounds = Vec::new();
    for &s in &s_values {
        let alphas = (0..=r_max)
            .map(|r| alpha.alpha(s, r))
            .collect::<Result<Vec<_>>>()?;
        let log2s: Vec<f64> = alphas.iter().map(|a| a.log2).collect();

        let vanish = tends_to_zero(&log2s, config.vanish_log2);
        let strictly = log2s.windows(2).all(|w| w[1] < w[0]);
        let decay_rate = -log2s[r_max as usize] / f64::from(r_max);
        checks.push(InvariantCheck::new(
            &format!("vanishing[s={s}]"),
            vanish.is_ok() && strictly,
            vanish.err().or(Some("not strictly decreasing".into())),
            format!("alpha_s(r) < 2^(-{decay_rate:.4} r) at r_max"),
        ));

        let gauge: Vec<f64> = alphas
            .iter()
            .map(|a| family.eval_unchecked(s, a.scale()))
            .collect();
        let log2_c = gauge
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(f64::NEG_INFINITY, f64::max);
        checks.push(InvariantCheck::new(
            &format!("ratio_bound[s={s}]"),
            log2_c.is_finite() && log2_c <= config.max_ratio_log2,
            Some(format!("log2 C = {log2_c}")),
            format!("phi_s(alpha(r)) <= C phi_s(alpha(r+1)) with log2 C = {log2_c}"),
        ));
        ratio_bounds.push(RatioBound {
            s,
            log2_c,
            decay_rate,
        });
    }

    let mut cross_sums = Vec::new();
    for &(s, t) in pairs {
        let terms: Vec<f64> = (0..=r_max)
            .map(|r| {
                let a = alpha.alpha(s, r)?.scale();
                Ok((family.eval_unchecked(t, a) - family.eval_unchecked(s, a)).exp2())
            })
            .collect::<Result<_>>()?;
        let partial: NeumaierSum = terms.iter().copied().collect();
        let last = terms[terms.len() - 1];
        let prev = terms[terms.len() - 2];
        let q = last / prev;
        let tail_bound = (q < 1.0 && q.is_finite()).then(|| last * q / (1.0 - q));
        let cauchy = last.is_finite() && last < config.cauchy_tol;
        checks.push(InvariantCheck::new(
            &format!("cross_convergence[s={s},t={t}]"),
            cauchy,
            Some(format!(
                "non-Cauchy: increment {last} at r={r_max} exceeds {}",
                config.cauchy_tol
            )),
            format!("partial sum {} over r <= {r_max}", partial.total()),
        ));
        cross_sums.push(CrossSum {
            s,
            t,
            r_max,
            partial_sum: partial.total(),
            last_increment: last,
            tail_bound,
            cauchy,
        });
    }

    Ok(ValidationReport {
        subject: format!("{} vs {}", alpha.descriptor(), family.descriptor()),
        s_grid: s_values,
        log2_schedule: Vec::new(),
        config: config.clone(),
        checks,
        cross_sums,
        ratio_bounds,
    })
}

/// Smallness of the jump: `~φ_s(δ)/φ_s(δ)` tends to 0 along the
/// (descending) schedule.
pub fn check_jump_smallness(
    family: &GaugeFamily,
    s: f64,
    delta_schedule: &[f64],
    config: &ValidationConfig,
) -> Result<InvariantCheck> {
    let scales = check_schedule(delta_schedule)?;
    let jumped = family.jump();
    let ratio: Vec<f64> = scales
        .iter()
        .map(|&d| jumped.eval_unchecked(s, d) - family.eval_unchecked(s, d))
        .collect();
    let res = tends_to_zero(&ratio, config.vanish_log2);
    Ok(InvariantCheck::new(
        "jump_smallness",
        res.is_ok(),
        res.err(),
        format!("~φ_{s}/φ_{s} tends to 0"),
    ))
}

/// Doubling hypothesis `φ_t(2δ) = O(φ_s(δ))` for `s < t`, sampled as
/// `φ_t(2δ)/φ_s(δ)` tending to 0.
pub fn check_doubling(
    family: &GaugeFamily,
    s: f64,
    t: f64,
    delta_schedule: &[f64],
    config: &ValidationConfig,
) -> Result<InvariantCheck> {
    if !(s < t) {
        return Err(Error::pre(MODULE, "doubling check needs s < t"));
    }
    let scales = check_schedule(delta_schedule)?;
    let ratio: Vec<f64> = scales
        .iter()
        .map(|&d| family.eval_unchecked(t, d.scaled(2.0)) - family.eval_unchecked(s, d))
        .collect();
    let res = tends_to_zero(&ratio, config.vanish_log2);
    Ok(InvariantCheck::new(
        "doubling",
        res.is_ok(),
        res.err(),
        format!("φ_{t}(2δ)/φ_{s}(δ) tends to 0"),
    ))
}

/// Both sides of `log2(2^K · ~φ_s(δ)) = (K·φ_s(δ) − 1)/φ_s(δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpIdentity {
    /// `K + log2 ~φ_s(δ)`, evaluated through the jump family.
    pub lhs: f64,
    /// `(K·φ_s(δ) − 1)·φ_s(δ)^{-1}`, evaluated from `φ_s(δ)` directly.
    pub rhs: f64,
    /// `|lhs − rhs|` relative to the operand magnitude `max(K, 1/φ_s(δ))`.
    pub relative_error: f64,
}

/// Evaluate the jump exponent identity for complexity `k ≥ 0`.
pub fn jump_log_identity(family: &GaugeFamily, k: f64, s: f64, scale: Scale) -> Result<JumpIdentity> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(Error::pre(MODULE, format!("complexity must be finite and nonnegative, got {k}")));
    }
    let lhs = k + family.jump().eval(s, scale)?.0;
    let x = family.eval(s, scale)?.0;
    let phi = x.exp2();
    let inv = (-x).exp2();
    if phi == 0.0 || inv.is_infinite() {
        return Err(Error::pre(MODULE, "gauge value outside the linear range of f64"));
    }
    let rhs = (k * phi - 1.0) * inv;
    let magnitude = k.max(inv);
    Ok(JumpIdentity {
        lhs,
        rhs,
        relative_error: (lhs - rhs).abs() / magnitude,
    })
}

/// Geometric schedule `base^{-1}, …, base^{-count}`.
pub fn geometric_schedule(base: f64, count: u32) -> Vec<f64> {
    (1..=count).map(|k| base.powi(-(k as i32))).collect()
}
