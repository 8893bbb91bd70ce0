//! Batch front end: resolve a run configuration, dispatch one command, write
//! one JSON report and optionally a plot-ready CSV table.
//!
//! Exit status is 0 on success, 1 when a computation fails (or a check run
//! by the command does not pass) and 2 on a configuration error. Nothing is
//! written when the configuration is rejected.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::algodim::{
    complexity_profile_of_point, dyadic_depth_schedule, format_delta, gauged_dim_from_profile, jump_characterization,
    ratio_dimension, ComplexityProfile, ExpansionPoint, JumpCharacterization, Synthetic,
};
use crate::constructions::{
    build_construction, e0_net, endpoints_and_midpoints, one_over_n_points, self_similar_e0, unit_interval_grid,
    BitSource, IntervalSet,
};
use crate::covering::{
    brute_force_covering_number, covering_number, covering_profile, packing_number, Centers, CoverOptions,
    CoveringProfile, LogProfile, Mode, ProfileOptions,
};
use crate::dimension::{loglog_slope, minkowski_dimension, DimensionEstimate, EstimatorConfig, Kind, Window};
use crate::error::{Error, Result};
use crate::gauge::{
    validate_gauge_family, validate_precision_family, GaugeFamily, PrecisionFamily, ValidationConfig,
    ValidationReport,
};
use crate::hyperspace::{verify_hyperspace_minkowski, VerificationReport, VerifyConfig};
use crate::metric::{
    read_matrix_json, read_points_csv, read_points_json, Euclidean, ExactLine, FiniteMatrix, MetricSpace, Rational,
    RealLine,
};

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "gaugedim", version, about = "Gauged Minkowski dimensions of sets, hyperspaces and points")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check gauge-family axioms and precision-family cross sums.
    GaugeValidate(RunConfig),
    /// Covering profile and gauged Minkowski dimension of a point cloud.
    DimEstimate(RunConfig),
    /// Compare dim of a set with the jump-gauged dim of its hyperspace.
    HyperVerify(RunConfig),
    /// Build the seven-adic construction, E0 or the 1/n set.
    Construct(RunConfig),
    /// Complexity profile and gauged algorithmic dimension of a point.
    Algodim(RunConfig),
    /// Exact covering and packing numbers against exhaustive enumeration.
    OracleSuite(RunConfig),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::GaugeValidate(_) => "gauge-validate",
            Command::DimEstimate(_) => "dim-estimate",
            Command::HyperVerify(_) => "hyper-verify",
            Command::Construct(_) => "construct",
            Command::Algodim(_) => "algodim",
            Command::OracleSuite(_) => "oracle-suite",
        }
    }

    fn config(&self) -> &RunConfig {
        match self {
            Command::GaugeValidate(c)
            | Command::DimEstimate(c)
            | Command::HyperVerify(c)
            | Command::Construct(c)
            | Command::Algodim(c)
            | Command::OracleSuite(c) => c,
        }
    }
}

/// Every setting of every command. Flags and TOML keys share names; flags
/// win over the file. Settings a command does not use are rejected.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct RunConfig {
    /// TOML file with default settings.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Report path (JSON).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    /// Plot-ready CSV table path.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Gauge family: `theta`, `pow(c)` or `jump(...)`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gauge: Option<String>,
    /// `lower` or `upper`; for `construct`: `cantor7`, `e0` or `one-over-n`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// `geo:base,count` (scales base^-1 .. base^-count) or an explicit list.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule: Option<String>,
    /// `bisection` or `loglog`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    /// `exact` or `greedy`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// Point cloud, CSV or JSON. One-column CSVs with `p/q` entries are read exactly.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<PathBuf>,
    /// Distance matrix, JSON.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<PathBuf>,
    /// `interval01` or `e0`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub net_kind: Option<String>,
    /// Largest accepted set/hyperspace gap.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_min: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_max: Option<f64>,
    /// Bisection bracket width.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bisection_tol: Option<f64>,
    /// Number of finest scales used by the estimators.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    /// ASCII file of `0`/`1` characters used instead of a seeded bit stream.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bits: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u64>,
    /// Candidate s values for gauge validation, comma separated.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_grid: Option<String>,
    /// `canonical` or `harmonic`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<String>,
    /// `(s, t)` pairs as `s:t`, comma separated.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_max: Option<u32>,
    /// `p/q`, `seeded`, `seeded:N` or `bits:0101...`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    /// `const(c)`, `linear(a)`, `alt(a,b)` or `exp(a)`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub synthetic: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instances: Option<u32>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_candidates: Option<usize>,
}

/// The JSON report written by every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Artifact<T> {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    /// Resolved configuration, defaults included.
    pub config: RunConfig,
    pub result: T,
}

/// Read any report back, checking the schema version.
pub fn read_artifact(path: impl AsRef<Path>) -> Result<Artifact<Value>> {
    let text = std::fs::read_to_string(path)?;
    let artifact: Artifact<Value> = serde_json::from_str(&text)?;
    if artifact.schema != SCHEMA {
        return Err(Error::InvalidData(format!(
            "report schema {} is not supported (expected {SCHEMA})",
            artifact.schema
        )));
    }
    Ok(artifact)
}

fn config_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn to_object(config: &RunConfig) -> Map<String, Value> {
    match serde_json::to_value(config) {
        Ok(Value::Object(map)) => map,
        _ => Map::new(),
    }
}

fn from_object(map: Map<String, Value>) -> Result<RunConfig> {
    serde_json::from_value(Value::Object(map)).map_err(|e| config_error(format!("config: {e}")))
}

/// Settings of `command` beyond `out`, `table` and `seed`, with defaults.
fn defaults(command: &str) -> (&'static [&'static str], RunConfig) {
    let s = |v: &str| Some(v.to_string());
    match command {
        "gauge-validate" => (
            &["gauge", "schedule", "s-grid", "precision", "pairs", "r-max"],
            RunConfig {
                gauge: s("theta"),
                schedule: s("geo:2,40"),
                s_grid: s("0.5,1,2,4"),
                precision: s("canonical"),
                pairs: s("1:2"),
                r_max: Some(40),
                ..RunConfig::default()
            },
        ),
        "dim-estimate" => (
            &[
                "gauge", "kind", "schedule", "method", "mode", "points", "matrix", "s-min", "s-max", "bisection-tol",
                "window",
            ],
            RunConfig {
                gauge: s("theta"),
                kind: s("upper"),
                schedule: s("geo:2,10"),
                method: s("bisection"),
                mode: s("exact"),
                ..RunConfig::default()
            },
        ),
        "hyper-verify" => (
            &["gauge", "kind", "schedule", "net-kind", "tolerance", "s-min", "s-max", "bisection-tol", "window"],
            RunConfig {
                gauge: s("theta"),
                kind: s("upper"),
                net_kind: s("interval01"),
                tolerance: Some(0.1),
                ..RunConfig::default()
            },
        ),
        "construct" => (
            &["kind", "depth", "bits", "n-max"],
            RunConfig {
                kind: s("cantor7"),
                depth: Some(6),
                ..RunConfig::default()
            },
        ),
        "algodim" => (
            &["gauge", "kind", "depth", "point", "synthetic", "s-min", "s-max", "bisection-tol", "window"],
            RunConfig {
                gauge: s("theta"),
                kind: s("upper"),
                depth: Some(20),
                ..RunConfig::default()
            },
        ),
        "oracle-suite" => (
            &["instances", "max-candidates"],
            RunConfig {
                instances: Some(500),
                max_candidates: Some(12),
                ..RunConfig::default()
            },
        ),
        _ => (&[], RunConfig::default()),
    }
}

/// Merge flags over the optional TOML file over the command defaults.
pub fn resolve(command: &Command) -> Result<RunConfig> {
    let flags = command.config();
    let name = command.name();
    let mut user = Map::new();
    if let Some(path) = &flags.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_error(format!("config file {}: {e}", path.display())))?;
        let file: RunConfig =
            toml::from_str(&text).map_err(|e| config_error(format!("config file {}: {e}", path.display())))?;
        user.extend(to_object(&file));
    }
    user.extend(to_object(flags));

    let (allowed, base) = defaults(name);
    if let Some(key) = user
        .keys()
        .find(|k| !matches!(k.as_str(), "out" | "table" | "seed") && !allowed.contains(&k.as_str()))
    {
        return Err(config_error(format!("`{key}` does not apply to {name}")));
    }
    let mut merged = to_object(&base);
    merged.extend(user);
    merged.entry("seed").or_insert(Value::from(0u64));
    let mut config = from_object(merged)?;
    if config.out.is_none() {
        return Err(config_error(format!("{name} needs --out")));
    }
    if name == "hyper-verify" && config.schedule.is_none() {
        config.schedule = Some(
            match config.net_kind.as_deref() {
                Some("e0") => "geo:7,6",
                _ => "geo:2,20",
            }
            .to_string(),
        );
    }
    Ok(config)
}

// ---------------------------------------------------------------------------
// Descriptor parsing

fn parse_f64(text: &str) -> Result<f64> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let (p, q): (f64, f64) = (
            p.trim().parse().map_err(|_| config_error(format!("`{t}` is not a number")))?,
            q.trim().parse().map_err(|_| config_error(format!("`{t}` is not a number")))?,
        );
        return Ok(p / q);
    }
    t.parse().map_err(|_| config_error(format!("`{t}` is not a number")))
}

/// `p/q`, an integer or a plain decimal, exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || config_error(format!("`{t}` is not an exact rational"));
    if let Some((p, q)) = t.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| bad())?;
        let q: i128 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if frac.len() > 30 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let negative = int.starts_with('-');
    let whole: i128 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
    let scale = 10i128.pow(frac.len() as u32);
    let frac: i128 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let num = whole.abs() * scale + frac;
    Ok(Rational::new(if negative { -num } else { num }, scale))
}

enum ScheduleSpec {
    Geometric { base: f64, count: u32 },
    List(Vec<String>),
}

fn parse_schedule_spec(text: &str) -> Result<ScheduleSpec> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix("geo:") {
        let (base, count) = rest
            .split_once(',')
            .ok_or_else(|| config_error(format!("schedule `{t}`: expected geo:base,count")))?;
        let base = parse_f64(base)?;
        let count: u32 = count
            .trim()
            .parse()
            .map_err(|_| config_error(format!("schedule `{t}`: bad count")))?;
        if !(base > 1.0) || count == 0 {
            return Err(config_error(format!("schedule `{t}`: need base > 1 and count >= 1")));
        }
        return Ok(ScheduleSpec::Geometric { base, count });
    }
    let items: Vec<String> = t.split(',').map(|s| s.trim().to_string()).collect();
    if items.iter().any(String::is_empty) {
        return Err(config_error(format!("schedule `{t}` has an empty entry")));
    }
    Ok(ScheduleSpec::List(items))
}

fn check_decreasing<D: PartialOrd>(schedule: &[D], zero: D, text: &str) -> Result<()> {
    if schedule.iter().any(|d| !(*d > zero)) || schedule.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(config_error(format!(
            "schedule `{text}` must be positive and strictly decreasing"
        )));
    }
    Ok(())
}

/// Expand a schedule descriptor into `f64` scales.
pub fn parse_schedule(text: &str) -> Result<Vec<f64>> {
    let schedule = match parse_schedule_spec(text)? {
        ScheduleSpec::Geometric { base, count } => (1..=count).map(|k| base.powi(-(k as i32))).collect(),
        ScheduleSpec::List(items) => items.iter().map(|s| parse_f64(s)).collect::<Result<Vec<_>>>()?,
    };
    check_decreasing(&schedule, 0.0, text)?;
    Ok(schedule)
}

/// Expand a schedule descriptor into exact scales. Geometric bases must be integers.
pub fn parse_schedule_exact(text: &str) -> Result<Vec<Rational>> {
    let schedule = match parse_schedule_spec(text)? {
        ScheduleSpec::Geometric { base, count } => {
            if base.fract() != 0.0 {
                return Err(config_error(format!("schedule `{text}`: exact scales need an integer base")));
            }
            let base = base as i128;
            let mut out = Vec::new();
            let mut denom: i128 = 1;
            for _ in 0..count {
                denom = denom
                    .checked_mul(base)
                    .ok_or_else(|| config_error(format!("schedule `{text}` overflows exact arithmetic")))?;
                out.push(Rational::new(1, denom));
            }
            out
        }
        ScheduleSpec::List(items) => items.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?,
    };
    check_decreasing(&schedule, Rational::from_integer(0), text)?;
    Ok(schedule)
}

fn parse_kind(text: &str) -> Result<Kind> {
    text.parse()
}

fn parse_gauge(text: &str) -> Result<GaugeFamily> {
    GaugeFamily::parse(text)
}

fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',').map(parse_f64).collect()
}

fn parse_pairs(text: &str) -> Result<Vec<(f64, f64)>> {
    text.split(',')
        .map(|pair| {
            let (s, t) = pair
                .split_once(':')
                .ok_or_else(|| config_error(format!("pair `{pair}`: expected s:t")))?;
            Ok((parse_f64(s)?, parse_f64(t)?))
        })
        .collect()
}

fn parse_point(text: &str, seed: u64) -> Result<ExpansionPoint> {
    let t = text.trim();
    if t == "seeded" {
        return Ok(ExpansionPoint::Seeded { seed });
    }
    if let Some(n) = t.strip_prefix("seeded:") {
        let seed = n.trim().parse().map_err(|_| config_error(format!("point `{t}`: bad seed")))?;
        return Ok(ExpansionPoint::Seeded { seed });
    }
    if let Some(bits) = t.strip_prefix("bits:") {
        let bits = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(config_error(format!("point `{t}`: bits must be 0 or 1"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        return Ok(ExpansionPoint::Explicit { bits });
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = p.trim().parse().map_err(|_| config_error(format!("point `{t}`: bad numerator")))?;
        let q = q.trim().parse().map_err(|_| config_error(format!("point `{t}`: bad denominator")))?;
        return ExpansionPoint::ratio(p, q).map_err(|e| config_error(e.to_string()));
    }
    Err(config_error(format!("point `{t}`: expected p/q, seeded[:N] or bits:...")))
}

fn estimator_config(config: &RunConfig) -> EstimatorConfig {
    let d = EstimatorConfig::default();
    EstimatorConfig {
        s_min: config.s_min.unwrap_or(d.s_min),
        s_max: config.s_max.unwrap_or(d.s_max),
        tolerance: config.bisection_tol.unwrap_or(d.tolerance),
        window: config.window.or(d.window),
        ..d
    }
}

fn required<'a, T>(value: &'a Option<T>, key: &str) -> Result<&'a T> {
    value.as_ref().ok_or_else(|| config_error(format!("missing setting `{key}`")))
}

// ---------------------------------------------------------------------------
// Tables

/// Diagnostics table with one row per (scale, candidate s). `count_or_k`
/// maps the profile's log2 count back to the tabulated quantity.
pub fn write_trend_table<W: Write>(
    out: W,
    profile: &LogProfile,
    estimate: &DimensionEstimate,
    count_or_k: impl Fn(f64) -> f64,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["delta", "count_or_k", "gauge_value_log2", "candidate_s", "trend"])?;
    for record in &estimate.diagnostics {
        let start = profile.len() - record.values.len();
        for (i, v) in record.values.iter().enumerate() {
            let log2_count = profile.log2_count[start + i];
            w.write_record([
                format_delta(profile.log2_delta[start + i]),
                count_or_k(log2_count).to_string(),
                (v - log2_count).to_string(),
                record.s.to_string(),
                if record.accepted { "accept" } else { "reject" }.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn write_points_table<W: Write>(out: W, points: &[Rational]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x"])?;
    for p in points {
        w.write_record([format!("{}/{}", p.numer(), p.denom())])?;
    }
    w.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Commands

type Table = Box<dyn FnOnce(&mut dyn Write) -> Result<()>>;

struct Outcome {
    result: Value,
    table: Option<Table>,
    /// False when the command ran but its check did not pass.
    passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaugeValidation {
    pub passed: bool,
    pub family: ValidationReport,
    pub precision: ValidationReport,
}

fn gauge_validate(config: &RunConfig) -> Result<Outcome> {
    let family = parse_gauge(required(&config.gauge, "gauge")?)?;
    let schedule = parse_schedule(required(&config.schedule, "schedule")?)?;
    let s_grid = parse_list(required(&config.s_grid, "s-grid")?)?;
    let precision = match required(&config.precision, "precision")?.as_str() {
        "canonical" => PrecisionFamily::Canonical,
        "harmonic" => PrecisionFamily::Harmonic,
        other => return Err(config_error(format!("unknown precision family `{other}`"))),
    };
    let pairs = parse_pairs(required(&config.pairs, "pairs")?)?;
    let r_max = *required(&config.r_max, "r-max")?;
    let cfg = ValidationConfig::default();
    let family_report = validate_gauge_family(&family, &s_grid, &schedule, &cfg)?;
    let precision_report = validate_precision_family(&precision, &family, &pairs, r_max, &cfg)?;
    let report = GaugeValidation {
        passed: family_report.passed() && precision_report.passed(),
        family: family_report,
        precision: precision_report,
    };
    Ok(Outcome {
        result: serde_json::to_value(&report)?,
        table: None,
        passed: report.passed,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DimensionRun {
    pub space: String,
    pub n_points: usize,
    pub profile: CoveringProfile,
    pub estimate: DimensionEstimate,
}

fn estimate_on<M: MetricSpace>(
    space: &M,
    points: &[M::Point],
    schedule: &[M::Distance],
    config: &RunConfig,
) -> Result<Outcome> {
    let family = parse_gauge(required(&config.gauge, "gauge")?)?;
    let kind = parse_kind(required(&config.kind, "kind")?)?;
    let mode: Mode = required(&config.mode, "mode")?.parse()?;
    let method = required(&config.method, "method")?.clone();
    let opts = ProfileOptions {
        mode,
        ..ProfileOptions::default()
    };
    let profile = covering_profile(space, points, schedule, &opts)?;
    let logp = profile.log_profile();
    let est_cfg = estimator_config(config);
    let estimate = match method.as_str() {
        "bisection" => minkowski_dimension(&logp, &family, kind, &est_cfg)?,
        "loglog" => loglog_slope(
            &logp,
            est_cfg.window.map_or(Window::All, Window::Finest),
        )?,
        other => return Err(config_error(format!("unknown method `{other}`"))),
    };
    let run = DimensionRun {
        space: space.descriptor(),
        n_points: points.len(),
        profile,
        estimate,
    };
    let result = serde_json::to_value(&run)?;
    let table: Table = Box::new(move |w: &mut dyn Write| write_trend_table(w, &logp, &run.estimate, f64::exp2));
    Ok(Outcome {
        result,
        table: Some(table),
        passed: true,
    })
}

/// One-column CSV whose cells contain `/`: read as exact rationals.
fn read_exact_line(path: &Path) -> Result<Option<Vec<Rational>>> {
    if path.extension().is_some_and(|e| e == "json") {
        return Ok(None);
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let mut cells = Vec::new();
    for record in reader.records() {
        let record = record?;
        if record.len() != 1 {
            return Ok(None);
        }
        cells.push(record[0].to_string());
    }
    if !cells.iter().any(|c| c.contains('/')) {
        return Ok(None);
    }
    let start = usize::from(parse_rational(&cells[0]).is_err());
    let points = cells[start..]
        .iter()
        .map(|c| parse_rational(c).map_err(|_| Error::InvalidData(format!("`{c}` is not an exact rational"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(points))
}

fn dim_estimate(config: &RunConfig) -> Result<Outcome> {
    let schedule_text = required(&config.schedule, "schedule")?;
    match (&config.points, &config.matrix) {
        (Some(_), Some(_)) => Err(config_error("give either --points or --matrix, not both")),
        (None, None) => Err(config_error("dim-estimate needs --points or --matrix")),
        (None, Some(path)) => {
            let space: FiniteMatrix = read_matrix_json(path)?;
            estimate_on(&space, &space.points(), &parse_schedule(schedule_text)?, config)
        }
        (Some(path), None) => {
            if let Some(points) = read_exact_line(path)? {
                return estimate_on(&ExactLine, &points, &parse_schedule_exact(schedule_text)?, config);
            }
            let schedule = parse_schedule(schedule_text)?;
            let cloud = if path.extension().is_some_and(|e| e == "json") {
                read_points_json(path)?
            } else {
                read_points_csv(path)?
            };
            if cloud[0].len() == 1 {
                let points: Vec<f64> = cloud.into_iter().map(|p| p[0]).collect();
                estimate_on(&RealLine, &points, &schedule, config)
            } else {
                estimate_on(&Euclidean::new(cloud[0].len()), &cloud, &schedule, config)
            }
        }
    }
}

fn hyper_verify(config: &RunConfig) -> Result<Outcome> {
    let family = parse_gauge(required(&config.gauge, "gauge")?)?;
    let kind = parse_kind(required(&config.kind, "kind")?)?;
    let schedule_text = required(&config.schedule, "schedule")?;
    let cfg = VerifyConfig {
        estimator: estimator_config(config),
        tolerance: *required(&config.tolerance, "tolerance")?,
    };
    let report: VerificationReport = match required(&config.net_kind, "net-kind")?.as_str() {
        "interval01" => verify_hyperspace_minkowski(
            &RealLine,
            unit_interval_grid,
            &family,
            &parse_schedule(schedule_text)?,
            kind,
            &cfg,
        )?,
        "e0" => verify_hyperspace_minkowski(
            &ExactLine,
            |d: Rational| e0_net(&d),
            &family,
            &parse_schedule_exact(schedule_text)?,
            kind,
            &cfg,
        )?,
        other => return Err(config_error(format!("unknown net kind `{other}` (expected interval01|e0)"))),
    };
    let passed = report.passed;
    let result = serde_json::to_value(&report)?;
    let table: Table = Box::new(move |w: &mut dyn Write| report.profile.write_csv(w));
    Ok(Outcome {
        result,
        table: Some(table),
        passed,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionRun {
    pub kind: String,
    /// Bits read from the source (seven-adic construction only).
    pub bits_consumed: Option<u64>,
    pub levels: Vec<IntervalSet>,
    /// Sample points as `p/q` strings (the finest level's endpoints and
    /// midpoints, or the 1/n points).
    pub points: Vec<String>,
}

fn construct(config: &RunConfig) -> Result<Outcome> {
    let kind = required(&config.kind, "kind")?.clone();
    let depth = *required(&config.depth, "depth")?;
    let seed = config.seed.unwrap_or(0);
    let (levels, bits_consumed, points) = match kind.as_str() {
        "cantor7" => {
            let mut bits = match &config.bits {
                Some(path) => BitSource::from_ascii_file(path)?,
                None => BitSource::seeded(seed),
            };
            let levels = build_construction(&mut bits, depth)?;
            let points = endpoints_and_midpoints(levels.last().expect("level 0 present"))?;
            (levels, Some(bits.cursor()), points)
        }
        "e0" => {
            let set = self_similar_e0(depth)?;
            let points = endpoints_and_midpoints(&set)?;
            (vec![set], None, points)
        }
        "one-over-n" => {
            let n = config.n_max.unwrap_or(10_000);
            (Vec::new(), None, one_over_n_points(n)?)
        }
        other => {
            return Err(config_error(format!(
                "unknown construction `{other}` (expected cantor7|e0|one-over-n)"
            )))
        }
    };
    let run = ConstructionRun {
        kind,
        bits_consumed,
        levels,
        points: points.iter().map(|p| format!("{}/{}", p.numer(), p.denom())).collect(),
    };
    let result = serde_json::to_value(&run)?;
    let table: Table = Box::new(move |w: &mut dyn Write| write_points_table(w, &points));
    Ok(Outcome {
        result,
        table: Some(table),
        passed: true,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgodimRun {
    pub subject: String,
    pub profile: ComplexityProfile,
    pub estimate: DimensionEstimate,
    /// `k(δ)/log2(1/δ)` over the trend window.
    pub ratio: f64,
    pub jump: JumpCharacterization,
}

fn algodim(config: &RunConfig) -> Result<Outcome> {
    let family = parse_gauge(required(&config.gauge, "gauge")?)?;
    let kind = parse_kind(required(&config.kind, "kind")?)?;
    let depth = *required(&config.depth, "depth")?;
    let (subject, profile) = match (&config.point, &config.synthetic) {
        (Some(_), Some(_)) => return Err(config_error("give either --point or --synthetic, not both")),
        (None, None) => return Err(config_error("algodim needs --point or --synthetic")),
        (Some(p), None) => {
            let point = parse_point(p, config.seed.unwrap_or(0))?;
            let profile = complexity_profile_of_point(&point, &dyadic_depth_schedule(depth))?;
            (point.descriptor(), profile)
        }
        (None, Some(s)) => {
            let synth = Synthetic::parse(s)?;
            let rs: Vec<f64> = (1..=depth).map(f64::from).collect();
            (s.clone(), synth.profile(&rs)?)
        }
    };
    let est_cfg = estimator_config(config);
    let estimate = gauged_dim_from_profile(&profile, &family, kind, &est_cfg)?;
    let ratio = ratio_dimension(&profile, kind, est_cfg.window)?;
    let jump = jump_characterization(&profile, &family, kind, &est_cfg)?;
    let logp = profile.as_log_profile()?;
    let run = AlgodimRun {
        subject,
        profile,
        estimate,
        ratio,
        jump,
    };
    let result = serde_json::to_value(&run)?;
    let table: Table = Box::new(move |w: &mut dyn Write| write_trend_table(w, &logp, &run.estimate, |k| k));
    Ok(Outcome {
        result,
        table: Some(table),
        passed: true,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleRun {
    pub instances: u32,
    pub max_candidates: usize,
    pub mismatches: Vec<String>,
    pub passed: bool,
}

fn naive_packing<M: MetricSpace>(space: &M, points: &[M::Point], delta: M::Distance) -> u64 {
    (0u32..1 << points.len())
        .filter(|sub| {
            (0..points.len()).all(|i| {
                sub >> i & 1 == 0
                    || (i + 1..points.len())
                        .all(|j| sub >> j & 1 == 0 || space.distance(&points[i], &points[j]) >= delta)
            })
        })
        .map(|sub| u64::from(sub.count_ones()))
        .max()
        .unwrap_or(0)
}

fn oracle_check<M: MetricSpace>(
    space: &M,
    points: &[M::Point],
    candidates: &[M::Point],
    delta: M::Distance,
    opts: &CoverOptions,
) -> Result<Option<String>> {
    if let Ok(expected) = brute_force_covering_number(space, points, candidates, delta) {
        let got = covering_number(space, points, delta, Centers::FromNet(candidates), Mode::Exact, opts)?.count;
        if got != expected {
            return Ok(Some(format!("{}: cover {got} vs oracle {expected}", space.descriptor())));
        }
    }
    let got = packing_number(space, points, delta, Mode::Exact, opts)?.count;
    let expected = naive_packing(space, points, delta);
    Ok((got != expected).then(|| format!("{}: packing {got} vs oracle {expected}", space.descriptor())))
}

#[allow(clippy::needless_range_loop)]
fn oracle_suite(config: &RunConfig) -> Result<Outcome> {
    let instances = *required(&config.instances, "instances")?;
    let max_c = *required(&config.max_candidates, "max-candidates")?;
    if !(1..=16).contains(&max_c) {
        return Err(config_error("max-candidates must be in 1..=16"));
    }
    let mut rng = Xoshiro256StarStar::seed_from_u64(config.seed.unwrap_or(0));
    let mut unit = move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let opts = CoverOptions::default();
    let mut mismatches = Vec::new();
    for i in 0..instances {
        let n = 1 + (unit() * max_c as f64) as usize;
        let m = 1 + (unit() * max_c as f64) as usize;
        let delta = 0.05 + 0.65 * unit();
        let found = match i % 3 {
            0 => {
                let pts: Vec<Vec<f64>> = (0..n).map(|_| vec![unit(), unit()]).collect();
                let cand: Vec<Vec<f64>> = (0..m).map(|_| vec![unit(), unit()]).collect();
                oracle_check(&Euclidean::new(2), &pts, &cand, delta, &opts)?
            }
            1 => {
                let pts: Vec<f64> = (0..n).map(|_| unit()).collect();
                let cand: Vec<f64> = (0..m).map(|_| unit()).collect();
                oracle_check(&RealLine, &pts, &cand, delta, &opts)?
            }
            _ => {
                // shortest-path closure of random weights is a metric
                let mut d = vec![vec![0.0; n]; n];
                for a in 0..n {
                    for b in a + 1..n {
                        let w = 0.05 + 0.95 * unit();
                        d[a][b] = w;
                        d[b][a] = w;
                    }
                }
                for k in 0..n {
                    for a in 0..n {
                        for b in 0..n {
                            d[a][b] = f64::min(d[a][b], d[a][k] + d[k][b]);
                        }
                    }
                }
                let space = FiniteMatrix::new(d)?;
                let pts = space.points();
                oracle_check(&space, &pts, &pts, delta, &opts)?
            }
        };
        if let Some(msg) = found {
            mismatches.push(format!("instance {i}: {msg}"));
        }
    }
    let run = OracleRun {
        instances,
        max_candidates: max_c,
        passed: mismatches.is_empty(),
        mismatches,
    };
    Ok(Outcome {
        passed: run.passed,
        result: serde_json::to_value(&run)?,
        table: None,
    })
}

// ---------------------------------------------------------------------------
// Dispatch

/// Resolve, run and persist one command. Returns the exit status.
pub fn dispatch(command: &Command) -> i32 {
    let config = match resolve(command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("gaugedim: {e}");
            return 2;
        }
    };
    match run(command.name(), &config) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("gaugedim: {e}");
            if e.is_config_error() {
                2
            } else {
                1
            }
        }
    }
}

/// Run a resolved configuration and write its report. `Ok(false)` means the
/// command's own check failed.
pub fn run(command: &str, config: &RunConfig) -> Result<bool> {
    let outcome = match command {
        "gauge-validate" => gauge_validate(config)?,
        "dim-estimate" => dim_estimate(config)?,
        "hyper-verify" => hyper_verify(config)?,
        "construct" => construct(config)?,
        "algodim" => algodim(config)?,
        "oracle-suite" => oracle_suite(config)?,
        other => return Err(config_error(format!("unknown command `{other}`"))),
    };
    let artifact = Artifact {
        schema: SCHEMA,
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        seed: config.seed.unwrap_or(0),
        config: config.clone(),
        result: outcome.result,
    };
    let mut text = serde_json::to_string_pretty(&artifact)?;
    text.push('\n');
    let out = required(&config.out, "out")?;
    std::fs::write(out, text)?;
    if let (Some(path), Some(table)) = (&config.table, outcome.table) {
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        table(&mut file)?;
        file.flush()?;
    }
    Ok(outcome.passed)
}

/// Entry point for the binary: parse `args`, dispatch, return the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli.command),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
