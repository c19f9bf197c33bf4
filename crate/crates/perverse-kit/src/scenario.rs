//! Scenario runner: structured input files describing germs and packages,
//! dispatched to the library, with machine-readable verification reports.
//!
//! A scenario file is a JSON object with `meta` (name, description,
//! optionally the expected outcome), `kind`, and a kind-specific
//! `payload`. Rationals are written as integers or strings `"p/q"`;
//! matrices as arrays of rows, with `null` standing for a zero matrix of
//! the contextually required shape. Reports embed the crate version and a
//! canonical content hash over everything except the timing field.

use crate::complexes::ChainComplex;
use crate::forms::{
    fibration_decompose, grauert_check, zariski_check, CurveConfig, FiberCycle, FibrationGerm,
    FormsError,
};
use crate::germ::{
    decompose_surface_germ, gysin_s1_bundle, ic_isolated, perverse_truncate_point_germ,
    GermDataset, GermError, LinkCohomology, SurfaceGerm,
};
use crate::lefschetz::{
    eta_l_decomposition, excess_dimension_4fold, hard_lefschetz_check, limit_primitives,
    perverse_filtration_3fold, BigradedPackage, GradedPackage, LefschetzError, PackageOperator,
    ResolutionPackage3, ResolutionPackage4,
};
use crate::linalg::{format_rational, parse_rational, RationalMatrix, Subspace};
use crate::localsys::{ic_stalk_normal_crossing, ic_stalk_oracle, koszul_cohomology, TorusLocalSystem};
use crate::motive::{motive_report, threefold_projectors, MotiveError};
use crate::Verdict;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error in {path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("schema error: {0}")]
    Schema(String),
}

impl ScenarioError {
    /// Conventional process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Io { .. } | ScenarioError::Parse { .. } => 64,
            ScenarioError::Schema(_) => 65,
        }
    }
}

/// One verification inside a scenario.
#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    pub status: Verdict,
    pub details: String,
}

impl Check {
    fn new(id: &str, status: Verdict, details: impl Into<String>) -> Check {
        Check {
            id: id.to_string(),
            status,
            details: details.into(),
        }
    }
}

/// Evaluated scenario: checks plus named tables.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub name: String,
    pub kind: String,
    pub description: String,
    pub expected: Verdict,
    pub checks: Vec<Check>,
    pub tables: BTreeMap<String, Value>,
}

impl Outcome {
    /// Worst status among the checks: fail dominates, then
    /// hypothesis-not-met, then pass.
    pub fn status(&self) -> Verdict {
        let mut status = Verdict::Pass;
        for c in &self.checks {
            match c.status {
                Verdict::Fail => return Verdict::Fail,
                Verdict::HypothesisNotMet => status = Verdict::HypothesisNotMet,
                Verdict::Pass => {}
            }
        }
        status
    }

    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Verdict::Pass => 0,
            Verdict::Fail => 2,
            Verdict::HypothesisNotMet => 3,
        }
    }

    /// Whether the outcome matches the status the scenario declares for
    /// itself (pass unless stated otherwise).
    pub fn matches_expected(&self) -> bool {
        self.status() == self.expected
    }

    /// Report without volatile fields, used for hashing and emission.
    pub fn report_body(&self) -> Value {
        let verdicts: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "check_id": c.id,
                    "status": c.status.to_string(),
                    "details": c.details,
                })
            })
            .collect();
        json!({
            "scenario": self.name,
            "kind": self.kind,
            "description": self.description,
            "status": self.status().to_string(),
            "verdicts": verdicts,
            "tables": Value::Object(self.tables.iter().map(|(k, v)| (k.clone(), v.clone())).collect::<Map<_, _>>()),
            "version": env!("CARGO_PKG_VERSION"),
        })
    }

    /// Full report with canonical hash and timing.
    pub fn report(&self, timing_ms: u128) -> Value {
        let mut body = self.report_body();
        let hash = canonical_hash(&body);
        let obj = body.as_object_mut().expect("report is an object");
        obj.insert("content_hash".into(), Value::String(hash));
        obj.insert("timing_ms".into(), json!(timing_ms as u64));
        body
    }
}

/// Hex digest of the canonical serialization (sorted keys, no volatile
/// fields).
pub fn canonical_hash(v: &Value) -> String {
    let bytes = serde_json::to_vec(v).expect("serializable");
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Loads and evaluates a scenario file.
pub fn run_file(path: &Path) -> Result<Outcome, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let value: Value = serde_json::from_str(&text).map_err(|source| ScenarioError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    run_value(&value)
}

/// Evaluates an in-memory scenario.
pub fn run_value(scenario: &Value) -> Result<Outcome, ScenarioError> {
    let obj = scenario
        .as_object()
        .ok_or_else(|| schema("scenario must be an object"))?;
    let meta = obj.get("meta").and_then(Value::as_object);
    let name = meta
        .and_then(|m| m.get("name"))
        .and_then(Value::as_str)
        .unwrap_or("unnamed")
        .to_string();
    let description = meta
        .and_then(|m| m.get("description"))
        .and_then(Value::as_str)
        .unwrap_or("")
        .to_string();
    let expected = match meta.and_then(|m| m.get("expected")).and_then(Value::as_str) {
        None | Some("pass") => Verdict::Pass,
        Some("fail") => Verdict::Fail,
        Some("hypothesis-not-met") => Verdict::HypothesisNotMet,
        Some(other) => return Err(schema(&format!("unknown expected outcome {other:?}"))),
    };
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| schema("missing kind"))?
        .to_string();
    let payload = obj.get("payload").unwrap_or(&Value::Null);

    let (checks, tables) = dispatch(&kind, payload)?;
    Ok(Outcome {
        name,
        kind,
        description,
        expected,
        checks,
        tables,
    })
}

pub const KINDS: &[&str] = &[
    "grauert",
    "zariski",
    "fibration",
    "ic_stalk",
    "gysin",
    "germ_decompose",
    "germ_truncate",
    "koszul",
    "hl_check",
    "perverse_filtration",
    "limit_primitives",
    "etal_decomposition",
    "motive",
];

type Evaluated = (Vec<Check>, BTreeMap<String, Value>);

fn dispatch(kind: &str, payload: &Value) -> Result<Evaluated, ScenarioError> {
    match kind {
        "grauert" => run_grauert(payload),
        "zariski" => run_zariski(payload),
        "fibration" => run_fibration(payload),
        "ic_stalk" => run_ic_stalk(payload),
        "gysin" => run_gysin(payload),
        "germ_decompose" => run_germ_decompose(payload),
        "germ_truncate" => run_germ_truncate(payload),
        "koszul" => run_koszul(payload),
        "hl_check" => run_hl_check(payload),
        "perverse_filtration" => run_perverse_filtration(payload),
        "limit_primitives" => run_limit_primitives(payload),
        "etal_decomposition" => run_etal(payload),
        "motive" => run_motive(payload),
        other => Err(schema(&format!("unknown scenario kind {other:?}"))),
    }
}

fn schema(msg: &str) -> ScenarioError {
    ScenarioError::Schema(msg.to_string())
}

// ---------------------------------------------------------------------
// Payload parsing helpers
// ---------------------------------------------------------------------

fn field<'v>(payload: &'v Value, key: &str) -> Result<&'v Value, ScenarioError> {
    payload
        .get(key)
        .ok_or_else(|| schema(&format!("missing field {key:?}")))
}

fn parse_usize(v: &Value, what: &str) -> Result<usize, ScenarioError> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| schema(&format!("{what} must be a nonnegative integer")))
}

fn parse_i64(v: &Value, what: &str) -> Result<i64, ScenarioError> {
    v.as_i64()
        .ok_or_else(|| schema(&format!("{what} must be an integer")))
}

fn parse_scalar(v: &Value) -> Result<crate::Rational, ScenarioError> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| schema("numeric entries must be integers; write fractions as \"p/q\""))?;
            Ok(crate::rat(i))
        }
        Value::String(s) => {
            parse_rational(s).map_err(|_| schema(&format!("bad rational literal {s:?}")))
        }
        _ => Err(schema("matrix entries must be integers or \"p/q\" strings")),
    }
}

/// Parses a matrix from an array of rows. `null` (or a missing value)
/// produces a zero matrix of the expected shape; an explicit object
/// `{rows, cols, entries}` covers degenerate shapes like 0 x n.
fn parse_matrix(v: &Value, expect: Option<(usize, usize)>) -> Result<RationalMatrix, ScenarioError> {
    match v {
        Value::Null => {
            let (r, c) =
                expect.ok_or_else(|| schema("null matrix needs a context-determined shape"))?;
            Ok(RationalMatrix::zeros(r, c))
        }
        Value::Array(rows) => {
            if rows.is_empty() {
                let (r, c) = expect.unwrap_or((0, 0));
                if r != 0 {
                    return Err(schema(&format!("expected {r} rows, got an empty matrix")));
                }
                return Ok(RationalMatrix::zeros(0, c));
            }
            let mut data = Vec::new();
            let mut width = None;
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| schema("matrix rows must be arrays"))?;
                match width {
                    None => width = Some(row.len()),
                    Some(w) if w != row.len() => return Err(schema("ragged matrix rows")),
                    _ => {}
                }
                let mut out = Vec::with_capacity(row.len());
                for e in row {
                    out.push(parse_scalar(e)?);
                }
                data.push(out);
            }
            let m = RationalMatrix::from_rows(data).map_err(|e| schema(&e.to_string()))?;
            if let Some((r, c)) = expect {
                if m.rows() != r || m.cols() != c {
                    return Err(schema(&format!(
                        "matrix has shape {}x{}, expected {r}x{c}",
                        m.rows(),
                        m.cols()
                    )));
                }
            }
            Ok(m)
        }
        Value::Object(o) => {
            let r = parse_usize(field(v, "rows")?, "rows")?;
            let c = parse_usize(field(v, "cols")?, "cols")?;
            let entries = o
                .get("entries")
                .and_then(Value::as_array)
                .ok_or_else(|| schema("explicit matrix needs an entries array"))?;
            if entries.len() != r * c {
                return Err(schema("entries length must be rows*cols"));
            }
            let mut data = Vec::with_capacity(entries.len());
            for e in entries {
                data.push(parse_scalar(e)?);
            }
            let m = RationalMatrix::new(r, c, data).map_err(|e| schema(&e.to_string()))?;
            if let Some(shape) = expect {
                if (m.rows(), m.cols()) != shape {
                    return Err(schema("explicit matrix has the wrong shape"));
                }
            }
            Ok(m)
        }
        _ => Err(schema("matrix must be an array of rows, an object, or null")),
    }
}

fn parse_vector(v: &Value) -> Result<Vec<crate::Rational>, ScenarioError> {
    v.as_array()
        .ok_or_else(|| schema("expected an array of scalars"))?
        .iter()
        .map(parse_scalar)
        .collect()
}

fn parse_usize_list(v: &Value, what: &str) -> Result<Vec<usize>, ScenarioError> {
    v.as_array()
        .ok_or_else(|| schema(&format!("{what} must be an array")))?
        .iter()
        .map(|e| parse_usize(e, what))
        .collect()
}

fn parse_curve_config(v: &Value) -> Result<CurveConfig, ScenarioError> {
    let m = parse_matrix(field(v, "matrix")?, None)?;
    CurveConfig::new(m).map_err(|e| schema(&e.to_string()))
}

fn parse_fiber_cycle(v: &Value) -> Result<FiberCycle, ScenarioError> {
    let config = parse_curve_config(v)?;
    let mult = parse_vector(field(v, "multiplicities")?)?;
    FiberCycle::new(config, mult).map_err(|e| schema(&e.to_string()))
}

fn parse_complex(v: &Value) -> Result<ChainComplex, ScenarioError> {
    let lo = parse_i64(field(v, "lo")?, "lo")?;
    let dims = parse_usize_list(field(v, "dims")?, "dims")?;
    let diffs = match v.get("differentials") {
        None | Some(Value::Null) => {
            return Ok(ChainComplex::with_zero_differentials(lo, dims));
        }
        Some(Value::Array(list)) => {
            if list.len() + 1 != dims.len() {
                return Err(schema("need one differential per adjacent degree pair"));
            }
            let mut out = Vec::new();
            for (i, d) in list.iter().enumerate() {
                out.push(parse_matrix(d, Some((dims[i + 1], dims[i])))?);
            }
            out
        }
        Some(_) => return Err(schema("differentials must be an array")),
    };
    ChainComplex::new(lo, dims, diffs).map_err(|e| schema(&e.to_string()))
}

fn parse_graded_package(v: &Value) -> Result<GradedPackage, ScenarioError> {
    let n = parse_usize(field(v, "n")?, "n")?;
    let dims = parse_usize_list(field(v, "dims")?, "dims")?;
    if dims.len() != 2 * n + 1 {
        return Err(schema("dims must have length 2n+1"));
    }
    let op_shapes: Vec<(usize, usize)> = (0..(2 * n).saturating_sub(1))
        .map(|k| (dims[k + 2], dims[k]))
        .collect();
    let parse_ops = |key: &str| -> Result<Vec<RationalMatrix>, ScenarioError> {
        let arr = field(v, key)?
            .as_array()
            .ok_or_else(|| schema(&format!("{key} must be an array of matrices")))?;
        if arr.len() != op_shapes.len() {
            return Err(schema(&format!(
                "{key} must list {} matrices",
                op_shapes.len()
            )));
        }
        arr.iter()
            .zip(&op_shapes)
            .map(|(m, &shape)| parse_matrix(m, Some(shape)))
            .collect()
    };
    let eta = parse_ops("eta")?;
    let l = parse_ops("l")?;
    let pairings = field(v, "pairing")?
        .as_array()
        .ok_or_else(|| schema("pairing must be an array of matrices"))?;
    if pairings.len() != 2 * n + 1 {
        return Err(schema("pairing must list one matrix per degree"));
    }
    let mut pairing = Vec::new();
    for (k, m) in pairings.iter().enumerate() {
        pairing.push(parse_matrix(m, Some((dims[k], dims[2 * n - k])))?);
    }
    GradedPackage::new(n, dims, eta, l, pairing).map_err(|e| schema(&e.to_string()))
}

fn parse_resolution3(v: &Value) -> Result<ResolutionPackage3, LefschetzOrSchema> {
    let g = parse_graded_package(field(v, "graded_package").map_err(LefschetzOrSchema::Schema)?)
        .map_err(LefschetzOrSchema::Schema)?;
    let dims: Vec<usize> = (0..=6).map(|k| g.dim_at(k)).collect();
    let c4 = shaped(v, "c4", None).map_err(LefschetzOrSchema::Schema)?;
    let r = c4.cols();
    let h3 = shaped(v, "c3", None).map_err(LefschetzOrSchema::Schema)?.cols();
    let r4 = shaped(v, "r4", Some((r, dims[4]))).map_err(LefschetzOrSchema::Schema)?;
    let c3 = shaped(v, "c3", Some((dims[3], h3))).map_err(LefschetzOrSchema::Schema)?;
    let eta_cap = shaped(v, "eta_cap", Some((r, r))).map_err(LefschetzOrSchema::Schema)?;
    let h3_pairing = shaped(v, "h3_pairing", Some((h3, h3))).map_err(LefschetzOrSchema::Schema)?;
    ResolutionPackage3::new(g, c4, r4, c3, eta_cap, h3_pairing).map_err(LefschetzOrSchema::Lefschetz)
}

enum LefschetzOrSchema {
    Schema(ScenarioError),
    Lefschetz(LefschetzError),
}

fn parse_resolution4(v: &Value) -> Result<ResolutionPackage4, LefschetzOrSchema> {
    let g = parse_graded_package(field(v, "graded_package").map_err(LefschetzOrSchema::Schema)?)
        .map_err(LefschetzOrSchema::Schema)?;
    let dims: Vec<usize> = (0..=8).map(|k| g.dim_at(k)).collect();
    let c6 = shaped(v, "c6", None).map_err(LefschetzOrSchema::Schema)?;
    let c5 = shaped(v, "c5", None).map_err(LefschetzOrSchema::Schema)?;
    let r6 = shaped(v, "r6", Some((c6.cols(), dims[6]))).map_err(LefschetzOrSchema::Schema)?;
    let r5 = shaped(v, "r5", Some((c5.cols(), dims[5]))).map_err(LefschetzOrSchema::Schema)?;
    let eta2_cap = shaped(v, "eta2_cap", Some((c6.cols(), c6.cols())))
        .map_err(LefschetzOrSchema::Schema)?;
    ResolutionPackage4::new(g, c6, c5, r5, r6, eta2_cap).map_err(LefschetzOrSchema::Lefschetz)
}

/// Sources of a graded package in a payload: a bare package, or the
/// graded part of a threefold or fourfold resolution package.
struct PackageSource {
    graded: GradedPackage,
    fourfold: Option<ResolutionPackage4>,
}

fn parse_package_source(payload: &Value) -> Result<Result<PackageSource, LefschetzError>, ScenarioError> {
    if let Some(v) = payload.get("graded_package") {
        return Ok(Ok(PackageSource {
            graded: parse_graded_package(v)?,
            fourfold: None,
        }));
    }
    if payload.get("resolution3").is_some() {
        return match parse_resolution3(field(payload, "resolution3")?) {
            Ok(p) => Ok(Ok(PackageSource {
                graded: p.graded().clone(),
                fourfold: None,
            })),
            Err(LefschetzOrSchema::Schema(e)) => Err(e),
            Err(LefschetzOrSchema::Lefschetz(e)) => Ok(Err(e)),
        };
    }
    if payload.get("resolution4").is_some() {
        return match parse_resolution4(field(payload, "resolution4")?) {
            Ok(p) => Ok(Ok(PackageSource {
                graded: p.graded().clone(),
                fourfold: Some(p),
            })),
            Err(LefschetzOrSchema::Schema(e)) => Err(e),
            Err(LefschetzOrSchema::Lefschetz(e)) => Ok(Err(e)),
        };
    }
    Err(schema(
        "payload needs one of graded_package, resolution3, resolution4",
    ))
}

fn shaped(
    v: &Value,
    key: &str,
    expect: Option<(usize, usize)>,
) -> Result<RationalMatrix, ScenarioError> {
    parse_matrix(field(v, key)?, expect)
}

fn parse_bigraded(v: &Value) -> Result<BigradedPackage, ScenarioError> {
    let n = parse_i64(field(v, "n")?, "n")?;
    let slots = field(v, "slots")?
        .as_array()
        .ok_or_else(|| schema("slots must be an array"))?;
    let mut dims = BTreeMap::new();
    for s in slots {
        let deg = parse_i64(field(s, "degree")?, "degree")?;
        let lev = parse_i64(field(s, "level")?, "level")?;
        let d = parse_usize(field(s, "dim")?, "dim")?;
        dims.insert((deg, lev), d);
    }
    let dim_at = |slot: (i64, i64)| dims.get(&slot).copied().unwrap_or(0);
    let parse_slot_maps = |key: &str,
                           target: &dyn Fn((i64, i64)) -> (i64, i64)|
     -> Result<BTreeMap<(i64, i64), RationalMatrix>, ScenarioError> {
        let mut out = BTreeMap::new();
        match v.get(key) {
            None | Some(Value::Null) => {}
            Some(Value::Array(list)) => {
                for item in list {
                    let deg = parse_i64(field(item, "degree")?, "degree")?;
                    let lev = parse_i64(field(item, "level")?, "level")?;
                    let to = target((deg, lev));
                    let m = parse_matrix(
                        field(item, "matrix")?,
                        Some((dim_at(to), dim_at((deg, lev)))),
                    )?;
                    out.insert((deg, lev), m);
                }
            }
            Some(_) => return Err(schema(&format!("{key} must be an array"))),
        }
        Ok(out)
    };
    let eta = parse_slot_maps("eta", &|(d, a)| (d + 2, a + 2))?;
    let l = parse_slot_maps("l", &|(d, a)| (d + 2, a))?;
    let forms = parse_slot_maps("forms", &|slot| slot)?;
    BigradedPackage::new(n, dims, eta, l, forms).map_err(|e| schema(&e.to_string()))
}

// ---------------------------------------------------------------------
// Kind evaluators
// ---------------------------------------------------------------------

fn signature_value(sig: crate::Signature) -> Value {
    json!({
        "positive": sig.positive,
        "negative": sig.negative,
        "zero": sig.zero,
    })
}

fn matrix_value(m: &RationalMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|r| {
            Value::Array(
                (0..m.cols())
                    .map(|c| Value::String(format_rational(m.get(r, c))))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn dims_map_value(dims: &BTreeMap<i64, usize>) -> Value {
    Value::Object(
        dims.iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect::<Map<_, _>>(),
    )
}

fn run_grauert(payload: &Value) -> Result<Evaluated, ScenarioError> {
    let config = parse_curve_config(field(payload, "curve_config")?)?;
    let report = grauert_check(&config);
    let checks = vec![
        Check::new(
            "negative_definite",
            report.verdict,
            format!("signature {}", report.definiteness.signature),
        ),
        Check::new(
            "class_map_iso",
            Verdict::from_bool(report.class_map_iso),
            "class map invertible on the germ",
        ),
    ];
    let mut tables = BTreeMap::new();
    tables.insert(
        "definiteness".into(),
        json!({
            "verdict": report.definiteness.verdict.to_string(),
            "signature": signature_value(report.definiteness.signature),
        }),
    );
    Ok((checks, tables))
}

fn run_zariski(payload: &Value) -> Result<Evaluated, ScenarioError> {
    let fiber = parse_fiber_cycle(field(payload, "fiber_cycle")?)?;
    let mut tables = BTreeMap::new();
    let checks = match zariski_check(&fiber) {
        Ok(report) => {
            tables.insert(
                "zariski".into(),
                json!({
                    "rank_cl": report.rank_cl,
                    "quotient_signature": signature_value(report.quotient_signature),
                }),
            );
            vec![
                Check::new("fiber_cycle", Verdict::Pass, "m*a = 0"),
                Check::new(
                    "quotient_negative_definite",
                    report.verdict,
                    format!("rank of the class map: {}", report.rank_cl),
                ),
            ]
        }
        Err(FormsError::NotFiberCycle) => vec![Check::new(
            "fiber_cycle",
            Verdict::HypothesisNotMet,
            "not a fiber cycle: m*a != 0",
        )],
        Err(e) => return Err(schema(&e.to_string())),
    };
    Ok((checks, tables))
}

fn run_fibration(payload: &Value) -> Result<Evaluated, ScenarioError> {
    let v = field(payload, "fibration_germ")?;
    let t0 = parse_usize(field(v, "t0")?, "t0")?;
    let t2 = parse_usize(field(v, "t2")?, "t2")?;
    let monodromy = parse_matrix(field(v, "monodromy")?, None)?;
    let fiber = parse_fiber_cycle(field(v, "fiber_cycle")?)?;
    let b1 = parse_usize(field(v, "b1_special")?, "b1_special")?;
    let germ = FibrationGerm::new(t0, t2, monodromy, fiber, b1)
        .map_err(|e| schema(&e.to_string()))?;
    let mut tables = BTreeMap::new();
    let checks = match fibration_decompose(&germ) {
        Ok(report) => {
            tables.insert(
                "summands".into(),
                json!({
                    "degree_-2_local_system": report.t0_stalk,
                    "degree_-1_invariants": report.invariant_stalk,
                    "skyscraper": report.skyscraper_dim,
                    "degree_0_local_system": report.t2_stalk,
                }),
            );
            vec![
                Check::new("zariski", report.zariski.verdict, "special fiber quotient form"),
                Check::new(
                    "invariant_cycle",
                    report.invariant_cycle_check,
                    format!(
                        "monodromy invariants {} vs special fiber b1 {}",
                        report.invariant_stalk, germ.b1_special
                    ),
                ),
                Check::new(
                    "degree_zero_conservation",
                    report.degree_zero_check,
                    "components split into skyscraper plus generic classes",
                ),
            ]
        }
        Err(FormsError::NotFiberCycle) => vec![Check::new(
            "zariski",
            Verdict::HypothesisNotMet,
            "special fiber is not a fiber cycle",
        )],
        Err(e) => return Err(schema(&e.to_string())),
    };
    Ok((checks, tables))
}

fn parse_link(v: &Value) -> Result<LinkCohomology, ScenarioError> {
    let n = parse_usize(field(v, "n")?, "n")?;
    let dims = parse_usize_list(field(v, "dims")?, "dims")?;
    LinkCohomology::new(n, dims).map_err(|e| schema(&e.to_string()))
}

fn ic_stalk_checks(
    link: &LinkCohomology,
    expect: Option<&Value>,
    checks: &mut Vec<Check>,
    tables: &mut BTreeMap<String, Value>,
) -> Result<(), ScenarioError> {
    let ic = ic_isolated(link);
    let dims = ic.cohomology_dims();
    tables.insert("ic_stalk".into(), dims_map_value(&dims));
    checks.push(Check::new(
        "support_condition",
        Verdict::from_bool(dims.keys().all(|&k| k < 0)),
        "stalk vanishes in degrees >= 0",
    ));
    if let Some(exp) = expect {
        let wanted = parse_degree_dims(exp)?;
        checks.push(Check::new(
            "expected_stalk",
            Verdict::from_bool(nonzero(&wanted) == dims),
            format!("computed {dims:?}"),
        ));
    }
    Ok(())
}

fn parse_degree_dims(v: &Value) -> Result<BTreeMap<i64, usize>, ScenarioError> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema("expected an object keyed by degree"))?;
    let mut out = BTreeMap::new();
    for (k, d) in obj {
        let deg: i64 = k
            .parse()
            .map_err(|_| schema(&format!("bad degree key {k:?}")))?;
        out.insert(deg, parse_usize(d, "dimension")?);
    }
    Ok(out)
}

fn nonzero(dims: &BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
    dims.iter()
        .filter(|(_, &d)| d > 0)
        .map(|(&k, &d)| (k, d))
        .collect()
}

fn run_ic_stalk(payload: &Value) -> Result<Evaluated, ScenarioError> {
    let link = parse_link(field(payload, "link")?)?;
    let mut checks = Vec::new();
    let mut tables = BTreeMap::new();
    tables.insert("link_dims".into(), json!(link.dims()));
    ic_stalk_checks(&link, payload.get("expect_ic"), &mut checks, &mut tables)?;
    Ok((checks, tables))
}

fn run_gysin(payload: &Value) -> Result<Evaluated, ScenarioError> {
    let base_dims = parse_usize_list(field(payload, "base_dims")?, "base_dims")?;
    let maps_value = field(payload, "euler_maps")?
        .as_array()
        .ok_or_else(|| schema("euler_maps must be an array"))?;
    let dim_at = |k: usize| base_dims.get(k).copied().unwrap_or(0);
    let mut maps = Vec::new();
    for (i, m) in maps_value.iter().enumerate() {
        maps.push(parse_matrix(m, Some((dim_at(i + 2), dim_at(i))))?);
    }
    let dims = gysin_s1_bundle(&base_dims, &maps).map_err(|e| schema(&e.to_string()))?;
    let mut tables = BTreeMap::new();
    tables.insert("total_space_dims".into(), json!(dims));
    let mut checks = Vec::new();
    let chi: i64 = dims
        .iter()
        .enumerate()
        .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();
    checks.push(Check::new(
        "euler_characteristic_zero",
        Verdict::from_bool(chi == 0),
        format!("chi = {chi}"),
    ));
    if let Some(exp) = payload.get("expect_dims") {
        let wanted = parse_usize_list(exp, "expect_dims")?;
        checks.push(Check::new(
            "expected_dims",
            Verdict::from_bool(wanted == dims),
            format!("computed {dims:?}"),
        ));
    }
    if let Some(nv) = payload.get("ic_dimension") {
        let n = parse_usize(nv, "ic_dimension")?;
        let link = LinkCohomology::new(n, dims).map_err(|e| schema(&e.to_string()))?;
        ic_stalk_checks(&link, payload.get("expect_ic"), &mut checks, &mut tables)?;
    }
    Ok((checks, tables))
}

fn run_germ_decompose(payload: &Value) -> Result<Evaluated, ScenarioError> {
    let v = field(payload, "surface_germ")?;
    let config = parse_curve_config(v)?;
    let b1 = parse_usize(field(v, "b1")?, "b1")?;
    let report = decompose_surface_germ(&SurfaceGerm { config, b1 });
    let checks = vec![Check::new(
        "splits",
        report.split,
        "pushforward decomposes into intersection complex and skyscraper",
    )];
    let mut tables = BTreeMap::new();
    tables.insert(
        "decomposition".into(),
        json!({
            "ic_stalk_-2": report.ic_stalk.0,
            "ic_stalk_-1": report.ic_stalk.1,
            "skyscraper": report.skyscraper_dim,
            "rational_homology_manifold": report.rational_homology_manifold,
        }),
    );
    Ok((checks, tables))
}

fn run_germ_truncate(payload: &Value) -> Result<Evaluated, ScenarioError> {
    let v = field(payload, "germ")?;
    let n = parse_usize(field(v, "n")?, "n")?;
    let stalk = parse_complex(field(v, "stalk")?)?;
    let link = parse_complex(field(v, "link_complex")?)?;
    let mut attach = BTreeMap::new();
    if let Some(Value::Object(obj)) = v.get("attach") {
        for (k, m) in obj {
            let deg: i64 = k
                .parse()
                .map_err(|_| schema(&format!("bad attach degree {k:?}")))?;
            attach.insert(
                deg,
                parse_matrix(m, Some((link.dim_at(deg), stalk.dim_at(deg))))?,
            );
        }
    }
    let germ =
        GermDataset::new(n, stalk, link, attach).map_err(|e| schema(&e.to_string()))?;
    let m = parse_i64(field(payload, "m")?, "m")?;
    let mut checks = Vec::new();
    let mut tables = BTreeMap::new();
    match perverse_truncate_point_germ(&germ, m) {
        Ok(t) => {
            let dims = t.cohomology_dims();
            tables.insert("truncated_stalk".into(), dims_map_value(&dims));
            if let Some(exp) = payload.get("expect_dims") {
                let wanted = parse_degree_dims(exp)?;
                checks.push(Check::new(
                    "expected_dims",
                    Verdict::from_bool(nonzero(&wanted) == dims),
                    format!("computed {dims:?}"),
                ));
            } else {
                checks.push(Check::new("computed", Verdict::Pass, format!("{dims:?}")));
            }
        }
        Err(GermError::NotPerverseOnOpenPart) => checks.push(Check::new(
            "open_part_perverse",
            Verdict::HypothesisNotMet,
            GermError::NotPerverseOnOpenPart.to_string(),
        )),
        Err(e) => return Err(schema(&e.to_string())),
    }
    Ok((checks, tables))
}

fn run_koszul(payload: &Value) -> Result<Evaluated, ScenarioError> {
    let v = field(payload, "torus_local_system")?;
    let t1 = parse_matrix(field(v, "t1")?, None)?;
    let t2 = parse_matrix(field(v, "t2")?, None)?;
    let ls = TorusLocalSystem::new(t1, t2).map_err(|e| schema(&e.to_string()))?;
    let k = koszul_cohomology(&ls);
    let direct = ic_stalk_normal_crossing(&ls);
    let oracle = ic_stalk_oracle(&ls);
    let mut checks = vec![
        Check::new(
            "euler_characteristic_zero",
            Verdict::from_bool(k.h0 + k.h2 == k.h1),
            format!("koszul dims ({}, {}, {})", k.h0, k.h1, k.h2),
        ),
        Check::new(
            "oracle_agreement",
            Verdict::from_bool(direct == oracle),
            format!("direct {direct:?}, exact-triangle route {oracle:?}"),
        ),
    ];
    if let Some(exp) = payload.get("expect_koszul") {
        let wanted = parse_usize_list(exp, "expect_koszul")?;
        checks.push(Check::new(
            "expected_koszul",
            Verdict::from_bool(wanted == vec![k.h0, k.h1, k.h2]),
            format!("computed ({}, {}, {})", k.h0, k.h1, k.h2),
        ));
    }
    if let Some(exp) = payload.get("expect_ic_stalk") {
        let wanted = parse_usize_list(exp, "expect_ic_stalk")?;
        checks.push(Check::new(
            "expected_ic_stalk",
            Verdict::from_bool(wanted == vec![direct.0, direct.1]),
            format!("computed ({}, {})", direct.0, direct.1),
        ));
    }
    let mut tables = BTreeMap::new();
    tables.insert(
        "koszul".into(),
        json!({"h0": k.h0, "h1": k.h1, "h2": k.h2}),
    );
    tables.insert(
        "ic_stalk".into(),
        json!({"-2": direct.0, "-1": direct.1}),
    );
    Ok((checks, tables))
}

fn run_hl_check(payload: &Value) -> Result<Evaluated, ScenarioError> {
    let g = match parse_package_source(payload)? {
        Ok(source) => source.graded,
        Err(e) => {
            return Ok((
                vec![Check::new(
                    "package_invariants",
                    Verdict::HypothesisNotMet,
                    e.to_string(),
                )],
                BTreeMap::new(),
            ))
        }
    };
    let op = match field(payload, "operator")?.as_str() {
        Some("eta") => PackageOperator::Eta,
        Some("l") => PackageOperator::L,
        _ => return Err(schema("operator must be \"eta\" or \"l\"")),
    };
    let hl = hard_lefschetz_check(&g, op);
    let checks = hl
        .verdicts
        .iter()
        .map(|&(i, ok)| {
            Check::new(
                &format!("{}^{} isomorphism", op.name(), i),
                Verdict::from_bool(ok),
                format!("H^{} -> H^{}", g.n() - i, g.n() + i),
            )
        })
        .collect();
    Ok((checks, BTreeMap::new()))
}

fn resolution3_outcome(
    payload: &Value,
) -> Result<Result<ResolutionPackage3, LefschetzError>, ScenarioError> {
    match parse_resolution3(field(payload, "resolution3")?) {
        Ok(p) => Ok(Ok(p)),
        Err(LefschetzOrSchema::Schema(e)) => Err(e),
        Err(LefschetzOrSchema::Lefschetz(e)) => Ok(Err(e)),
    }
}

fn run_perverse_filtration(payload: &Value) -> Result<Evaluated, ScenarioError> {
    let mut tables = BTreeMap::new();
    let p = match resolution3_outcome(payload)? {
        Ok(p) => p,
        Err(e) => {
            return Ok((
                vec![Check::new(
                    "package_invariants",
                    Verdict::HypothesisNotMet,
                    e.to_string(),
                )],
                tables,
            ))
        }
    };
    let f = perverse_filtration_3fold(&p).map_err(|e| schema(&e.to_string()))?;
    tables.insert("ih_dims".into(), json!(f.ih_dims.to_vec()));
    tables.insert(
        "graded_dims".into(),
        Value::Object(
            f.graded_dims
                .iter()
                .map(|(&(d, a), &dim)| (format!("H^{d}_{a}"), json!(dim)))
                .collect::<Map<_, _>>(),
        ),
    );
    tables.insert(
        "summands".into(),
        json!({
            "perverse_-1_skyscraper": f.summands.h4d_dim,
            "perverse_0_skyscraper": f.summands.h3d_dim,
            "perverse_+1_skyscraper": f.summands.h4d_dual_dim,
        }),
    );
    tables.insert(
        "filtration".into(),
        json!({
            "H2_below_dim": f.h2_below.dim(),
            "H4_at_zero_dim": f.h4_at_zero.dim(),
        }),
    );
    let mut checks = vec![Check::new(
        "deligne_degeneration",
        f.deligne,
        "hyperplane-section form on the divisor classes nondegenerate",
    )];
    let self_dual = (0..=6).all(|k| f.ih_dims[k] == f.ih_dims[6 - k]);
    checks.push(Check::new(
        "ih_poincare_duality",
        Verdict::from_bool(self_dual),
        format!("{:?}", f.ih_dims),
    ));
    if let Some(exp) = payload.get("expect_ih") {
        let wanted = parse_usize_list(exp, "expect_ih")?;
        checks.push(Check::new(
            "expected_ih",
            Verdict::from_bool(wanted == f.ih_dims.to_vec()),
            format!("computed {:?}", f.ih_dims),
        ));
    }
    Ok((checks, tables))
}

fn run_limit_primitives(payload: &Value) -> Result<Evaluated, ScenarioError> {
    let source = match parse_package_source(payload)? {
        Ok(source) => source,
        Err(e) => {
            return Ok((
                vec![Check::new(
                    "package_invariants",
                    Verdict::HypothesisNotMet,
                    e.to_string(),
                )],
                BTreeMap::new(),
            ))
        }
    };
    let g = source.graded;
    let degree = parse_usize(field(payload, "degree")?, "degree")?;
    let mut tables = BTreeMap::new();
    let limit = match limit_primitives(&g, degree) {
        Ok(s) => s,
        Err(LefschetzError::HardLefschetzFails { op, .. }) => {
            return Ok((
                vec![Check::new(
                    "hard_lefschetz",
                    Verdict::HypothesisNotMet,
                    format!("{op} does not satisfy hard Lefschetz through degree {degree}"),
                )],
                tables,
            ))
        }
        Err(e) => return Err(schema(&e.to_string())),
    };
    tables.insert(
        "limit".into(),
        json!({
            "dim": limit.dim(),
            "basis": matrix_value(limit.basis()),
        }),
    );
    let (_, ker_l, _) = g
        .operator(PackageOperator::L, degree)
        .rank_kernel_image();
    let mut checks = vec![Check::new(
        "contained_in_kernel",
        Verdict::from_bool(ker_l.contains(&limit)),
        "limit lies in the kernel of the pencil at parameter zero",
    )];
    if let Some(Value::Bool(true)) = payload.get("expect_equals_kernel_of_l") {
        checks.push(Check::new(
            "equals_kernel_of_l",
            Verdict::from_bool(limit.equals(&ker_l)),
            format!("limit dim {}, kernel dim {}", limit.dim(), ker_l.dim()),
        ));
    }
    if let Some(exp) = payload.get("expect_subspace") {
        let m = parse_matrix(exp, None)?;
        let wanted =
            Subspace::span(limit.ambient_dim(), &m).map_err(|e| schema(&e.to_string()))?;
        checks.push(Check::new(
            "expected_subspace",
            Verdict::from_bool(limit.equals(&wanted)),
            "mutual containment with the stated subspace",
        ));
    }
    if let Some(p4) = &source.fourfold {
        let excess = excess_dimension_4fold(p4).map_err(|e| schema(&e.to_string()))?;
        checks.push(Check::new(
            "excess_dimension",
            excess.verdict,
            format!("kernel dim {} vs excess formula {}", excess.lhs, excess.rhs),
        ));
        checks.push(Check::new(
            "divisor_form_negative_definite",
            Verdict::from_bool(excess.divisor_form_negative_definite),
            "double hyperplane-section form on the divisor classes",
        ));
        if degree == 4 {
            // Middle degree of a fourfold: the limit must be the part of
            // the kernel orthogonal to the lifted divisor classes.
            let lifted = g
                .operator(PackageOperator::Eta, 2)
                .mul(p4.c6())
                .map_err(|e| schema(&e.to_string()))?;
            let span = Subspace::span(g.dim_at(4), &lifted).map_err(|e| schema(&e.to_string()))?;
            let orthogonal = span
                .orthogonal_complement(g.pairing(4))
                .map_err(|e| schema(&e.to_string()))?;
            let expected = orthogonal.intersect(&ker_l);
            checks.push(Check::new(
                "orthogonal_complement_formula",
                Verdict::from_bool(limit.equals(&expected)),
                "limit equals the kernel part orthogonal to the lifted divisor classes",
            ));
        }
    }
    Ok((checks, tables))
}

fn run_etal(payload: &Value) -> Result<Evaluated, ScenarioError> {
    let pkg = parse_bigraded(field(payload, "bigraded_package")?)?;
    let mut tables = BTreeMap::new();
    let report = match eta_l_decomposition(&pkg) {
        Ok(r) => r,
        Err(LefschetzError::HardLefschetzFails { op, .. }) => {
            return Ok((
                vec![Check::new(
                    "graded_hard_lefschetz",
                    Verdict::HypothesisNotMet,
                    format!("graded hard Lefschetz fails for {op}"),
                )],
                tables,
            ))
        }
        Err(e) => return Err(schema(&e.to_string())),
    };
    tables.insert(
        "primitives".into(),
        Value::Object(
            report
                .primitives
                .iter()
                .map(|(&(i, j), s)| (format!("P_{i}_{j}"), json!(s.dim())))
                .collect::<Map<_, _>>(),
        ),
    );
    tables.insert(
        "summands".into(),
        Value::Array(
            report
                .summands
                .iter()
                .map(|s| {
                    json!({
                        "primitive": format!("P_{}_{}", s.primitive.0, s.primitive.1),
                        "eta_power": s.eta_power,
                        "l_power": s.l_power,
                        "slot": format!("H^{}_{}", s.slot.0, s.slot.1),
                        "dim": s.dim,
                    })
                })
                .collect(),
        ),
    );
    let reconstructed = report.slots.values().all(|s| s.reconstructed);
    let orthogonal = report
        .slots
        .values()
        .all(|s| s.orthogonal.unwrap_or(true));
    let nondegenerate = report
        .slots
        .values()
        .all(|s| s.diagonal_radicals.iter().all(|&r| r == 0));
    let checks = vec![
        Check::new(
            "reconstruction",
            Verdict::from_bool(reconstructed),
            "summands fill every slot directly",
        ),
        Check::new(
            "orthogonality",
            Verdict::from_bool(orthogonal),
            "distinct summands pair to zero under the supplied forms",
        ),
        Check::new(
            "diagonal_nondegeneracy",
            Verdict::from_bool(nondegenerate),
            "every diagonal block has trivial radical",
        ),
    ];
    Ok((checks, tables))
}

fn run_motive(payload: &Value) -> Result<Evaluated, ScenarioError> {
    let mut tables = BTreeMap::new();
    let p = match resolution3_outcome(payload)? {
        Ok(p) => p,
        Err(e) => {
            return Ok((
                vec![Check::new(
                    "package_invariants",
                    Verdict::HypothesisNotMet,
                    e.to_string(),
                )],
                tables,
            ))
        }
    };
    let ps = match threefold_projectors(&p) {
        Ok(ps) => ps,
        Err(MotiveError::Precondition(msg)) => {
            return Ok((
                vec![Check::new("preconditions", Verdict::HypothesisNotMet, msg)],
                tables,
            ))
        }
        Err(e) => return Err(schema(&e.to_string())),
    };
    let report = motive_report(&ps, &p).map_err(|e| schema(&e.to_string()))?;
    tables.insert("ih_dims".into(), json!(report.ih_dims));
    tables.insert("caveats".into(), json!(report.caveats));
    tables.insert(
        "projector_checks".into(),
        Value::Object(
            report
                .projector_checks
                .iter()
                .map(|(name, v)| (name.clone(), Value::String(v.to_string())))
                .collect::<Map<_, _>>(),
        ),
    );
    tables.insert(
        "projector_ranks".into(),
        json!({
            "z_minus1": ps.z_minus1.image_dims(),
            "z0": ps.z0.image_dims(),
            "z1": ps.z1.image_dims(),
        }),
    );
    let mut checks: Vec<Check> = report
        .projector_checks
        .iter()
        .map(|(name, v)| Check::new(name, *v, ""))
        .collect();
    checks.push(Check::new(
        "matches_filtration",
        report.matches_filtration,
        "complement image dims equal the intersection cohomology table",
    ));
    checks.push(Check::new(
        "ih_poincare_duality",
        report.poincare_self_dual,
        format!("{:?}", report.ih_dims),
    ));
    if let Some(exp) = payload.get("expect_ih") {
        let wanted = parse_usize_list(exp, "expect_ih")?;
        checks.push(Check::new(
            "expected_ih",
            Verdict::from_bool(wanted == report.ih_dims),
            format!("computed {:?}", report.ih_dims),
        ));
    }
    Ok((checks, tables))
}

// ---------------------------------------------------------------------
// Directory aggregation
// ---------------------------------------------------------------------

/// Result of one file inside a directory run.
#[derive(Debug)]
pub enum FileResult {
    Evaluated(Outcome),
    Failed(ScenarioError),
}

/// Aggregate over a directory of scenario files.
#[derive(Debug)]
pub struct Aggregate {
    pub entries: Vec<(String, FileResult)>,
}

impl Aggregate {
    /// A file is healthy when it evaluates and its status matches its
    /// declared expectation.
    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|(_, r)| match r {
            FileResult::Evaluated(o) => o.matches_expected(),
            FileResult::Failed(_) => false,
        })
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_ok() {
            0
        } else {
            2
        }
    }

    /// Aggregate report; deterministic given the scenario bytes.
    pub fn report(&self) -> Value {
        let files: Vec<Value> = self
            .entries
            .iter()
            .map(|(name, r)| match r {
                FileResult::Evaluated(o) => {
                    let body = o.report_body();
                    let hash = canonical_hash(&body);
                    json!({
                        "file": name,
                        "status": o.status().to_string(),
                        "expected": o.expected.to_string(),
                        "ok": o.matches_expected(),
                        "content_hash": hash,
                    })
                }
                FileResult::Failed(e) => json!({
                    "file": name,
                    "status": "error",
                    "ok": false,
                    "error": e.to_string(),
                }),
            })
            .collect();
        let mut body = json!({
            "kind": "check_all",
            "files": files,
            "ok": self.all_ok(),
            "version": env!("CARGO_PKG_VERSION"),
        });
        let hash = canonical_hash(&body);
        body.as_object_mut()
            .expect("object")
            .insert("content_hash".into(), Value::String(hash));
        body
    }
}

/// Runs every `.json` scenario under a directory, in filename order, on
/// up to `threads` worker threads. Evaluation is pure, so the aggregation
/// is order-deterministic regardless of scheduling.
pub fn check_all(dir: &Path, threads: usize) -> Result<Aggregate, ScenarioError> {
    let mut files: Vec<std::path::PathBuf> = std::fs::read_dir(dir)
        .map_err(|source| ScenarioError::Io {
            path: dir.display().to_string(),
            source,
        })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();

    let threads = threads.max(1).min(files.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<(String, FileResult)>> = Vec::new();
    slots.resize_with(files.len(), || None);
    let slots = std::sync::Mutex::new(slots);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= files.len() {
                    break;
                }
                let name = files[i]
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                let result = match run_file(&files[i]) {
                    Ok(o) => FileResult::Evaluated(o),
                    Err(e) => FileResult::Failed(e),
                };
                slots.lock().expect("no poisoned workers")[i] = Some((name, result));
            });
        }
    });
    let entries = slots
        .into_inner()
        .expect("workers finished")
        .into_iter()
        .map(|s| s.expect("every slot filled"))
        .collect();
    Ok(Aggregate { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grauert_scenario_round_trip() {
        let scenario = json!({
            "meta": {"name": "blowdown", "description": "contractible (-1)-curve"},
            "kind": "grauert",
            "payload": {"curve_config": {"matrix": [[-1]]}},
        });
        let outcome = run_value(&scenario).unwrap();
        assert_eq!(outcome.status(), Verdict::Pass);
        assert_eq!(outcome.exit_code(), 0);
    }

    #[test]
    fn failing_scenario_exits_two() {
        let scenario = json!({
            "meta": {"name": "fiber-like"},
            "kind": "grauert",
            "payload": {"curve_config": {"matrix": [[0]]}},
        });
        let outcome = run_value(&scenario).unwrap();
        assert_eq!(outcome.exit_code(), 2);
    }

    #[test]
    fn hypothesis_not_met_exits_three() {
        let scenario = json!({
            "meta": {"name": "disjoint"},
            "kind": "zariski",
            "payload": {"fiber_cycle": {"matrix": [[-2, 0], [0, -2]], "multiplicities": [1, 1]}},
        });
        let outcome = run_value(&scenario).unwrap();
        assert_eq!(outcome.exit_code(), 3);
    }

    #[test]
    fn schema_errors_are_reported() {
        let scenario = json!({"kind": "grauert", "payload": {}});
        match run_value(&scenario) {
            Err(e @ ScenarioError::Schema(_)) => assert_eq!(e.exit_code(), 65),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn report_hash_ignores_timing() {
        let scenario = json!({
            "meta": {"name": "blowdown"},
            "kind": "grauert",
            "payload": {"curve_config": {"matrix": [[-1]]}},
        });
        let outcome = run_value(&scenario).unwrap();
        let a = outcome.report(1);
        let b = outcome.report(99);
        assert_eq!(a["content_hash"], b["content_hash"]);
        assert_ne!(a["timing_ms"], b["timing_ms"]);
    }

    #[test]
    fn hl_check_accepts_resolution_packages() {
        let scenario = json!({
            "meta": {"name": "hl_on_fourfold"},
            "kind": "hl_check",
            "payload": {
                "resolution4": {
                    "graded_package": {
                        "n": 4,
                        "dims": [1, 0, 1, 0, 1, 0, 1, 0, 1],
                        "eta": [[[1]], null, [[1]], null, [[1]], null, [[1]]],
                        "l": [[[1]], null, [[1]], null, [[1]], null, [[1]]],
                        "pairing": [[[1]], null, [[1]], null, [[1]], null, [[1]], null, [[1]]],
                    },
                    "c6": [[]],
                    "c5": {"rows": 0, "cols": 0, "entries": []},
                    "r5": {"rows": 0, "cols": 0, "entries": []},
                    "r6": {"rows": 0, "cols": 1, "entries": []},
                    "eta2_cap": {"rows": 0, "cols": 0, "entries": []},
                },
                "operator": "eta",
            },
        });
        let outcome = run_value(&scenario).unwrap();
        assert_eq!(outcome.status(), Verdict::Pass, "{:?}", outcome.checks);
        assert_eq!(outcome.checks.len(), 4);
    }

    #[test]
    fn rational_matrix_entries_parse_both_ways() {
        let m = parse_matrix(&json!([[1, "1/2"], ["-3", 0]]), None).unwrap();
        assert_eq!(*m.get(0, 1), crate::frac(1, 2));
        assert_eq!(*m.get(1, 0), crate::rat(-3));
        assert!(parse_matrix(&json!([[0.5]]), None).is_err());
    }
}
