//! Command-line front end for the characteristic-variety library.
//!
//! Every command loads a fixture file (JSON), dispatches one computation,
//! and prints either machine-readable JSON (default) or a human-readable
//! table.  All arithmetic is exact; JSON output is byte-identical across
//! runs: object keys are sorted, rationals are canonical `p/q` strings, and
//! no floating point is ever printed.
//!
//! Exit codes: `0` success, `1` computation failure (including self-test
//! mismatches), `2` input or schema errors.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use charvar::complex::weighted_cone_complex;
use charvar::homology::{abelianized_pi1, DivisorData};
use charvar::intmat::IntMat;
use charvar::modpres::{
    charvar_membership_extended, pullback_subtorus, verify_subtorus, TranslatedSubtorus,
    DEFAULT_SAMPLE_CAP,
};
use charvar::polytope::{
    contributing_face_test, exp_face, ordinary_point_catalog, GlobalRegion, LocalToGlobalMap,
    QFace,
};
use charvar::ring::{characters_of_order_at_most, Character};
use charvar::zeta::{
    build_zeta, e_top_realization, hodge_realization, limit_at_infinity, ResolutionDatum,
};
use charvar::Error as CoreError;

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "charvar",
    version,
    about = "Exact characteristic varieties of complements to divisors with isolated \
             non-normal crossings",
    arg_required_else_help = true
)]
struct Cli {
    /// Run the bundled fixture suite (same as the `selftest` subcommand).
    #[arg(long)]
    selftest: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Abelianization of the complement's fundamental group.
    H1(FixtureArgs),
    /// Characteristic-variety membership and candidate components.
    Charvar(CharvarArgs),
    /// Polytopes of quasiadjunction attached to a fixture.
    Polytope(PolytopeArgs),
    /// Realizations of the motivic zeta function from resolution data.
    Zeta(ZetaArgs),
    /// Run every bundled fixture against its expected block.
    Selftest,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit machine-readable JSON (the default).
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Emit a human-readable table instead of JSON.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct FixtureArgs {
    /// Path to a fixture file, or the name of a bundled fixture.
    #[arg(long)]
    fixture: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CharvarArgs {
    /// Path to a fixture file, or the name of a bundled fixture.
    #[arg(long)]
    fixture: String,
    /// Depth of the characteristic variety to test.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Test characters of order up to this bound.
    #[arg(long, default_value_t = 4)]
    order_bound: u64,
    /// A single character to test, as comma-separated rationals "1/3,2/3,0".
    #[arg(long)]
    chi: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct PolytopeArgs {
    #[command(subcommand)]
    what: PolytopeCmd,
}

#[derive(Subcommand)]
enum PolytopeCmd {
    /// Faces of quasiadjunction of the local polytope catalog.
    Faces(FixtureArgs),
    /// Exponentials of the faces: candidate subtori of the character torus.
    Exp(FixtureArgs),
    /// Test each face against a divisor hyperplane.
    Contributing(FixtureArgs),
    /// Assemble the global region and list its affine cells.
    Global(FixtureArgs),
}

#[derive(Args)]
struct ZetaArgs {
    /// Path to a fixture file, or the name of a bundled fixture.
    #[arg(long)]
    fixture: String,
    /// Which realization of the zeta function to report.
    #[arg(long, value_enum)]
    realization: Realization,
    /// Character for the limit realization, as comma-separated rationals.
    #[arg(long)]
    chi: Option<String>,
    /// Sweep characters of order up to this bound (limit realization only).
    #[arg(long, default_value_t = 4)]
    order_bound: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy)]
enum Realization {
    /// Topological Euler realization, still factored.
    Top,
    /// Hodge realization with E-polynomial coefficients.
    Hodge,
    /// Limit at infinity of the equivariant Euler realization.
    Limit,
}

// ---------------------------------------------------------------------------
// Errors and exit codes
// ---------------------------------------------------------------------------

#[derive(Debug)]
enum CliError {
    /// An error bubbled up from the library.
    Core(CoreError),
    /// The input file or payload violates the fixture schema.
    Schema(String),
    /// The file could not be read at all.
    Io(String),
    /// Self-test ran to completion but some checks failed.
    Failed(usize),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Schema(s) | CliError::Io(s) => write!(f, "{s}"),
            CliError::Failed(n) => write!(f, "{n} self-test check(s) failed"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::Parse(_))
            | CliError::Core(CoreError::Shape(_))
            | CliError::Core(CoreError::InvalidPolytope(_))
            | CliError::Schema(_)
            | CliError::Io(_) => 2,
            CliError::Core(_) | CliError::Failed(_) => 1,
        }
    }
}

// ---------------------------------------------------------------------------
// Fixture files
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Fixture {
    name: String,
    kind: FixtureKind,
    /// Free-text note on where the example comes from; informational only.
    #[serde(default)]
    #[allow(dead_code)]
    source: Option<String>,
    payload: Value,
    /// Expected command outputs keyed by command name, for self-test mode.
    #[serde(default)]
    expected: Option<BTreeMap<String, Value>>,
}

#[derive(Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
enum FixtureKind {
    ArrangementCone,
    LocalGerm,
    Resolution,
    ProjectiveConfig,
}

impl fmt::Display for FixtureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FixtureKind::ArrangementCone => "arrangement-cone",
            FixtureKind::LocalGerm => "local-germ",
            FixtureKind::Resolution => "resolution",
            FixtureKind::ProjectiveConfig => "projective-config",
        };
        write!(f, "{s}")
    }
}

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn load_fixture_path(path: &Path) -> Result<Fixture, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Schema(format!("fixture {}: {e}", path.display())))
}

/// Resolve `spec` as a path first, then as the name of a bundled fixture.
fn load_fixture(spec: &str) -> Result<Fixture, CliError> {
    let direct = Path::new(spec);
    if direct.exists() {
        return load_fixture_path(direct);
    }
    let bundled = fixtures_dir().join(format!("{spec}.json"));
    if bundled.exists() {
        return load_fixture_path(&bundled);
    }
    Err(CliError::Io(format!(
        "fixture '{spec}' not found: no such file, and {} does not exist",
        bundled.display()
    )))
}

fn require_kind(fx: &Fixture, kind: FixtureKind, command: &str) -> Result<(), CliError> {
    if fx.kind == kind {
        Ok(())
    } else {
        Err(CliError::Schema(format!(
            "fixture '{}' has kind {}, but `{command}` needs a {kind} fixture",
            fx.name, fx.kind
        )))
    }
}

fn payload<T: for<'de> Deserialize<'de>>(fx: &Fixture, what: &str) -> Result<T, CliError> {
    serde_json::from_value(fx.payload.clone())
        .map_err(|e| CliError::Schema(format!("fixture '{}' payload ({what}): {e}", fx.name)))
}

// ---------------------------------------------------------------------------
// Shared rendering helpers
// ---------------------------------------------------------------------------

fn q_str(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_q(s: &str) -> Result<BigRational, CliError> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| CliError::Schema(format!("invalid rational '{s}'")))
}

fn point_json(p: &[BigRational]) -> Value {
    Value::Array(p.iter().map(|q| Value::String(q_str(q))).collect())
}

fn subtorus_json(s: &TranslatedSubtorus) -> Value {
    json!({
        "nvars": s.nvars(),
        "empty": s.is_empty(),
        "dim": s.dim(),
        "equations": s.equation_rows_i64(),
        "offsets": s.offsets().iter().map(q_str).collect::<Vec<_>>(),
    })
}

/// Render an exponent vector as a monomial in `t1..tr`.
fn monomial(a: &[u64]) -> String {
    let pieces: Vec<String> = a
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| if e == 1 { format!("t{}", i + 1) } else { format!("t{}^{}", i + 1, e) })
        .collect();
    if pieces.is_empty() {
        "1".into()
    } else {
        pieces.join("*")
    }
}

fn stratum_names(rd: &ResolutionDatum, subset: &[usize]) -> Vec<String> {
    subset.iter().map(|&i| rd.components()[i].name.clone()).collect()
}

/// Print a JSON value as an indented key/value tree.  Arrays of scalars are
/// kept on one line so matrix rows and coordinate vectors stay readable.
fn render_table(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if is_scalar(val) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_str(val)));
                } else if is_flat_array(val) {
                    out.push_str(&format!("{pad}{k}: {}\n", compact(val)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_table(val, indent + 2, out);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_scalar(item) {
                    out.push_str(&format!("{pad}- {}\n", scalar_str(item)));
                } else if is_flat_array(item) {
                    out.push_str(&format!("{pad}- {}\n", compact(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_table(item, indent + 2, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_str(other))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn is_flat_array(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().all(is_scalar))
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON value renders")
}

fn scalar_str(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn emit(v: &Value, out: &OutputArgs) {
    if out.table {
        let mut text = String::new();
        render_table(v, 0, &mut text);
        print!("{text}");
    } else {
        println!("{}", serde_json::to_string_pretty(v).expect("JSON value renders"));
    }
}

// ---------------------------------------------------------------------------
// h1
// ---------------------------------------------------------------------------

fn divisor_data(fx: &Fixture) -> Result<DivisorData, CliError> {
    DivisorData::from_json(&fx.payload.to_string()).map_err(CliError::from)
}

fn cmd_h1(fx: &Fixture) -> Result<Value, CliError> {
    require_kind(fx, FixtureKind::ProjectiveConfig, "h1")?;
    let d = divisor_data(fx)?;
    let g = abelianized_pi1(&d)?;
    let full = d.hypotheses.simply_connected
        && d.hypotheses.ample
        && d.hypotheses.normal_crossings_outside_isolated;
    Ok(json!({
        "command": "h1",
        "fixture": fx.name,
        "components": d.components.len(),
        "group": g.to_string(),
        "free_rank": g.free_rank,
        "torsion": g.torsion,
        "full_fundamental_group": full,
    }))
}

// ---------------------------------------------------------------------------
// charvar
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct ConePayload {
    degrees: Vec<i64>,
    skeleton_degree: usize,
}

#[derive(Deserialize)]
struct ProjectionPayload {
    projections: Vec<Vec<Vec<i64>>>,
    support: SupportPayload,
}

#[derive(Deserialize)]
struct SupportPayload {
    weights: Vec<i64>,
    offset: String,
}

struct CharvarOpts {
    k: usize,
    order_bound: u64,
    chi: Option<String>,
}

fn cmd_charvar(fx: &Fixture, opts: &CharvarOpts) -> Result<Value, CliError> {
    match fx.kind {
        FixtureKind::ArrangementCone => cone_charvar(fx, opts),
        FixtureKind::ProjectiveConfig => config_charvar(fx, opts),
        other => Err(CliError::Schema(format!(
            "fixture '{}' has kind {other}, but `charvar` needs an arrangement-cone or \
             projective-config fixture",
            fx.name
        ))),
    }
}

fn cone_charvar(fx: &Fixture, opts: &CharvarOpts) -> Result<Value, CliError> {
    let p: ConePayload = payload(fx, "degrees and skeleton_degree")?;
    let c = weighted_cone_complex(&p.degrees, p.skeleton_degree)?;
    if let Some(chi_text) = &opts.chi {
        let chi = Character::parse(chi_text)?;
        let member = charvar_membership_extended(&c, &chi, opts.k, p.skeleton_degree)?;
        return Ok(json!({
            "command": "charvar",
            "fixture": fx.name,
            "degree": p.skeleton_degree,
            "k": opts.k,
            "chi": chi.coordinate_string(),
            "member": member,
        }));
    }
    // the natural candidate component: the subtorus cut out by the degrees
    let candidate = TranslatedSubtorus::from_equation(&p.degrees, BigRational::zero());
    let report = verify_subtorus(
        &c,
        &candidate,
        opts.k,
        p.skeleton_degree,
        opts.order_bound,
        DEFAULT_SAMPLE_CAP,
    )?;
    Ok(json!({
        "command": "charvar",
        "fixture": fx.name,
        "degree": p.skeleton_degree,
        "report": serde_json::to_value(&report).expect("report serializes"),
    }))
}

fn config_charvar(fx: &Fixture, opts: &CharvarOpts) -> Result<Value, CliError> {
    let p: ProjectionPayload = payload(fx, "projections and support")?;
    let q = p.support.weights.len();
    let target =
        TranslatedSubtorus::from_equation(&p.support.weights, parse_q(&p.support.offset)?);
    let mut candidates = Vec::with_capacity(p.projections.len());
    let mut subtori = Vec::with_capacity(p.projections.len());
    for (idx, rows) in p.projections.iter().enumerate() {
        if rows.len() != q || rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(CliError::Schema(format!(
                "projection {idx} must have {q} rows of equal length"
            )));
        }
        let m = IntMat::from_i64(rows, rows[0].len());
        let s = pullback_subtorus(&m, &target)?;
        candidates.push(subtorus_json(&s));
        subtori.push(s);
    }
    if let Some(chi_text) = &opts.chi {
        let chi = Character::parse(chi_text)?;
        let member = subtori.iter().any(|s| s.contains(&chi));
        return Ok(json!({
            "command": "charvar",
            "fixture": fx.name,
            "k": opts.k,
            "chi": chi.coordinate_string(),
            "member": member,
            "note": "membership in the candidate components pulled back from the support",
        }));
    }
    Ok(json!({
        "command": "charvar",
        "fixture": fx.name,
        "k": opts.k,
        "candidates": candidates,
        "note": "candidate components pulled back from the recorded support; \
                 not grid-verified",
    }))
}

// ---------------------------------------------------------------------------
// polytope
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct GermPayload {
    multiplicity: usize,
    #[serde(default)]
    contributing: Option<ContributingPayload>,
    #[serde(default)]
    global: Option<GlobalPayload>,
}

#[derive(Deserialize)]
struct ContributingPayload {
    weights: Vec<i64>,
    level: String,
    h1_dim: usize,
}

#[derive(Deserialize)]
struct GlobalPayload {
    r: usize,
    locals: Vec<LocalPayload>,
}

#[derive(Deserialize)]
struct LocalPayload {
    multiplicity: usize,
    level: usize,
    indices: Vec<usize>,
}

fn germ_catalog(fx: &Fixture, command: &str) -> Result<(GermPayload, Vec<QFace>), CliError> {
    require_kind(fx, FixtureKind::LocalGerm, command)?;
    let p: GermPayload = payload(fx, "multiplicity")?;
    let faces = ordinary_point_catalog(p.multiplicity)?
        .into_iter()
        .map(|(_, f)| f)
        .collect();
    Ok((p, faces))
}

fn face_json(f: &QFace) -> Value {
    let (a, c) = f.hyperplane();
    json!({
        "hyperplane": {
            "a": a.iter().map(q_str).collect::<Vec<_>>(),
            "c": q_str(c),
        },
        "affine_dim": f.affine_dim(),
        "vertices": f.vertices().iter().map(|v| point_json(v)).collect::<Vec<_>>(),
    })
}

fn cmd_polytope_faces(fx: &Fixture) -> Result<Value, CliError> {
    let (p, faces) = germ_catalog(fx, "polytope faces")?;
    Ok(json!({
        "command": "polytope-faces",
        "fixture": fx.name,
        "multiplicity": p.multiplicity,
        "faces": faces.iter().map(face_json).collect::<Vec<_>>(),
    }))
}

fn cmd_polytope_exp(fx: &Fixture) -> Result<Value, CliError> {
    let (p, faces) = germ_catalog(fx, "polytope exp")?;
    let mut subtori = Vec::with_capacity(faces.len());
    for f in &faces {
        let (_, c) = f.hyperplane();
        subtori.push(json!({
            "level": q_str(c),
            "subtorus": subtorus_json(&exp_face(f)?),
        }));
    }
    Ok(json!({
        "command": "polytope-exp",
        "fixture": fx.name,
        "multiplicity": p.multiplicity,
        "subtori": subtori,
    }))
}

fn cmd_polytope_contributing(fx: &Fixture) -> Result<Value, CliError> {
    let (p, faces) = germ_catalog(fx, "polytope contributing")?;
    let mut verdicts = Vec::with_capacity(faces.len());
    for f in &faces {
        let (_, face_level) = f.hyperplane();
        let (weights, level, h1_dim) = match &p.contributing {
            Some(c) => {
                if c.weights.len() != p.multiplicity {
                    return Err(CliError::Schema(format!(
                        "contributing block has {} weights for multiplicity {}",
                        c.weights.len(),
                        p.multiplicity
                    )));
                }
                let w: Vec<BigRational> =
                    c.weights.iter().map(|&x| BigRational::from_integer(x.into())).collect();
                (w, parse_q(&c.level)?, c.h1_dim)
            }
            // default: the face's own supporting hyperplane
            None => {
                let ones = vec![BigRational::from_integer(1.into()); p.multiplicity];
                (ones, face_level.clone(), 1)
            }
        };
        let v = contributing_face_test(f, &weights, &level, h1_dim)?;
        verdicts.push(json!({
            "face_level": q_str(face_level),
            "hyperplane": {
                "a": weights.iter().map(q_str).collect::<Vec<_>>(),
                "c": q_str(&level),
            },
            "contained": v.contained,
            "witness": v.witness.as_deref().map(point_json),
            "component": v.component.as_ref().map(subtorus_json),
            "depth": v.depth,
        }));
    }
    Ok(json!({
        "command": "polytope-contributing",
        "fixture": fx.name,
        "multiplicity": p.multiplicity,
        "verdicts": verdicts,
    }))
}

fn cmd_polytope_global(fx: &Fixture) -> Result<Value, CliError> {
    require_kind(fx, FixtureKind::LocalGerm, "polytope global")?;
    let p: GermPayload = payload(fx, "multiplicity")?;
    let Some(g) = &p.global else {
        return Err(CliError::Schema(format!(
            "fixture '{}' has no global block in its payload",
            fx.name
        )));
    };
    let mut locals = Vec::with_capacity(g.locals.len());
    for (idx, lb) in g.locals.iter().enumerate() {
        let catalog = ordinary_point_catalog(lb.multiplicity)?;
        if lb.level == 0 || lb.level > catalog.len() {
            return Err(CliError::Schema(format!(
                "local {idx}: level {} outside the catalog range 1..={} for multiplicity {}",
                lb.level,
                catalog.len(),
                lb.multiplicity
            )));
        }
        let (poly, _) = catalog.into_iter().nth(lb.level - 1).expect("level checked");
        let map = LocalToGlobalMap::selection(g.r, &lb.indices)?;
        locals.push((poly, map));
    }
    let region = GlobalRegion::new(g.r, locals)?;
    let cells: Vec<Value> = region
        .cells()?
        .iter()
        .map(|cell| {
            json!({
                "levels": cell.levels,
                "closure": cell
                    .closure_rows
                    .iter()
                    .map(|(a, c)| {
                        json!({
                            "a": a.iter().map(q_str).collect::<Vec<_>>(),
                            "c": q_str(c),
                        })
                    })
                    .collect::<Vec<_>>(),
                "vertices": cell.vertices.iter().map(|v| point_json(v)).collect::<Vec<_>>(),
                "sample": point_json(&cell.sample),
            })
        })
        .collect();
    Ok(json!({
        "command": "polytope-global",
        "fixture": fx.name,
        "r": g.r,
        "cells": cells,
    }))
}

// ---------------------------------------------------------------------------
// zeta
// ---------------------------------------------------------------------------

fn resolution_datum(fx: &Fixture, command: &str) -> Result<ResolutionDatum, CliError> {
    require_kind(fx, FixtureKind::Resolution, command)?;
    ResolutionDatum::from_json(&fx.payload.to_string()).map_err(CliError::from)
}

fn cmd_zeta_top(fx: &Fixture) -> Result<Value, CliError> {
    let rd = resolution_datum(fx, "zeta")?;
    let e = e_top_realization(&build_zeta(&rd));
    let terms: Vec<Value> = e
        .terms
        .iter()
        .map(|t| {
            json!({
                "stratum": stratum_names(&rd, &t.subset),
                "coefficient": t.coefficient,
                "factors": t.factors.iter().map(|a| monomial(a)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "command": "zeta-top",
        "fixture": fx.name,
        "r": e.r,
        "terms": terms,
    }))
}

fn cmd_zeta_hodge(fx: &Fixture) -> Result<Value, CliError> {
    let rd = resolution_datum(fx, "zeta")?;
    let h = hodge_realization(&build_zeta(&rd))?;
    let terms: Vec<Value> = h
        .terms
        .iter()
        .map(|t| {
            json!({
                "stratum": stratum_names(&rd, &t.subset),
                "coefficient": t.coefficient.to_string(),
                "factors": t
                    .factors
                    .iter()
                    .map(|(shift, a)| {
                        json!({ "weight_shift": shift, "monomial": monomial(a) })
                    })
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "command": "zeta-hodge",
        "fixture": fx.name,
        "r": h.r,
        "terms": terms,
    }))
}

fn cmd_zeta_limit(fx: &Fixture, chi: Option<&str>, order_bound: u64) -> Result<Value, CliError> {
    let rd = resolution_datum(fx, "zeta")?;
    let z = build_zeta(&rd);
    if let Some(chi_text) = chi {
        let chi = Character::parse(chi_text)?;
        let value = limit_at_infinity(&z, &chi)?;
        return Ok(json!({
            "command": "zeta-limit",
            "fixture": fx.name,
            "chi": chi.coordinate_string(),
            "value": value,
        }));
    }
    let mut support = Vec::new();
    for chi in characters_of_order_at_most(rd.r(), order_bound) {
        if chi.is_identity() {
            continue;
        }
        let value = limit_at_infinity(&z, &chi)?;
        if value != 0 {
            support.push(json!({ "chi": chi.coordinate_string(), "value": value }));
        }
    }
    Ok(json!({
        "command": "zeta-limit",
        "fixture": fx.name,
        "order_bound": order_bound,
        "support": support,
    }))
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

/// Run the command a fixture's expected block names, with default flags.
fn run_expected(fx: &Fixture, key: &str) -> Result<Value, CliError> {
    let default_charvar = CharvarOpts { k: 1, order_bound: 4, chi: None };
    match key {
        "h1" => cmd_h1(fx),
        "charvar" => cmd_charvar(fx, &default_charvar),
        "polytope-faces" => cmd_polytope_faces(fx),
        "polytope-exp" => cmd_polytope_exp(fx),
        "polytope-contributing" => cmd_polytope_contributing(fx),
        "polytope-global" => cmd_polytope_global(fx),
        "zeta-top" => cmd_zeta_top(fx),
        "zeta-hodge" => cmd_zeta_hodge(fx),
        "zeta-limit" => cmd_zeta_limit(fx, None, 4),
        other => Err(CliError::Schema(format!("unknown expected-block key '{other}'"))),
    }
}

/// Path of the first difference between two JSON documents, with both values.
fn first_diff(got: &Value, want: &Value, path: &str) -> Option<String> {
    match (got, want) {
        (Value::Object(g), Value::Object(w)) => {
            let keys: std::collections::BTreeSet<&String> = g.keys().chain(w.keys()).collect();
            for k in keys {
                let sub = format!("{path}/{k}");
                match (g.get(k), w.get(k)) {
                    (Some(gv), Some(wv)) => {
                        if let Some(d) = first_diff(gv, wv, &sub) {
                            return Some(d);
                        }
                    }
                    (Some(gv), None) => {
                        return Some(format!("{sub}: got {}, expected key absent", compact(gv)))
                    }
                    (None, Some(wv)) => {
                        return Some(format!("{sub}: key missing, expected {}", compact(wv)))
                    }
                    (None, None) => unreachable!(),
                }
            }
            None
        }
        (Value::Array(g), Value::Array(w)) => {
            if g.len() != w.len() {
                return Some(format!(
                    "{path}: array length {} differs from expected {}",
                    g.len(),
                    w.len()
                ));
            }
            for (i, (gv, wv)) in g.iter().zip(w).enumerate() {
                if let Some(d) = first_diff(gv, wv, &format!("{path}/{i}")) {
                    return Some(d);
                }
            }
            None
        }
        (g, w) => {
            if g == w {
                None
            } else {
                Some(format!("{path}: got {}, expected {}", compact(g), compact(w)))
            }
        }
    }
}

fn run_selftest() -> Result<(), CliError> {
    let dir = fixtures_dir();
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| CliError::Io(format!("cannot list {}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    let mut checks = 0usize;
    let mut failures = 0usize;
    let mut skipped = 0usize;
    for path in &paths {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("?").to_string();
        let fx = match load_fixture_path(path) {
            Ok(fx) => fx,
            Err(e) => {
                failures += 1;
                println!("{stem}: FAIL — {e}");
                continue;
            }
        };
        let Some(expected) = &fx.expected else {
            skipped += 1;
            println!("{stem}: skipped (no expected block)");
            continue;
        };
        for (key, want) in expected {
            checks += 1;
            match run_expected(&fx, key) {
                Ok(got) if &got == want => println!("{stem} / {key}: ok"),
                Ok(got) => {
                    failures += 1;
                    let diff = first_diff(&got, want, "")
                        .unwrap_or_else(|| "documents differ".into());
                    println!("{stem} / {key}: FAIL — {diff}");
                    println!("  got:      {}", compact(&got));
                    println!("  expected: {}", compact(want));
                }
                Err(e) => {
                    failures += 1;
                    println!("{stem} / {key}: FAIL — {e}");
                }
            }
        }
    }
    println!(
        "selftest: {checks} check(s) across {} fixture(s), {failures} failure(s), \
         {skipped} skipped",
        paths.len()
    );
    if failures > 0 {
        Err(CliError::Failed(failures))
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

fn run(cli: Cli) -> Result<(), CliError> {
    if cli.selftest {
        if cli.command.is_some() {
            return Err(CliError::Schema(
                "--selftest cannot be combined with a subcommand".into(),
            ));
        }
        return run_selftest();
    }
    let Some(command) = cli.command else {
        Cli::command().print_help().ok();
        return Err(CliError::Schema("no command given".into()));
    };
    match command {
        Command::H1(a) => {
            let fx = load_fixture(&a.fixture)?;
            emit(&cmd_h1(&fx)?, &a.out);
        }
        Command::Charvar(a) => {
            let fx = load_fixture(&a.fixture)?;
            let opts = CharvarOpts { k: a.k, order_bound: a.order_bound, chi: a.chi.clone() };
            emit(&cmd_charvar(&fx, &opts)?, &a.out);
        }
        Command::Polytope(p) => match p.what {
            PolytopeCmd::Faces(a) => {
                let fx = load_fixture(&a.fixture)?;
                emit(&cmd_polytope_faces(&fx)?, &a.out);
            }
            PolytopeCmd::Exp(a) => {
                let fx = load_fixture(&a.fixture)?;
                emit(&cmd_polytope_exp(&fx)?, &a.out);
            }
            PolytopeCmd::Contributing(a) => {
                let fx = load_fixture(&a.fixture)?;
                emit(&cmd_polytope_contributing(&fx)?, &a.out);
            }
            PolytopeCmd::Global(a) => {
                let fx = load_fixture(&a.fixture)?;
                emit(&cmd_polytope_global(&fx)?, &a.out);
            }
        },
        Command::Zeta(a) => {
            let fx = load_fixture(&a.fixture)?;
            let report = match a.realization {
                Realization::Top => cmd_zeta_top(&fx)?,
                Realization::Hodge => cmd_zeta_hodge(&fx)?,
                Realization::Limit => cmd_zeta_limit(&fx, a.chi.as_deref(), a.order_bound)?,
            };
            emit(&report, &a.out);
        }
        Command::Selftest => run_selftest()?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
