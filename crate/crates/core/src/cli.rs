//! Command dispatch and report rendering for the `truncpoly` binary.
//!
//! Every command produces a JSON object (the source of truth) which is
//! either printed compactly with `--json` or rendered as plain text.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::endo::TruncatedEndo;
use crate::error::{Error, Result};
use crate::field::{CoefficientField, Scalar};
use crate::limit::{self, InversionOutcome, Ladder, LiftOptions, Normalization};
use crate::parse::{parse_field_descriptor, parse_map, parse_point, parse_truncation_descriptor};
use crate::points;
use crate::poly::PolyEndo;
use crate::trunc::TruncationSpec;

pub const REPORT_SCHEMA: &str = "truncpoly.report.v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    TruncInvert,
    Invert,
    Project,
    Points,
    Dim,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::TruncInvert => "trunc-invert",
            Command::Invert => "invert",
            Command::Project => "project",
            Command::Points => "points",
            Command::Dim => "dim",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Command::Check,
            Command::TruncInvert,
            Command::Invert,
            Command::Project,
            Command::Points,
            Command::Dim,
        ]
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| Error::InvalidDescriptor(format!("unknown command '{s}'")))
    }
}

/// Command options. `map` holds the text of the map document, not a path.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub field: Option<String>,
    pub map: Option<String>,
    pub point: Option<String>,
    pub level: Option<u32>,
    pub max_level: Option<u32>,
    pub degree_bound: Option<u64>,
    pub madic: Option<u32>,
    pub json: bool,
    pub vars: Option<usize>,
    pub spec: Option<String>,
    pub fibers: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

pub fn exit_code_for(err: &Error) -> i32 {
    if err.is_hypothesis_failure() {
        2
    } else {
        1
    }
}

pub fn run_command(cmd: Command, options: &Options) -> CommandOutput {
    match execute(cmd, options) {
        Ok(report) => CommandOutput {
            stdout: if options.json {
                format!("{report}\n")
            } else {
                render_text(&report)
            },
            stderr: String::new(),
            exit_code: 0,
        },
        Err(err) => {
            let exit_code = exit_code_for(&err);
            if options.json {
                let report = json!({
                    "schema": REPORT_SCHEMA,
                    "command": cmd.name(),
                    "error": { "kind": err.kind(), "message": err.to_string() },
                    "exit_code": exit_code,
                });
                CommandOutput {
                    stdout: format!("{report}\n"),
                    stderr: String::new(),
                    exit_code,
                }
            } else {
                CommandOutput {
                    stdout: String::new(),
                    stderr: format!("error: {err}\n"),
                    exit_code,
                }
            }
        }
    }
}

struct Workspace {
    field: CoefficientField,
    map: PolyEndo,
    point: Vec<Scalar>,
    point_given: bool,
}

impl Workspace {
    fn load(options: &Options) -> Result<Self> {
        let working = options.field.as_deref().map(parse_field_descriptor).transpose()?;
        let text = options
            .map
            .as_deref()
            .ok_or_else(|| Error::InvalidDescriptor("a map is required (--map FILE)".into()))?;
        let doc = parse_map(text, working.as_ref())?;
        let field = working.unwrap_or_else(|| doc.field.clone());
        let map = doc.map.change_field(&field)?;
        let n = map.nvars();
        let (point, point_given) = match (&options.point, &doc.basepoint) {
            (Some(text), _) => (parse_point(text, &field, n)?, true),
            (None, Some(a)) => (
                a.iter().map(|c| c.embed_into(&field)).collect::<Result<_>>()?,
                true,
            ),
            (None, None) => (vec![field.zero_scalar(); n], false),
        };
        Ok(Self {
            field,
            map,
            point,
            point_given,
        })
    }

    fn ladder(&self, options: &Options) -> Ladder {
        options
            .madic
            .map(|base| Ladder::MAdic { base })
            .unwrap_or_else(|| Ladder::for_field(&self.field))
    }

    /// The map and base point to work with: the map itself when it fixes the
    /// point, otherwise (for an explicitly requested point) its translate
    /// that fixes the origin.
    fn normalized(&self) -> Result<(PolyEndo, Vec<Scalar>, Option<Normalization>)> {
        if self.map.eval_point(&self.point)? == self.point {
            return Ok((self.map.clone(), self.point.clone(), None));
        }
        if !self.point_given {
            let image = self.map.eval_point(&self.point)?;
            let index = image.iter().zip(&self.point).position(|(u, v)| u != v).unwrap_or(0);
            return Err(Error::BasePointNotFixed { index: index + 1 });
        }
        let norm = limit::translate_normalize(&self.map, &self.point)?;
        let origin = vec![self.field.zero_scalar(); self.map.nvars()];
        Ok((norm.map.clone(), origin, Some(norm)))
    }

    fn header(&self, cmd: Command) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("schema".into(), json!(REPORT_SCHEMA));
        m.insert("command".into(), json!(cmd.name()));
        m.insert("field".into(), json!(self.field.descriptor()));
        m.insert("n".into(), json!(self.map.nvars()));
        m.insert("map".into(), json!(self.map.to_string()));
        m.insert("point".into(), point_json(&self.point));
        m
    }
}

fn point_json(p: &[Scalar]) -> Value {
    Value::Array(p.iter().map(|c| json!(c.to_string())).collect())
}

fn matrix_json(m: &[Vec<Scalar>]) -> Value {
    Value::Array(m.iter().map(|row| point_json(row)).collect())
}

fn count_json(v: u128) -> Value {
    u64::try_from(v).map_or_else(|_| json!(v.to_string()), |x| json!(x))
}

fn normalization_json(norm: &Option<Normalization>) -> Value {
    match norm {
        None => Value::Null,
        Some(n) => json!({
            "image_point": point_json(&n.image_point),
            "map": n.map.to_string(),
        }),
    }
}

fn endo_images_json(e: &TruncatedEndo) -> Value {
    Value::Array(e.images().iter().map(|img| json!(img.to_string())).collect())
}

fn execute(cmd: Command, options: &Options) -> Result<Value> {
    if cmd == Command::Dim {
        return dim(options);
    }
    let ws = Workspace::load(options)?;
    let mut report = ws.header(cmd);
    match cmd {
        Command::Check => check(&ws, options, &mut report)?,
        Command::TruncInvert => trunc_invert(&ws, options, &mut report)?,
        Command::Invert => invert(&ws, options, &mut report)?,
        Command::Project => project(&ws, options, &mut report)?,
        Command::Points => points_report(&ws, options, &mut report)?,
        Command::Dim => unreachable!("handled above"),
    }
    Ok(Value::Object(report))
}

fn check(ws: &Workspace, options: &Options, report: &mut Map<String, Value>) -> Result<()> {
    let (map, point, norm) = ws.normalized()?;
    let level = options.level.unwrap_or(1);
    let sigma = limit::project_endo(&map, &point, level, ws.ladder(options))?;
    let verdict = sigma.verdict();
    let jac = ws.map.jacobian_constant_check();
    report.insert("normalization".into(), normalization_json(&norm));
    report.insert("level".into(), json!(level));
    report.insert("truncation".into(), json!(sigma.spec().descriptor()));
    report.insert("is_automorphism".into(), json!(verdict.is_automorphism));
    report.insert("linear_part".into(), matrix_json(&verdict.linear_part));
    report.insert("linear_det".into(), json!(verdict.linear_det.to_string()));
    report.insert("jacobian_det".into(), json!(verdict.jacobian_det.to_string()));
    report.insert("determinant_is_unit".into(), json!(verdict.determinant_is_unit));
    report.insert(
        "jacobian_constant_check".into(),
        json!({ "is_constant_unit": jac.is_constant_unit, "value": jac.value.to_string() }),
    );
    Ok(())
}

fn trunc_invert(ws: &Workspace, options: &Options, report: &mut Map<String, Value>) -> Result<()> {
    let (map, point, norm) = ws.normalized()?;
    let level = options.level.unwrap_or(1);
    let sigma = limit::project_endo(&map, &point, level, ws.ladder(options))?;
    let (inverse, rounds) = sigma.invert_with_rounds()?;
    report.insert("normalization".into(), normalization_json(&norm));
    report.insert("level".into(), json!(level));
    report.insert("truncation".into(), json!(sigma.spec().descriptor()));
    report.insert("truncated_map".into(), endo_images_json(&sigma));
    report.insert("inverse".into(), endo_images_json(&inverse));
    report.insert("rounds".into(), json!(rounds));
    Ok(())
}

fn invert(ws: &Workspace, options: &Options, report: &mut Map<String, Value>) -> Result<()> {
    let (map, point, norm) = ws.normalized()?;
    let lift = LiftOptions {
        max_level: options.max_level.unwrap_or(LiftOptions::default().max_level),
        degree_bound: options.degree_bound,
        ladder: Some(ws.ladder(options)),
    };
    report.insert("normalization".into(), normalization_json(&norm));
    match limit::lift_invert(&map, &point, &lift)? {
        InversionOutcome::Stabilized { inverse, level } => {
            let inverse = match &norm {
                Some(n) => n.pull_back(&inverse)?,
                None => inverse,
            };
            report.insert("status".into(), json!("stabilized"));
            report.insert("level".into(), json!(level));
            report.insert("inverse".into(), json!(inverse.to_string()));
        }
        InversionOutcome::NotStabilized {
            max_level,
            last_candidate,
            candidate_degrees,
        } => {
            report.insert("status".into(), json!("not_stabilized"));
            report.insert("max_level".into(), json!(max_level));
            report.insert("candidate_degrees".into(), json!(candidate_degrees));
            report.insert("last_candidate".into(), json!(last_candidate.to_string()));
        }
    }
    Ok(())
}

fn project(ws: &Workspace, options: &Options, report: &mut Map<String, Value>) -> Result<()> {
    let (map, point, norm) = ws.normalized()?;
    let levels = options.max_level.or(options.level).unwrap_or(3);
    let family = limit::build_family(&map, &point, levels, ws.ladder(options))?;
    report.insert("normalization".into(), normalization_json(&norm));
    report.insert(
        "levels".into(),
        Value::Array(
            family
                .levels
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    json!({
                        "level": i + 1,
                        "truncation": e.spec().descriptor(),
                        "images": endo_images_json(e),
                    })
                })
                .collect(),
        ),
    );
    report.insert("coherent".into(), json!(limit::check_coherence(&family)));
    Ok(())
}

fn points_report(ws: &Workspace, options: &Options, report: &mut Map<String, Value>) -> Result<()> {
    let r = points::enumerate_report(&ws.map, &ws.field, options.fibers)?;
    report.insert("domain_size".into(), count_json(r.domain_size));
    report.insert("image_size".into(), count_json(r.image_size));
    report.insert("injective".into(), json!(r.injective));
    report.insert("surjective".into(), json!(r.surjective));
    report.insert(
        "fixed_points".into(),
        Value::Array(r.fixed_points.iter().map(|p| point_json(p)).collect()),
    );
    if let Some(fibers) = &r.fibers {
        report.insert(
            "fibers".into(),
            Value::Array(
                fibers
                    .iter()
                    .map(|(target, pre)| {
                        json!({
                            "point": point_json(target),
                            "preimages": pre.iter().map(|p| point_json(p)).collect::<Vec<_>>(),
                        })
                    })
                    .collect(),
            ),
        );
    }
    if ws.point_given {
        let over = points::maximal_ideal_image(&ws.map, &ws.point, &ws.field)?;
        report.insert(
            "ideal_image".into(),
            Value::Array(over.iter().map(|p| point_json(p)).collect()),
        );
    }
    Ok(())
}

fn dim(options: &Options) -> Result<Value> {
    let working = options.field.as_deref().map(parse_field_descriptor).transpose()?;
    let spec = match &options.spec {
        Some(text) => parse_truncation_descriptor(text, working.as_ref())?,
        None => {
            let (field, n) = match (&options.map, working) {
                (Some(text), working) => {
                    let doc = parse_map(text, working.as_ref())?;
                    (working.unwrap_or(doc.field), doc.nvars)
                }
                (None, Some(field)) => {
                    let n = options.vars.ok_or_else(|| {
                        Error::InvalidDescriptor("dim needs --vars, --map or --spec".into())
                    })?;
                    (field, n)
                }
                (None, None) => {
                    return Err(Error::InvalidDescriptor("dim needs --field, --map or --spec".into()))
                }
            };
            let n = options.vars.unwrap_or(n);
            let point = match &options.point {
                Some(text) => parse_point(text, &field, n)?,
                None => vec![field.zero_scalar(); n],
            };
            let ladder = options
                .madic
                .map(|base| Ladder::MAdic { base })
                .unwrap_or_else(|| Ladder::for_field(&field));
            ladder.spec_at(&field, &point, options.level.unwrap_or(1))?
        }
    };
    Ok(dim_json(&spec))
}

fn dim_json(spec: &TruncationSpec) -> Value {
    json!({
        "schema": REPORT_SCHEMA,
        "command": "dim",
        "field": spec.field().descriptor(),
        "n": spec.nvars(),
        "truncation": spec.descriptor(),
        "quotient_dimension": count_json(spec.quotient_dimension()),
        "nilpotency_index": spec.nilpotency_index(),
    })
}

fn text_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("({})", items.iter().map(text_scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn yes_no(v: &Value) -> &'static str {
    if v.as_bool() == Some(true) {
        "yes"
    } else {
        "no"
    }
}

/// Plain-text rendering of a report; carries the same fields as the JSON.
fn render_text(report: &Value) -> String {
    let mut out = String::new();
    let get = |k: &str| report.get(k).cloned().unwrap_or(Value::Null);
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    let command = get("command");
    line(format!("field: {}", text_scalar(&get("field"))));
    if let Some(map) = report.get("map") {
        line(format!("map: {}", text_scalar(map)));
    }
    if let Some(point) = report.get("point") {
        line(format!("point: {}", text_scalar(point)));
    }
    if let Some(Value::Object(norm)) = report.get("normalization") {
        line(format!(
            "normalized via image point {}: {}",
            text_scalar(&norm["image_point"]),
            text_scalar(&norm["map"])
        ));
    }
    match command.as_str().unwrap_or_default() {
        "check" => {
            line(format!("truncation: {}", text_scalar(&get("truncation"))));
            line(format!("automorphism: {}", yes_no(&get("is_automorphism"))));
            let rows: Vec<String> = get("linear_part")
                .as_array()
                .map(|rows| rows.iter().map(text_scalar).collect())
                .unwrap_or_default();
            line(format!("linear part: [{}]", rows.join(", ")));
            line(format!("linear det: {}", text_scalar(&get("linear_det"))));
            line(format!(
                "jacobian det (truncated): {} (unit: {})",
                text_scalar(&get("jacobian_det")),
                yes_no(&get("determinant_is_unit"))
            ));
            let jac = get("jacobian_constant_check");
            line(format!(
                "jacobian det: {} (nonzero constant: {})",
                text_scalar(&jac["value"]),
                yes_no(&jac["is_constant_unit"])
            ));
        }
        "trunc-invert" => {
            line(format!("truncation: {}", text_scalar(&get("truncation"))));
            for (key, label) in [("truncated_map", "map"), ("inverse", "inverse")] {
                let images: Vec<String> = get(key)
                    .as_array()
                    .map(|imgs| {
                        imgs.iter()
                            .enumerate()
                            .map(|(i, v)| format!("y{} -> {}", i + 1, text_scalar(v)))
                            .collect()
                    })
                    .unwrap_or_default();
                line(format!("{label}: {}", images.join(", ")));
            }
            line(format!("correction rounds: {}", get("rounds")));
        }
        "invert" => {
            if get("status") == "stabilized" {
                line(format!("stabilized at level {}", get("level")));
                line(text_scalar(&get("inverse")));
            } else {
                line(format!("not stabilized (stopped at level {})", get("max_level")));
                let degrees: Vec<String> = get("candidate_degrees")
                    .as_array()
                    .map(|d| d.iter().map(|v| v.to_string()).collect())
                    .unwrap_or_default();
                line(format!("candidate degrees: {}", degrees.join(", ")));
                line(format!("last candidate: {}", text_scalar(&get("last_candidate"))));
            }
        }
        "project" => {
            for lvl in get("levels").as_array().into_iter().flatten() {
                let images: Vec<String> = lvl["images"]
                    .as_array()
                    .map(|imgs| {
                        imgs.iter()
                            .enumerate()
                            .map(|(i, v)| format!("y{} -> {}", i + 1, text_scalar(v)))
                            .collect()
                    })
                    .unwrap_or_default();
                line(format!(
                    "level {} [{}]: {}",
                    lvl["level"],
                    text_scalar(&lvl["truncation"]),
                    images.join(", ")
                ));
            }
            line(format!("coherent: {}", yes_no(&get("coherent"))));
        }
        "points" => {
            line(format!("domain size: {}", text_scalar(&get("domain_size"))));
            line(format!("image size: {}", text_scalar(&get("image_size"))));
            line(format!("injective: {}", yes_no(&get("injective"))));
            line(format!("surjective: {}", yes_no(&get("surjective"))));
            let fixed: Vec<String> = get("fixed_points")
                .as_array()
                .map(|ps| ps.iter().map(text_scalar).collect())
                .unwrap_or_default();
            if fixed.is_empty() {
                line("fixed points: none".into());
            } else {
                line(format!("fixed points: {}", fixed.join(" ")));
            }
            if let Some(fibers) = report.get("fibers").and_then(Value::as_array) {
                line("fibers:".into());
                for f in fibers {
                    let pre: Vec<String> = f["preimages"]
                        .as_array()
                        .map(|ps| ps.iter().map(text_scalar).collect())
                        .unwrap_or_default();
                    line(format!("  {} <- {}", text_scalar(&f["point"]), pre.join(" ")));
                }
            }
            if let Some(over) = report.get("ideal_image").and_then(Value::as_array) {
                let pts: Vec<String> = over.iter().map(text_scalar).collect();
                if pts.is_empty() {
                    line("points mapping to the base point: none".into());
                } else {
                    line(format!("points mapping to the base point: {}", pts.join(" ")));
                }
            }
        }
        "dim" => {
            line(format!("n: {}", get("n")));
            line(format!("truncation: {}", text_scalar(&get("truncation"))));
            line(format!("quotient dimension: {}", text_scalar(&get("quotient_dimension"))));
            line(format!("nilpotency index: {}", get("nilpotency_index")));
        }
        _ => {}
    }
    out
}
