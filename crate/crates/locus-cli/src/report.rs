//! Executing resolved jobs and assembling deterministic reports.

use crate::job::{self, JobSpec, SchemaError};
use locus_core::global::{self, GlobalMode};
use locus_core::localize::{self, LocalizeOutcome};
use locus_core::points::{pts, Point};
use locus_core::sheaf;
use locus_core::EngineError;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct Report {
    pub job: JobSpec,
    pub verdict: String,
    pub output: Value,
}

#[derive(Debug)]
pub enum RunError {
    Schema(SchemaError),
    Engine { context: String, error: EngineError },
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Schema(e) => write!(f, "{e}"),
            RunError::Engine { context, error } => {
                write!(f, "engine error ({context}): {error}")
            }
        }
    }
}

impl From<SchemaError> for RunError {
    fn from(e: SchemaError) -> Self {
        RunError::Schema(e)
    }
}

fn engine(context: &str) -> impl Fn(EngineError) -> RunError + '_ {
    move |error| RunError::Engine {
        context: context.to_string(),
        error,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("engine types serialize")
}

fn point_at(points: &[Point], idx: usize) -> Result<Point, SchemaError> {
    points.get(idx).cloned().ok_or_else(|| SchemaError {
        field: "query_params.point".to_string(),
        message: format!("index {} out of range ({} points)", idx, points.len()),
    })
}

pub fn run_job(spec: &JobSpec) -> Result<Report, RunError> {
    let resolved = job::resolve(spec)?;
    let (verdict, output) = match spec.query.as_str() {
        "points" => {
            let points =
                pts(&resolved.instance, &resolved.object).map_err(engine("points"))?;
            let ids: Vec<String> = points.iter().map(|p| p.id_string()).collect();
            (
                format!("{} points", ids.len()),
                serde_json::json!({ "count": ids.len(), "points": ids }),
            )
        }
        "localize" => {
            let points =
                pts(&resolved.instance, &resolved.object).map_err(engine("points"))?;
            let idx = spec.query_params.point.ok_or_else(|| SchemaError {
                field: "query_params.point".to_string(),
                message: "localize requires a point index".to_string(),
            })?;
            let x = point_at(&points, idx)?;
            let outcome = localize::localize(
                &resolved.instance,
                &resolved.object,
                &x,
                &resolved.subcat,
            )
            .map_err(engine("localize"))?;
            (outcome_verdict(&outcome), to_value(&outcome))
        }
        "localize-multi" => {
            let points =
                pts(&resolved.instance, &resolved.object).map_err(engine("points"))?;
            let idxs = spec.query_params.points.clone().ok_or_else(|| {
                SchemaError {
                    field: "query_params.points".to_string(),
                    message: "localize-multi requires point indices".to_string(),
                }
            })?;
            let xs: Vec<Point> = idxs
                .iter()
                .map(|&i| point_at(&points, i))
                .collect::<Result<_, _>>()?;
            let outcome = localize::localize_multi(
                &resolved.instance,
                &resolved.object,
                &xs,
                &resolved.subcat,
            )
            .map_err(engine("localize-multi"))?;
            (outcome_verdict(&outcome), to_value(&outcome))
        }
        "global" | "affine" => {
            let gm = if spec.query == "affine" {
                GlobalMode::Single
            } else {
                job::resolve_global_mode(spec)?
            };
            let report = global::global_object(
                &resolved.instance,
                &resolved.object,
                &resolved.subcat,
                resolved.mode,
                gm,
            )
            .map_err(engine("global"))?;
            (format!("affine={}", report.affine), to_value(&report))
        }
        "scheme" => {
            let kind = job::resolve_topology(spec)?;
            let topo = global::make_topology(&resolved.instance, &resolved.object, &kind)
                .map_err(engine("topology"))?;
            let cover = job::resolve_cover(spec, &resolved)?;
            let report = global::scheme_check(
                &resolved.instance,
                &resolved.object,
                &resolved.subcat,
                &topo,
                &cover,
                resolved.mode,
            )
            .map_err(engine("scheme"))?;
            (format!("scheme={}", report.scheme), to_value(&report))
        }
        "lemma" => {
            let max_points = spec.query_params.max_points.unwrap_or(3);
            let report = global::lemma_compare(
                &resolved.instance,
                &resolved.object,
                &resolved.subcat,
                max_points,
            )
            .map_err(engine("lemma"))?;
            let verdict = match report.isomorphic {
                Some(b) => format!("isomorphic={b}"),
                None => "missing-connections".to_string(),
            };
            (verdict, to_value(&report))
        }
        "sheaf-compare" => {
            let ring = match &resolved.object {
                locus_core::Object::Ring(r) => r.clone(),
                _ => {
                    return Err(SchemaError {
                        field: "object".to_string(),
                        message: "sheaf-compare requires a ring object".to_string(),
                    }
                    .into())
                }
            };
            let f = spec.query_params.f.ok_or_else(|| SchemaError {
                field: "query_params.f".to_string(),
                message: "sheaf-compare requires a ring element index".to_string(),
            })?;
            if f as usize >= ring.size() {
                return Err(SchemaError {
                    field: "query_params.f".to_string(),
                    message: format!("element {} out of range ({})", f, ring.size()),
                }
                .into());
            }
            let spec_space = sheaf::build_spec(&ring, resolved.instance.residue_fields())
                .map_err(engine("spec"))?;
            let cmp = sheaf::compare_distinguished(&spec_space, f)
                .map_err(engine("sheaf-compare"))?;
            (format!("isomorphic={}", cmp.isomorphic), to_value(&cmp))
        }
        other => {
            return Err(SchemaError {
                field: "query".to_string(),
                message: format!("unknown query `{other}`"),
            }
            .into())
        }
    };
    Ok(Report {
        job: spec.clone(),
        verdict,
        output,
    })
}

fn outcome_verdict(outcome: &LocalizeOutcome) -> String {
    match outcome {
        LocalizeOutcome::Found(c) => {
            format!("found: {}", c.localized.canonical_name())
        }
        LocalizeOutcome::Ambiguous(cs) => format!("ambiguous: {} candidates", cs.len()),
        LocalizeOutcome::Absent { .. } => "absent".to_string(),
    }
}

/// Drop the bulky per-case evidence, keeping bounds and verdicts.
pub fn summarize(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("cases");
            map.remove("attempts");
            for (_, val) in map.iter_mut() {
                summarize(val);
            }
        }
        Value::Array(items) => {
            for item in items {
                summarize(item);
            }
        }
        _ => {}
    }
}

/// The serialized report payload, deterministic for identical jobs.
pub fn render(report: &Report, summary: bool) -> String {
    let mut value = to_value(report);
    if summary {
        if let Some(out) = value.get_mut("output") {
            summarize(out);
        }
    }
    let mut s = serde_json::to_string_pretty(&value).expect("reports serialize");
    s.push('\n');
    s
}
