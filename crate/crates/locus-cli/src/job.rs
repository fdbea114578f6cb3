//! Job-file schema and its translation into engine inputs.
//!
//! Jobs are JSON documents naming a category instance, an object, a
//! base-pointed subcategory, a query, and its parameters. Schema
//! problems are reported as `SchemaError` with the offending field;
//! everything downstream is an engine error.

use locus_core::fields::FieldTable;
use locus_core::global::{GlobalMode, Mode, TopologyKind};
use locus_core::instance::Instance;
use locus_core::localize::{BasePointedSubcat, SubcatKind};
use locus_core::morphism::{MapData, Morphism};
use locus_core::object::{AbObj, Object, SetObj, VectObj};
use locus_core::ring::{self, RingSpec};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug)]
pub struct SchemaError {
    pub field: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "schema error in `{}`: {}", self.field, self.message)
    }
}

impl std::error::Error for SchemaError {}

fn schema_err<T>(field: &str, message: impl Into<String>) -> Result<T, SchemaError> {
    Err(SchemaError {
        field: field.to_string(),
        message: message.into(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CategorySpec {
    Set,
    Ab,
    Vect {
        field: u64,
    },
    Ring {
        /// Residue-field orders; omitted = the object ring's own residue
        /// fields.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        residue_fields: Option<Vec<u64>>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectSpec {
    Set { size: usize },
    Ab { orders: Vec<u64> },
    Vect { dim: u32 },
    Ring(RingSpec),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubcatSpec {
    /// singleton-sets | prime-cyclic | spanned | local-rings
    pub kind: String,
    pub bound: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MapSpec {
    Table(Vec<u32>),
    AbMatrix(Vec<u64>),
    VectMatrix(Vec<u64>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    /// The sub-object candidate U.
    pub object: ObjectSpec,
    /// Covariant: U -> X. Contravariant rings: the ring map X -> U.
    pub map: MapSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverSpec {
    Identity,
    #[serde(untagged)]
    Arrows(Vec<ArrowSpec>),
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryParams {
    /// `localize`: index into the point enumeration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<usize>,
    /// `localize-multi`: indices into the point enumeration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<usize>>,
    /// `global`: single | associative.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global_mode: Option<String>,
    /// `global` (associative) and `lemma`: largest point set considered.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_points: Option<usize>,
    /// `scheme`: discrete | zariski.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<String>,
    /// `scheme`: the covering arrows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverSpec>,
    /// `sheaf-compare`: the ring element f of D(f), as an element index.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub category: CategorySpec,
    pub object: ObjectSpec,
    pub subcategory: SubcatSpec,
    /// points | localize | localize-multi | global | affine | scheme |
    /// lemma | sheaf-compare
    pub query: String,
    #[serde(default)]
    pub query_params: QueryParams,
    /// strict | permissive (default strict)
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// Optional global size bound overriding the subcategory bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
}

pub const QUERIES: &[&str] = &[
    "points",
    "localize",
    "localize-multi",
    "global",
    "affine",
    "scheme",
    "lemma",
    "sheaf-compare",
];

/// Fully resolved engine inputs for one job.
pub struct ResolvedJob {
    pub instance: Instance,
    pub object: Object,
    pub subcat: BasePointedSubcat,
    pub mode: Mode,
}

pub fn resolve(job: &JobSpec) -> Result<ResolvedJob, SchemaError> {
    if !QUERIES.contains(&job.query.as_str()) {
        return schema_err(
            "query",
            format!("unknown query `{}`; expected one of {:?}", job.query, QUERIES),
        );
    }
    let bound = job.bound.unwrap_or(job.subcategory.bound);
    let object = match &job.object {
        ObjectSpec::Set { size } => Object::Set(SetObj::canonical(*size)),
        ObjectSpec::Ab { orders } => match AbObj::new(orders.clone()) {
            Ok(g) => Object::Ab(g),
            Err(e) => return schema_err("object.ab.orders", format!("{e}")),
        },
        ObjectSpec::Vect { dim } => {
            let CategorySpec::Vect { field } = &job.category else {
                return schema_err("object", "vect object requires the vect category");
            };
            match FieldTable::default_for(*field) {
                Ok(f) => Object::Vect(VectObj::new(f, *dim)),
                Err(e) => return schema_err("category.field", format!("{e}")),
            }
        }
        ObjectSpec::Ring(spec) => match ring::build_ring(spec, bound.max(64)) {
            Ok(r) => Object::Ring(r),
            Err(e) => return schema_err("object.ring", format!("{e}")),
        },
    };
    let instance = match &job.category {
        CategorySpec::Set => {
            if !matches!(object, Object::Set(_)) {
                return schema_err("object", "set category requires a set object");
            }
            Instance::Set
        }
        CategorySpec::Ab => {
            if !matches!(object, Object::Ab(_)) {
                return schema_err("object", "ab category requires an ab object");
            }
            Instance::Ab
        }
        CategorySpec::Vect { field } => {
            if !matches!(object, Object::Vect(_)) {
                return schema_err("object", "vect category requires a vect object");
            }
            match FieldTable::default_for(*field) {
                Ok(f) => Instance::Vect(f),
                Err(e) => return schema_err("category.field", format!("{e}")),
            }
        }
        CategorySpec::Ring { residue_fields } => {
            let Object::Ring(r) = &object else {
                return schema_err("object", "ring category requires a ring object");
            };
            match residue_fields {
                None => Instance::ring_for(r),
                Some(orders) => {
                    let mut fields = Vec::new();
                    for &q in orders {
                        match FieldTable::default_for(q) {
                            Ok(f) => fields.push(f),
                            Err(e) => {
                                return schema_err(
                                    "category.residue_fields",
                                    format!("order {q}: {e}"),
                                )
                            }
                        }
                    }
                    fields.sort();
                    fields.dedup();
                    Instance::Ring {
                        residue_fields: fields,
                    }
                }
            }
        }
    };
    let kind = match job.subcategory.kind.as_str() {
        "singleton-sets" => SubcatKind::SingletonSets,
        "prime-cyclic" => SubcatKind::PrimeCyclic,
        "spanned" => SubcatKind::Spanned,
        "local-rings" => SubcatKind::LocalRings,
        other => {
            return schema_err(
                "subcategory.kind",
                format!(
                    "unknown kind `{other}`; expected singleton-sets, prime-cyclic, spanned, or local-rings"
                ),
            )
        }
    };
    let mode = match job.mode.as_deref() {
        None | Some("strict") => Mode::Strict,
        Some("permissive") => Mode::Permissive,
        Some(other) => {
            return schema_err("mode", format!("unknown mode `{other}`"));
        }
    };
    Ok(ResolvedJob {
        instance,
        object,
        subcat: BasePointedSubcat { kind, bound },
        mode,
    })
}

pub fn resolve_global_mode(job: &JobSpec) -> Result<GlobalMode, SchemaError> {
    match job.query_params.global_mode.as_deref() {
        None | Some("single") => Ok(GlobalMode::Single),
        Some("associative") => Ok(GlobalMode::Associative {
            max_points: job.query_params.max_points.unwrap_or(2),
        }),
        Some(other) => schema_err(
            "query_params.global_mode",
            format!("unknown global mode `{other}`"),
        ),
    }
}

pub fn resolve_topology(job: &JobSpec) -> Result<TopologyKind, SchemaError> {
    match job.query_params.topology.as_deref() {
        None | Some("discrete") => Ok(TopologyKind::Discrete),
        Some("zariski") => Ok(TopologyKind::Zariski),
        Some(other) => schema_err(
            "query_params.topology",
            format!("unknown topology `{other}`"),
        ),
    }
}

/// Build the covering arrows for a scheme query.
pub fn resolve_cover(
    job: &JobSpec,
    resolved: &ResolvedJob,
) -> Result<Vec<Morphism>, SchemaError> {
    let spec = job
        .query_params
        .cover
        .clone()
        .unwrap_or(CoverSpec::Identity);
    match spec {
        CoverSpec::Identity => Ok(vec![Morphism::identity(&resolved.object)]),
        CoverSpec::Arrows(arrows) => {
            let mut out = Vec::new();
            for (i, arrow) in arrows.iter().enumerate() {
                let field = format!("query_params.cover[{i}]");
                let u_job = JobSpec {
                    object: arrow.object.clone(),
                    ..job.clone()
                };
                let u_obj = resolve(&u_job)?.object;
                let map = match &arrow.map {
                    MapSpec::Table(t) => MapData::Table(t.clone()),
                    MapSpec::AbMatrix(m) => MapData::AbMatrix(m.clone()),
                    MapSpec::VectMatrix(m) => MapData::VectMatrix(m.clone()),
                };
                // covariant arrows land in X; ring maps start at X
                let (dom, cod) = match resolved.instance {
                    Instance::Ring { .. } => (resolved.object.clone(), u_obj),
                    _ => (u_obj, resolved.object.clone()),
                };
                let m = Morphism { dom, cod, map };
                if !m.is_valid() {
                    return schema_err(&field, "map is not a morphism of the instance");
                }
                out.push(m);
            }
            Ok(out)
        }
    }
}
