//! The global object, affinity, topologies on point sets, sub-objects,
//! the scheme verdict, and the coproduct-versus-colimit comparison.
//!
//! Covariant: O(X) is the coproduct of the localized objects, γ: O(X)→X
//! the unique cocone mediator of the attachments ρ, and 𝒪(X) the middle
//! object of the coimage factorization of γ. Contravariant rings run the
//! dual construction: O(X) = product, γ: X→O(X), 𝒪(X) = image middle.
//! X is affine when 𝒪(X) ≅ X.

use crate::error::{EngineError, Result};
use crate::factor::{self, Factorization};
use crate::homs;
use crate::instance::{Instance, Orientation};
use crate::iso::find_isomorphism;
use crate::limits::{self, Diagram, Fan};
use crate::localize::{
    localize_multi_with, BasePointedSubcat, LocalizationCertificate, LocalizeOutcome,
};
use crate::mediator;
use crate::morphism::Morphism;
use crate::object::Object;
use crate::points::{pts, Point};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Every point must localize; failure is an error.
    Strict,
    /// Points without a localization are skipped and reported.
    Permissive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GlobalMode {
    /// One component per point.
    Single,
    /// One component per nonempty point set of at most `max_points`
    /// points; larger sets are reported as skipped.
    Associative { max_points: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GlobalComponent {
    /// Identifiers of the points this component localizes at.
    pub points: Vec<String>,
    pub certificate: LocalizationCertificate,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GlobalObjectReport {
    pub object: String,
    pub components: Vec<GlobalComponent>,
    pub skipped_points: Vec<String>,
    /// O(X): coproduct (covariant) / product (contravariant) of the
    /// component objects, with its structure legs.
    /// `None` when the product's size exceeds the materialization cap;
    /// 𝒪(X) is then computed directly as the quotient of X by the
    /// intersection of the attachment kernels (the image middle up to
    /// isomorphism), and `legs`, `gamma`, `factorization` are omitted.
    pub o_of_x: Option<Object>,
    pub legs: Vec<Morphism>,
    pub gamma: Option<Morphism>,
    pub factorization: Option<Factorization>,
    /// 𝒪(X): the middle object of the factorization.
    pub script_o: Object,
    pub affine: bool,
    pub iso: Option<Morphism>,
}

/// Guard for power-set-sized enumerations over points.
const POINT_SET_CAP: usize = 20;

/// Largest product size whose multiplication tables are materialized.
const PRODUCT_MATERIALIZE_CAP: u128 = 1 << 10;

fn point_set_id(points: &[Point]) -> String {
    let ids: Vec<String> = points.iter().map(|p| p.id_string()).collect();
    alloc::format!("{{{}}}", ids.join(", "))
}

/// Localize at one point set under the chosen mode. `Ok(None)` means the
/// set was skipped (permissive mode).
fn component_for(
    instance: &Instance,
    x_obj: &Object,
    set: &[Point],
    subcat: &BasePointedSubcat,
    mode: Mode,
) -> Result<Option<LocalizationCertificate>> {
    match localize_multi_with(instance, x_obj, set, subcat, true)? {
        LocalizeOutcome::Found(cert) => Ok(Some(cert)),
        LocalizeOutcome::Ambiguous(_) => match mode {
            Mode::Strict => Err(EngineError::NotRepresentable {
                context: alloc::format!(
                    "ambiguous localization at {}",
                    point_set_id(set)
                ),
            }),
            Mode::Permissive => Ok(None),
        },
        LocalizeOutcome::Absent { .. } => match mode {
            Mode::Strict => Err(EngineError::NoLocalization {
                point: point_set_id(set),
                reason: String::from(
                    "no subcategory member satisfies the universal property",
                ),
            }),
            Mode::Permissive => Ok(None),
        },
    }
}

pub fn global_object(
    instance: &Instance,
    x_obj: &Object,
    subcat: &BasePointedSubcat,
    mode: Mode,
    global_mode: GlobalMode,
) -> Result<GlobalObjectReport> {
    let points = pts(instance, x_obj)?;
    if points.is_empty() {
        return Err(EngineError::EmptyPointSet {
            object: x_obj.canonical_name(),
        });
    }
    let mut sets: Vec<Vec<Point>> = Vec::new();
    let mut skipped: Vec<String> = Vec::new();
    match global_mode {
        GlobalMode::Single => {
            for p in &points {
                sets.push(alloc::vec![p.clone()]);
            }
        }
        GlobalMode::Associative { max_points } => {
            if points.len() > POINT_SET_CAP {
                return Err(EngineError::SizeBoundExceeded {
                    needed: points.len() as u64,
                    bound: POINT_SET_CAP as u64,
                });
            }
            // nonempty subsets ordered by size, then by position
            let mut masks: Vec<u32> = (1u32..(1 << points.len())).collect();
            masks.sort_by_key(|m| (m.count_ones(), *m));
            for m in masks {
                let set: Vec<Point> = points
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, p)| p.clone())
                    .collect();
                if set.len() > max_points {
                    skipped.push(point_set_id(&set));
                } else {
                    sets.push(set);
                }
            }
        }
    }
    let mut components: Vec<GlobalComponent> = Vec::new();
    for set in &sets {
        match component_for(instance, x_obj, set, subcat, mode) {
            Ok(Some(cert)) => components.push(GlobalComponent {
                points: set.iter().map(|p| p.id_string()).collect(),
                certificate: cert,
            }),
            Ok(None) => skipped.push(point_set_id(set)),
            // keep scanning so the error names every failing point set
            Err(EngineError::NoLocalization { .. }) if mode == Mode::Strict => {
                skipped.push(point_set_id(set))
            }
            Err(e) => return Err(e),
        }
    }
    if mode == Mode::Strict && !skipped.is_empty() {
        return Err(EngineError::NoLocalization {
            point: skipped.join(", "),
            reason: String::from("no subcategory member satisfies the universal property"),
        });
    }
    if components.is_empty() {
        return Err(EngineError::AllPointsSkipped);
    }
    let parts: Vec<Object> = components
        .iter()
        .map(|c| c.certificate.localized.clone())
        .collect();
    let rhos: Vec<Morphism> = components
        .iter()
        .map(|c| c.certificate.rho.clone())
        .collect();
    let combined_size: u128 = parts.iter().map(|p| p.size() as u128).product();
    let (fan, gamma, fac, script_o) = match instance.orientation() {
        Orientation::Covariant => {
            if combined_size > u64::MAX as u128 {
                return Err(EngineError::SizeBoundExceeded {
                    needed: u64::MAX,
                    bound: u64::MAX,
                });
            }
            let fan = limits::coproduct(&parts)?;
            let mut ms = mediator::cofan_mediators(&fan, &rhos, x_obj)?;
            assert_eq!(ms.len(), 1, "coproduct mediator must be unique");
            let gamma = ms.remove(0);
            let fac = factor::coimage(&gamma)?;
            let script_o = fac.mid.clone();
            (Some(fan), Some(gamma), Some(fac), script_o)
        }
        Orientation::Contravariant => {
            if combined_size > PRODUCT_MATERIALIZE_CAP {
                // too large for explicit tables: 𝒪(X) = X / ∩ ker ρ_x,
                // isomorphic to the image middle of γ
                let a = x_obj.as_ring();
                let kernel: Vec<u32> = (0..a.size() as u32)
                    .filter(|&e| {
                        rhos.iter().all(|rho| {
                            rho.apply(&alloc::vec![e as u64])[0]
                                == rho.cod.as_ring().zero as u64
                        })
                    })
                    .collect();
                let (q, _) = crate::ring::quotient_by_ideal(a, &kernel);
                (None, None, None, Object::Ring(q))
            } else {
                let fan = limits::product(&parts)?;
                let mut ms = mediator::fan_mediators(&fan, &rhos, x_obj)?;
                assert_eq!(ms.len(), 1, "product mediator must be unique");
                let gamma = ms.remove(0);
                let fac = factor::image(&gamma)?;
                let script_o = fac.mid.clone();
                (Some(fan), Some(gamma), Some(fac), script_o)
            }
        }
    };
    let iso = find_isomorphism(&script_o, x_obj)?;
    let (o_of_x, legs) = match fan {
        Some(f) => (Some(f.apex), f.legs),
        None => (None, Vec::new()),
    };
    Ok(GlobalObjectReport {
        object: x_obj.canonical_name(),
        components,
        skipped_points: skipped,
        o_of_x,
        legs,
        gamma,
        affine: iso.is_some(),
        iso,
        script_o,
        factorization: fac,
    })
}

// ---------------------------------------------------------------------
// Topologies on the point set
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TopologyKind {
    /// Every subset of points is open.
    Discrete,
    /// Contravariant rings only: opens generated by D(f) = {x : x(f) ≠ 0}.
    Zariski,
    /// A user-supplied list of opens (point indices); with `cover_only`
    /// the list only has to cover the point set.
    Explicit {
        opens: Vec<Vec<usize>>,
        cover_only: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Topology {
    pub point_ids: Vec<String>,
    /// Opens as sorted lists of indices into `point_ids`, ordered by
    /// (size, contents).
    pub opens: Vec<Vec<usize>>,
    pub cover_only: bool,
}

impl Topology {
    pub fn is_open(&self, set: &[usize]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        self.opens.contains(&s)
    }
}

fn mask_to_set(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

fn finish_opens(mut masks: Vec<u32>, n: usize, point_ids: Vec<String>, cover_only: bool) -> Topology {
    masks.sort_unstable();
    masks.dedup();
    let mut opens: Vec<Vec<usize>> = masks.into_iter().map(|m| mask_to_set(m, n)).collect();
    opens.sort_by_key(|s| (s.len(), s.clone()));
    Topology {
        point_ids,
        opens,
        cover_only,
    }
}

pub fn make_topology(
    instance: &Instance,
    x_obj: &Object,
    kind: &TopologyKind,
) -> Result<Topology> {
    let points = pts(instance, x_obj)?;
    let n = points.len();
    if n > POINT_SET_CAP {
        return Err(EngineError::SizeBoundExceeded {
            needed: n as u64,
            bound: POINT_SET_CAP as u64,
        });
    }
    let point_ids: Vec<String> = points.iter().map(|p| p.id_string()).collect();
    match kind {
        TopologyKind::Discrete => {
            let masks: Vec<u32> = (0u32..(1u32 << n)).collect();
            Ok(finish_opens(masks, n, point_ids, false))
        }
        TopologyKind::Zariski => {
            if instance.orientation() != Orientation::Contravariant {
                return Err(EngineError::Unsupported {
                    what: String::from("zariski topology outside the ring instance"),
                });
            }
            // basis D(f) over all f, then close under union (intersection
            // is already covered: D(f) ∩ D(g) = D(fg))
            let mut basis: Vec<u32> = alloc::vec![0];
            for f in 0..x_obj.size() {
                let fe = alloc::vec![f];
                let mut mask = 0u32;
                for (i, p) in points.iter().enumerate() {
                    let Point::ResidueArrow { base, arrow } = p else {
                        unreachable!()
                    };
                    let zero = crate::ring::field_ring(base).zero as u64;
                    if arrow.apply(&fe)[0] != zero {
                        mask |= 1 << i;
                    }
                }
                basis.push(mask);
            }
            basis.sort_unstable();
            basis.dedup();
            let mut opens = basis.clone();
            loop {
                let before = opens.len();
                let snapshot = opens.clone();
                for &a in &snapshot {
                    for &b in &snapshot {
                        let (u, i) = (a | b, a & b);
                        if !opens.contains(&u) {
                            opens.push(u);
                        }
                        if !opens.contains(&i) {
                            opens.push(i);
                        }
                    }
                }
                opens.sort_unstable();
                opens.dedup();
                if opens.len() == before {
                    break;
                }
            }
            Ok(finish_opens(opens, n, point_ids, false))
        }
        TopologyKind::Explicit { opens, cover_only } => {
            let mut masks: Vec<u32> = Vec::new();
            for open in opens {
                let mut mask = 0u32;
                for &i in open {
                    if i >= n {
                        return Err(EngineError::AxiomViolation {
                            law: String::from("open sets index existing points"),
                            witness: alloc::format!("index {} of {}", i, n),
                        });
                    }
                    mask |= 1 << i;
                }
                masks.push(mask);
            }
            masks.sort_unstable();
            masks.dedup();
            let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
            let union_all = masks.iter().fold(0u32, |acc, m| acc | m);
            if *cover_only {
                if union_all != full {
                    return Err(EngineError::AxiomViolation {
                        law: String::from("covering family covers every point"),
                        witness: alloc::format!("missing mask {:b}", full & !union_all),
                    });
                }
                return Ok(finish_opens(masks, n, point_ids, true));
            }
            if !masks.contains(&0) || !masks.contains(&full) {
                return Err(EngineError::AxiomViolation {
                    law: String::from("topology contains the empty and full sets"),
                    witness: String::from("boundary sets missing"),
                });
            }
            for &a in &masks {
                for &b in &masks {
                    if !masks.contains(&(a | b)) || !masks.contains(&(a & b)) {
                        return Err(EngineError::AxiomViolation {
                            law: String::from("topology closed under union and intersection"),
                            witness: alloc::format!("{:b}, {:b}", a, b),
                        });
                    }
                }
            }
            Ok(finish_opens(masks, n, point_ids, false))
        }
    }
}

// ---------------------------------------------------------------------
// Sub-objects and the scheme verdict
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubObjectWitness {
    /// Pairs (point of U, its image point of X).
    pub point_map: Vec<(String, String)>,
    /// Image as indices into the topology's point list.
    pub image: Vec<usize>,
    pub injective: bool,
    pub open: bool,
}

/// Evaluate an arrow `U -> X` as a candidate sub-object: compute the
/// induced map on points, its injectivity, and the openness of its range.
/// Covariant: `u_arrow` is a morphism into X. Contravariant rings: the
/// underlying ring map X -> U.
pub fn sub_object(
    instance: &Instance,
    u_arrow: &Morphism,
    x_obj: &Object,
    topo: &Topology,
) -> Result<SubObjectWitness> {
    let x_points = pts(instance, x_obj)?;
    let (u_obj, mapped): (&Object, Vec<Point>) = match instance.orientation() {
        Orientation::Covariant => {
            assert_eq!(&u_arrow.cod, x_obj, "sub-object arrow must land in X");
            let u_points = pts(instance, &u_arrow.dom)?;
            let mapped = u_points
                .into_iter()
                .map(|p| {
                    let Point::Element(e) = p else { unreachable!() };
                    Point::Element(u_arrow.apply(&e))
                })
                .collect();
            (&u_arrow.dom, mapped)
        }
        Orientation::Contravariant => {
            assert_eq!(&u_arrow.dom, x_obj, "sub-object ring map must start at X");
            let u_points = pts(instance, &u_arrow.cod)?;
            let mapped = u_points
                .into_iter()
                .map(|p| {
                    let Point::ResidueArrow { base, arrow } = p else {
                        unreachable!()
                    };
                    Point::ResidueArrow {
                        base,
                        arrow: Morphism::compose(&arrow, u_arrow),
                    }
                })
                .collect();
            (&u_arrow.cod, mapped)
        }
    };
    let u_points = pts(instance, u_obj)?;
    let mut point_map = Vec::new();
    let mut image = Vec::new();
    for (p, q) in u_points.iter().zip(&mapped) {
        point_map.push((p.id_string(), q.id_string()));
        let idx = x_points
            .iter()
            .position(|xp| xp == q)
            .expect("image of a point is a point");
        image.push(idx);
    }
    let mut distinct = image.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let injective = distinct.len() == image.len();
    let open = topo.is_open(&distinct);
    image = distinct;
    Ok(SubObjectWitness {
        point_map,
        image,
        injective,
        open,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverElementVerdict {
    pub sub_object: SubObjectWitness,
    pub affine: bool,
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeReport {
    pub object: String,
    pub elements: Vec<CoverElementVerdict>,
    pub covers: bool,
    pub scheme: bool,
}

/// Is X a scheme with respect to this cover: every element an open
/// sub-object whose global object is affine, ranges jointly covering the
/// points.
pub fn scheme_check(
    instance: &Instance,
    x_obj: &Object,
    subcat: &BasePointedSubcat,
    topo: &Topology,
    cover: &[Morphism],
    mode: Mode,
) -> Result<SchemeReport> {
    let n_points = pts(instance, x_obj)?.len();
    let mut elements = Vec::new();
    let mut covered: Vec<bool> = alloc::vec![false; n_points];
    for u_arrow in cover {
        let witness = sub_object(instance, u_arrow, x_obj, topo)?;
        for &i in &witness.image {
            covered[i] = true;
        }
        let u_obj = match instance.orientation() {
            Orientation::Covariant => &u_arrow.dom,
            Orientation::Contravariant => &u_arrow.cod,
        };
        let (affine, error) =
            match global_object(instance, u_obj, subcat, mode, GlobalMode::Single) {
                Ok(report) => (report.affine, None),
                Err(e) => (false, Some(alloc::format!("{}", e))),
            };
        let pass = witness.injective && witness.open && affine;
        elements.push(CoverElementVerdict {
            sub_object: witness,
            affine,
            error,
            pass,
        });
    }
    let covers = covered.iter().all(|&c| c);
    let scheme = covers && !elements.is_empty() && elements.iter().all(|e| e.pass);
    Ok(SchemeReport {
        object: x_obj.canonical_name(),
        elements,
        covers,
        scheme,
    })
}

// ---------------------------------------------------------------------
// Coproduct versus directed colimit
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LemmaReport {
    pub object: String,
    /// Point sets that produced a component, by identifier.
    pub components: Vec<String>,
    pub skipped: Vec<String>,
    /// Reading 1: discrete index category — the colimit is the plain
    /// coproduct of the components.
    pub coproduct_side: Object,
    /// Reading 2: inclusion-ordered index category, glued along the
    /// canonical connecting morphisms (absent when one is missing or
    /// not unique).
    pub colimit_side: Option<Object>,
    /// Inclusions without a unique canonical connecting morphism,
    /// with the number of candidates found.
    pub missing_connections: Vec<(String, String, u64)>,
    /// Whether the two readings agree, when both exist.
    pub isomorphic: Option<bool>,
}

/// The unique connecting morphism X_M -> X_M' for M ⊆ M', commuting
/// with the attachments and carrying marked points to marked points.
fn connecting_morphisms(
    small: &(Vec<Point>, LocalizationCertificate),
    large: &(Vec<Point>, LocalizationCertificate),
) -> Result<Vec<Morphism>> {
    let (small_pts, small_cert) = small;
    let (large_pts, large_cert) = large;
    let index_of: Vec<usize> = small_pts
        .iter()
        .map(|p| {
            large_pts
                .iter()
                .position(|q| q == p)
                .expect("inclusion of point sets")
        })
        .collect();
    Ok(homs::hom_set(&small_cert.localized, &large_cert.localized)?
        .into_iter()
        .filter(|k| {
            if Morphism::compose(&large_cert.rho, k) != small_cert.rho {
                return false;
            }
            small_cert.marked.iter().zip(&index_of).all(|(m, &j)| {
                let (Point::Element(me), Point::Element(le)) =
                    (m, &large_cert.marked[j])
                else {
                    unreachable!()
                };
                &k.apply(me) == le
            })
        })
        .collect())
}

pub fn lemma_compare(
    instance: &Instance,
    x_obj: &Object,
    subcat: &BasePointedSubcat,
    max_points: usize,
) -> Result<LemmaReport> {
    if instance.orientation() != Orientation::Covariant {
        return Err(EngineError::Unsupported {
            what: String::from("colimit comparison on a contravariant instance"),
        });
    }
    let points = pts(instance, x_obj)?;
    if points.is_empty() {
        return Err(EngineError::EmptyPointSet {
            object: x_obj.canonical_name(),
        });
    }
    if points.len() > POINT_SET_CAP {
        return Err(EngineError::SizeBoundExceeded {
            needed: points.len() as u64,
            bound: POINT_SET_CAP as u64,
        });
    }
    let mut masks: Vec<u32> = (1u32..(1 << points.len())).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut nodes: Vec<(u32, Vec<Point>, LocalizationCertificate)> = Vec::new();
    let mut skipped: Vec<String> = Vec::new();
    for m in masks {
        let set: Vec<Point> = points
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, p)| p.clone())
            .collect();
        if set.len() > max_points {
            skipped.push(point_set_id(&set));
            continue;
        }
        match component_for(instance, x_obj, &set, subcat, Mode::Permissive)? {
            Some(cert) => nodes.push((m, set, cert)),
            None => skipped.push(point_set_id(&set)),
        }
    }
    if nodes.is_empty() {
        return Err(EngineError::AllPointsSkipped);
    }
    let components: Vec<String> = nodes.iter().map(|(_, s, _)| point_set_id(s)).collect();
    let parts: Vec<Object> = nodes.iter().map(|(_, _, c)| c.localized.clone()).collect();
    let coproduct_side = limits::coproduct(&parts)?.apex;
    // inclusion-ordered reading
    let mut arrows: BTreeMap<(usize, usize), Morphism> = BTreeMap::new();
    let mut missing: Vec<(String, String, u64)> = Vec::new();
    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            let (mi, _, _) = &nodes[i];
            let (mj, _, _) = &nodes[j];
            if i == j || mi & mj != *mi || mi == mj {
                continue;
            }
            let small = (nodes[i].1.clone(), nodes[i].2.clone());
            let large = (nodes[j].1.clone(), nodes[j].2.clone());
            let ks = connecting_morphisms(&small, &large)?;
            if ks.len() == 1 {
                arrows.insert((i, j), ks.into_iter().next().unwrap());
            } else {
                missing.push((
                    point_set_id(&nodes[i].1),
                    point_set_id(&nodes[j].1),
                    ks.len() as u64,
                ));
            }
        }
    }
    let colimit_side = if missing.is_empty() {
        let diagram = Diagram {
            nodes: parts,
            arrows,
        };
        Some(limits::colimit_directed(&diagram)?.apex)
    } else {
        None
    };
    let isomorphic = match &colimit_side {
        Some(c) => Some(find_isomorphism(&coproduct_side, c)?.is_some()),
        None => None,
    };
    Ok(LemmaReport {
        object: x_obj.canonical_name(),
        components,
        skipped,
        coproduct_side,
        colimit_side,
        missing_connections: missing,
        isomorphic,
    })
}

// keep the unused import warning away when Fan is only used in types
#[allow(unused)]
fn _fan_witness(f: &Fan) -> &Object {
    &f.apex
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldTable;
    use crate::localize::SubcatKind;
    use crate::object::{AbObj, SetObj, VectObj};

    fn ab_subcat() -> BasePointedSubcat {
        BasePointedSubcat {
            kind: SubcatKind::PrimeCyclic,
            bound: 24,
        }
    }

    #[test]
    fn z6_global_object_is_affine() {
        let z6 = Object::Ab(AbObj::cyclic(6));
        let report = global_object(
            &Instance::Ab,
            &z6,
            &ab_subcat(),
            Mode::Permissive,
            GlobalMode::Single,
        )
        .unwrap();
        // identity and the two generators are skipped; 3, 2, 4 localize
        assert_eq!(report.components.len(), 3);
        assert_eq!(report.skipped_points.len(), 3);
        assert_eq!(report.script_o, z6);
        assert!(report.affine);
    }

    #[test]
    fn z4_global_object_is_not_affine() {
        let z4 = Object::Ab(AbObj::cyclic(4));
        let report = global_object(
            &Instance::Ab,
            &z4,
            &ab_subcat(),
            Mode::Permissive,
            GlobalMode::Single,
        )
        .unwrap();
        assert_eq!(report.components.len(), 1);
        assert_eq!(report.skipped_points.len(), 3);
        assert_eq!(report.script_o, Object::Ab(AbObj::cyclic(2)));
        assert!(!report.affine);
        // strict mode refuses
        let err = global_object(
            &Instance::Ab,
            &z4,
            &ab_subcat(),
            Mode::Strict,
            GlobalMode::Single,
        );
        assert!(matches!(err, Err(EngineError::NoLocalization { .. })));
    }

    #[test]
    fn vect_k2_is_affine_with_coimage_dim_two() {
        let f2 = FieldTable::prime(2).unwrap();
        let inst = Instance::Vect(f2.clone());
        let k2 = Object::Vect(VectObj::new(f2.clone(), 2));
        let subcat = BasePointedSubcat {
            kind: SubcatKind::Spanned,
            bound: 8,
        };
        let report =
            global_object(&inst, &k2, &subcat, Mode::Strict, GlobalMode::Single).unwrap();
        assert_eq!(report.components.len(), 4);
        // O(X) = 0 + 1 + 1 + 1 dims
        assert_eq!(report.o_of_x, Some(Object::Vect(VectObj::new(f2, 3))));
        assert_eq!(report.script_o, k2);
        assert!(report.affine);
    }

    #[test]
    fn ring_z6_global_object_is_the_crt_product() {
        let z6 = Object::Ring(crate::ring::cyclic_ring(6));
        let inst = Instance::ring_for(z6.as_ring());
        let subcat = BasePointedSubcat {
            kind: SubcatKind::LocalRings,
            bound: 16,
        };
        let report =
            global_object(&inst, &z6, &subcat, Mode::Strict, GlobalMode::Single).unwrap();
        assert_eq!(report.components.len(), 2);
        assert_eq!(report.o_of_x.as_ref().unwrap().size(), 6);
        assert!(crate::factor::is_mono(report.gamma.as_ref().unwrap()));
        assert_eq!(report.script_o.size(), 6);
        assert!(report.affine);
    }

    #[test]
    fn zariski_topology_on_z6_has_four_opens() {
        let z6 = Object::Ring(crate::ring::cyclic_ring(6));
        let inst = Instance::ring_for(z6.as_ring());
        let topo = make_topology(&inst, &z6, &TopologyKind::Zariski).unwrap();
        assert_eq!(topo.opens.len(), 4);
        assert!(topo.is_open(&[]));
        assert!(topo.is_open(&[0, 1]));
    }

    #[test]
    fn explicit_topology_axioms_checked() {
        let s2 = Object::Set(SetObj::canonical(2));
        // {x}, {y} without union: rejected as a topology
        let bad = TopologyKind::Explicit {
            opens: alloc::vec![alloc::vec![], alloc::vec![0], alloc::vec![1]],
            cover_only: false,
        };
        let err = make_topology(&Instance::Set, &s2, &bad);
        assert!(matches!(err, Err(EngineError::AxiomViolation { .. })));
        // accepted as a bare cover
        let cover = TopologyKind::Explicit {
            opens: alloc::vec![alloc::vec![0], alloc::vec![1]],
            cover_only: true,
        };
        let topo = make_topology(&Instance::Set, &s2, &cover).unwrap();
        assert!(topo.cover_only);
        assert_eq!(topo.opens.len(), 2);
    }

    #[test]
    fn sub_object_witnesses() {
        let f2 = FieldTable::prime(2).unwrap();
        let inst = Instance::Vect(f2.clone());
        let k1 = VectObj::new(f2.clone(), 1);
        let k2 = VectObj::new(f2.clone(), 2);
        let x = Object::Vect(k2.clone());
        let topo = make_topology(&inst, &x, &TopologyKind::Discrete).unwrap();
        let incl = Morphism::vect_from_cols(&k1, &k2, &[alloc::vec![1, 0]]);
        let w = sub_object(&inst, &incl, &x, &topo).unwrap();
        assert!(w.injective);
        assert!(w.open);
        assert_eq!(w.image.len(), 2);
        // a non-injective point map is not a sub-object
        let s2 = Object::Set(SetObj::canonical(2));
        let s1 = Object::Set(SetObj::canonical(1));
        let topo_s = make_topology(&Instance::Set, &s1, &TopologyKind::Discrete).unwrap();
        let collapse = Morphism::from_table(&s2, &s1, alloc::vec![0, 0]);
        let w = sub_object(&Instance::Set, &collapse, &s1, &topo_s).unwrap();
        assert!(!w.injective);
    }

    #[test]
    fn scheme_check_with_identity_cover_matches_affinity() {
        let z6 = Object::Ab(AbObj::cyclic(6));
        let topo = make_topology(&Instance::Ab, &z6, &TopologyKind::Discrete).unwrap();
        let report = scheme_check(
            &Instance::Ab,
            &z6,
            &ab_subcat(),
            &topo,
            &[Morphism::identity(&z6)],
            Mode::Permissive,
        )
        .unwrap();
        assert!(report.covers);
        assert!(report.scheme);
        let z4 = Object::Ab(AbObj::cyclic(4));
        let topo = make_topology(&Instance::Ab, &z4, &TopologyKind::Discrete).unwrap();
        let report = scheme_check(
            &Instance::Ab,
            &z4,
            &ab_subcat(),
            &topo,
            &[Morphism::identity(&z4)],
            Mode::Permissive,
        )
        .unwrap();
        assert!(!report.scheme);
    }

    #[test]
    fn lemma_compare_on_a_two_element_set() {
        let s2 = Object::Set(SetObj::canonical(2));
        let subcat = BasePointedSubcat {
            kind: SubcatKind::SingletonSets,
            bound: 4,
        };
        let report = lemma_compare(&Instance::Set, &s2, &subcat, 3).unwrap();
        // components: {0}, {1}, {0,1} -> sizes 1, 1, 2
        assert_eq!(report.components.len(), 3);
        assert_eq!(report.coproduct_side.size(), 4);
        let colim = report.colimit_side.expect("all connections exist");
        assert_eq!(colim.size(), 2);
        assert_eq!(report.isomorphic, Some(false));
    }

    #[test]
    fn lemma_compare_on_the_line() {
        let f2 = FieldTable::prime(2).unwrap();
        let inst = Instance::Vect(f2.clone());
        let k1 = Object::Vect(VectObj::new(f2.clone(), 1));
        let subcat = BasePointedSubcat {
            kind: SubcatKind::Spanned,
            bound: 8,
        };
        let report = lemma_compare(&inst, &k1, &subcat, 3).unwrap();
        // M = {0}, {v}, {0,v} -> dims 0, 1, 1
        assert_eq!(report.coproduct_side, Object::Vect(VectObj::new(f2.clone(), 2)));
        let colim = report.colimit_side.expect("all connections exist");
        assert_eq!(colim, Object::Vect(VectObj::new(f2, 1)));
        assert_eq!(report.isomorphic, Some(false));
    }

    #[test]
    fn lemma_compare_on_a_singleton_is_trivially_isomorphic() {
        let s1 = Object::Set(SetObj::canonical(1));
        let subcat = BasePointedSubcat {
            kind: SubcatKind::SingletonSets,
            bound: 4,
        };
        let report = lemma_compare(&Instance::Set, &s1, &subcat, 3).unwrap();
        assert_eq!(report.components.len(), 1);
        assert_eq!(report.isomorphic, Some(true));
    }

    #[test]
    fn associative_global_object_on_the_plane() {
        let f2 = FieldTable::prime(2).unwrap();
        let inst = Instance::Vect(f2.clone());
        let k2 = Object::Vect(VectObj::new(f2, 2));
        let subcat = BasePointedSubcat {
            kind: SubcatKind::Spanned,
            bound: 8,
        };
        let report = global_object(
            &inst,
            &k2,
            &subcat,
            Mode::Permissive,
            GlobalMode::Associative { max_points: 2 },
        )
        .unwrap();
        // size-1 and size-2 subsets of the 4 points: 4 + 6 components,
        // size-3 and size-4 subsets skipped by the cap
        assert!(report.components.len() >= 4);
        assert!(!report.skipped_points.is_empty());
        assert!(report.affine);
    }
}
