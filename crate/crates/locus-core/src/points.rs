//! Base-points of an object, morphisms between points, and the fixed
//! base-point assignment.
//!
//! Covariant instances use singleton-style bases (one-element set, the
//! line k, the free rank-1 group), so a point is exactly a marked
//! element. The contravariant ring instance takes points to be arrows
//! onto the configured residue fields.

use crate::error::{EngineError, Result};
use crate::fields::FieldTable;
use crate::homs;
use crate::instance::Instance;
use crate::morphism::Morphism;
use crate::object::{Elem, Object, ELEM_ENUM_CAP};
use crate::ring;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Point {
    /// Covariant: the marked element (equivalently, the arrow from the
    /// singleton base hitting it).
    Element(Elem),
    /// Contravariant rings: an arrow onto a residue field.
    ResidueArrow { base: FieldTable, arrow: Morphism },
}

impl Point {
    pub fn id_string(&self) -> String {
        match self {
            Point::Element(e) => alloc::format!("elem{:?}", e),
            Point::ResidueArrow { base, arrow } => {
                let crate::morphism::MapData::Table(t) = &arrow.map else {
                    unreachable!("ring arrows are tables")
                };
                alloc::format!("{}:{:?}", base.canonical_name(), t)
            }
        }
    }
}

/// How a morphism of points acts on the base objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseMap {
    /// Singleton base: only the identity.
    Identity,
    /// Line / free rank-1 base: multiplication by a scalar.
    Scalar(u64),
    /// Residue-field base: an actual field homomorphism.
    FieldHom(Morphism),
}

/// All base-points of `x_obj`, deterministically ordered.
pub fn pts(instance: &Instance, x_obj: &Object) -> Result<Vec<Point>> {
    match instance.orientation() {
        crate::instance::Orientation::Covariant => {
            if x_obj.size() > ELEM_ENUM_CAP {
                return Err(EngineError::SizeBoundExceeded {
                    needed: x_obj.size(),
                    bound: ELEM_ENUM_CAP,
                });
            }
            Ok(x_obj.elements().into_iter().map(Point::Element).collect())
        }
        crate::instance::Orientation::Contravariant => {
            let mut fields: Vec<FieldTable> = instance.residue_fields().to_vec();
            fields.sort();
            let mut out = Vec::new();
            for f in fields {
                let target = Object::Ring(ring::field_ring(&f));
                for arrow in homs::hom_set(x_obj, &target)? {
                    out.push(Point::ResidueArrow {
                        base: f.clone(),
                        arrow,
                    });
                }
            }
            Ok(out)
        }
    }
}

/// All morphisms of points `x -> y` inside `x_obj`: pairs of an
/// endomorphism of the object and a base map closing the square.
pub fn point_morphisms(
    instance: &Instance,
    x_obj: &Object,
    x: &Point,
    y: &Point,
) -> Result<Vec<(Morphism, BaseMap)>> {
    match (x, y) {
        (Point::Element(xe), Point::Element(ye)) => {
            let mut out = Vec::new();
            match x_obj {
                Object::Set(_) => {
                    for phi in homs::constrained_homs(
                        x_obj,
                        x_obj,
                        &[(xe.clone(), ye.clone())],
                        usize::MAX,
                    )? {
                        out.push((phi, BaseMap::Identity));
                    }
                }
                Object::Ab(g) => {
                    // base maps on the free rank-1 base are multipliers
                    let reach = g.elem_order(ye).max(1);
                    for n in 0..reach {
                        let target = g.scale(n, ye);
                        for phi in homs::constrained_homs(
                            x_obj,
                            x_obj,
                            &[(xe.clone(), target.clone())],
                            usize::MAX,
                        )? {
                            out.push((phi, BaseMap::Scalar(n)));
                        }
                    }
                }
                Object::Vect(v) => {
                    for c in 0..v.q() {
                        let target = v.scale(c, ye);
                        for phi in homs::constrained_homs(
                            x_obj,
                            x_obj,
                            &[(xe.clone(), target.clone())],
                            usize::MAX,
                        )? {
                            out.push((phi, BaseMap::Scalar(c)));
                        }
                    }
                }
                Object::Ring(_) => {
                    return Err(EngineError::Unsupported {
                        what: String::from("element points on a contravariant ring"),
                    })
                }
            }
            let _ = instance;
            Ok(out)
        }
        (
            Point::ResidueArrow { base: bx, arrow: ax },
            Point::ResidueArrow { base: by, arrow: ay },
        ) => {
            // contravariant square: b . y = x . phi, with b: k_y -> k_x
            let kx = Object::Ring(ring::field_ring(bx));
            let ky = Object::Ring(ring::field_ring(by));
            let endos = homs::hom_set(x_obj, x_obj)?;
            let bridges = homs::hom_set(&ky, &kx)?;
            let mut out = Vec::new();
            for b in &bridges {
                let lhs = Morphism::compose(b, ay);
                for phi in &endos {
                    if Morphism::compose(ax, phi) == lhs {
                        out.push((phi.clone(), BaseMap::FieldHom(b.clone())));
                    }
                }
            }
            Ok(out)
        }
        _ => Err(EngineError::Unsupported {
            what: String::from("mixed point kinds"),
        }),
    }
}

/// Fixed base-point per object: the first point in enumeration order, or
/// an explicit override (index into the enumeration) keyed by canonical
/// object name.
pub fn fix_basepoints(
    instance: &Instance,
    objects: &[Object],
    overrides: &BTreeMap<String, usize>,
) -> Result<Vec<(Object, Point)>> {
    let mut out = Vec::new();
    for obj in objects {
        let points = pts(instance, obj)?;
        if points.is_empty() {
            return Err(EngineError::EmptyPointSet {
                object: obj.canonical_name(),
            });
        }
        let idx = overrides
            .get(&obj.canonical_name())
            .copied()
            .unwrap_or(0);
        let point = points.get(idx).ok_or_else(|| EngineError::EmptyPointSet {
            object: alloc::format!(
                "{} (override index {} out of range)",
                obj.canonical_name(),
                idx
            ),
        })?;
        out.push((obj.clone(), point.clone()));
    }
    Ok(out)
}
