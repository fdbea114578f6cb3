//! Isomorphism search. Set, abelian-group, and vector-space objects are
//! kept in canonical form, so two of them are isomorphic exactly when they
//! are equal and the identity witnesses it. Rings are table-based and need
//! an actual search.

use crate::error::Result;
use crate::factor::{is_epi, is_mono};
use crate::homs;
use crate::morphism::{MapData, Morphism};
use crate::object::{Elem, Object};
use alloc::vec::Vec;

/// A forward isomorphism `a -> b`, if one exists.
pub fn find_isomorphism(a: &Object, b: &Object) -> Result<Option<Morphism>> {
    match (a, b) {
        (Object::Set(_), Object::Set(_))
        | (Object::Ab(_), Object::Ab(_))
        | (Object::Vect(_), Object::Vect(_)) => {
            // canonical forms: isomorphic iff equal
            Ok(if a == b {
                Some(Morphism::identity(a))
            } else {
                None
            })
        }
        (Object::Ring(ra), Object::Ring(rb)) => {
            if ra.size() != rb.size() {
                return Ok(None);
            }
            let homs = homs::hom_set(a, b)?;
            Ok(homs
                .into_iter()
                .find(|h| is_mono(h) && is_epi(h)))
        }
        _ => Ok(None),
    }
}

/// Invert a bijective table-backed or matrix-backed morphism.
pub fn invert(h: &Morphism) -> Morphism {
    match &h.map {
        MapData::Table(t) => {
            let mut inv = alloc::vec![0u32; t.len()];
            for (i, &y) in t.iter().enumerate() {
                inv[y as usize] = i as u32;
            }
            Morphism {
                dom: h.cod.clone(),
                cod: h.dom.clone(),
                map: MapData::Table(inv),
            }
        }
        MapData::AbMatrix(_) | MapData::VectMatrix(_) => {
            // search the unique inverse by constraining on domain images
            let constraints: Vec<(Elem, Elem)> = generating_elems(&h.dom)
                .into_iter()
                .map(|e| (h.apply(&e), e))
                .collect();
            let mut found = homs::constrained_homs(&h.cod, &h.dom, &constraints, 2)
                .expect("inverse search stays within bounds");
            assert_eq!(found.len(), 1, "morphism is not invertible");
            found.remove(0)
        }
    }
}

/// A small generating family: all elements for sets and rings, the
/// standard generators for groups and spaces.
pub fn generating_elems(obj: &Object) -> Vec<Elem> {
    match obj {
        Object::Set(_) | Object::Ring(_) => obj.elements(),
        Object::Ab(g) => (0..g.orders.len())
            .map(|j| crate::morphism::gen_elem(g, j))
            .collect(),
        Object::Vect(v) => (0..v.dim as usize)
            .map(|j| crate::morphism::basis_elem(v, j))
            .collect(),
    }
}

/// An isomorphism `phi: a -> b` with `phi . into_a = into_b`, if any.
/// Both `into_*` must share a domain.
pub fn find_iso_commuting(
    a: &Object,
    b: &Object,
    into_a: &Morphism,
    into_b: &Morphism,
) -> Result<Option<Morphism>> {
    assert_eq!(into_a.dom, into_b.dom);
    if a.size() != b.size() {
        return Ok(None);
    }
    let constraints: Vec<(Elem, Elem)> = generating_elems(&into_a.dom)
        .into_iter()
        .map(|e| (into_a.apply(&e), into_b.apply(&e)))
        .collect();
    let candidates = homs::constrained_homs(a, b, &constraints, usize::MAX)?;
    Ok(candidates.into_iter().find(|h| is_mono(h) && is_epi(h)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldTable;
    use crate::object::AbObj;
    use crate::ring;

    #[test]
    fn canonical_kinds_compare_by_equality() {
        let a = Object::Ab(AbObj::cyclic(6));
        let b = Object::Ab(AbObj::new(alloc::vec![6]).unwrap());
        assert!(find_isomorphism(&a, &b).unwrap().is_some());
        let d = Object::Ab(AbObj::new(alloc::vec![2, 4]).unwrap());
        assert!(find_isomorphism(&a, &d).unwrap().is_none());
    }

    #[test]
    fn ring_iso_z6_vs_product_z2_z3() {
        let z6 = Object::Ring(ring::cyclic_ring(6));
        let prod = Object::Ring(ring::product_ring(&[
            ring::cyclic_ring(2),
            ring::cyclic_ring(3),
        ]));
        let iso = find_isomorphism(&z6, &prod).unwrap().unwrap();
        assert!(iso.is_valid());
        let inv = invert(&iso);
        assert_eq!(Morphism::compose(&inv, &iso), Morphism::identity(&z6));
        assert_eq!(Morphism::compose(&iso, &inv), Morphism::identity(&prod));
    }

    #[test]
    fn ring_non_iso_z4_vs_product() {
        let z4 = Object::Ring(ring::cyclic_ring(4));
        let prod = Object::Ring(ring::product_ring(&[
            ring::cyclic_ring(2),
            ring::cyclic_ring(2),
        ]));
        assert!(find_isomorphism(&z4, &prod).unwrap().is_none());
    }

    #[test]
    fn invert_matrix_morphism() {
        let f3 = FieldTable::prime(3).unwrap();
        let v2 = crate::object::VectObj::new(f3, 2);
        let h = Morphism::vect_from_cols(&v2, &v2, &[alloc::vec![1, 1], alloc::vec![0, 1]]);
        let inv = invert(&h);
        assert_eq!(
            Morphism::compose(&inv, &h),
            Morphism::identity(&Object::Vect(v2))
        );
    }

    #[test]
    fn commuting_iso_respects_the_leg() {
        // two copies of the mod-2 reduction from Z/4 differ by nothing:
        // the identity commutes; a twisted leg forces the nontrivial choice
        let z4 = AbObj::cyclic(4);
        let z2 = AbObj::cyclic(2);
        let r = Morphism::ab_from_gen_images(&z4, &z2, &[alloc::vec![1]]);
        let phi = find_iso_commuting(&Object::Ab(z2.clone()), &Object::Ab(z2.clone()), &r, &r)
            .unwrap()
            .unwrap();
        assert_eq!(phi, Morphism::identity(&Object::Ab(z2)));
    }
}
