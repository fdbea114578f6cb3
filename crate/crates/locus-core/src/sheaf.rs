//! Ring-theoretic structure-sheaf oracle.
//!
//! For a finite commutative ring A, builds the prime spectrum from the
//! local factors, the Zariski opens, and for each open U the section ring
//! O(U): the subring of ∏_{p∈U} A_p generated by the image of A together
//! with the inverses of the invertible images. This is computed without
//! any universal-property machinery and serves as an independent check on
//! the contravariant global object.

use crate::error::{EngineError, Result};
use crate::fields::FieldTable;
use crate::global;
use crate::homs;
use crate::instance::Instance;
use crate::localize::BasePointedSubcat;
use crate::iso::find_isomorphism;
use crate::morphism::{MapData, Morphism};
use crate::object::{Object, RingObj};
use crate::ring;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecSpace {
    pub ring: RingObj,
    /// One entry per point: the residue field and the arrow onto it.
    pub residues: Vec<(FieldTable, Morphism)>,
    /// The kernels of the residue arrows, as sorted element-index sets.
    pub primes: Vec<Vec<u32>>,
    /// Zariski opens as sorted lists of prime indices, ordered by
    /// (size, contents).
    pub opens: Vec<Vec<usize>>,
    /// Local factors whose residue field is not in the configured list;
    /// their points are missing from `primes`.
    pub missed_factors: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresheafSection {
    pub open_set: Vec<usize>,
    /// ∏_{p∈U} A_p (the zero ring for U = ∅).
    pub ambient: RingObj,
    /// The generated subring O(U) ⊆ ambient.
    pub section_ring: RingObj,
    /// Inclusion of the section ring into the ambient product.
    pub include: Morphism,
    /// ρ: A → ambient, componentwise localization.
    pub rho: Morphism,
    /// ρ corestricted to the section ring.
    pub rho_section: Morphism,
}

pub fn build_spec(a: &RingObj, fields: &[FieldTable]) -> Result<SpecSpace> {
    let a_obj = Object::Ring(a.clone());
    let mut sorted = fields.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut residues: Vec<(FieldTable, Morphism)> = Vec::new();
    for f in &sorted {
        let target = Object::Ring(ring::field_ring(f));
        for arrow in homs::hom_set(&a_obj, &target)? {
            residues.push((f.clone(), arrow));
        }
    }
    // one prime per distinct kernel: several arrows (e.g. an automorphism
    // orbit) can share a prime, so keep the first arrow as representative
    let mut primes: Vec<Vec<u32>> = Vec::new();
    let mut reps: Vec<(FieldTable, Morphism)> = Vec::new();
    for (f, arrow) in &residues {
        let zero = ring::field_ring(f).zero as u64;
        let kernel: Vec<u32> = (0..a.size() as u32)
            .filter(|&i| arrow.apply(&alloc::vec![i as u64])[0] == zero)
            .collect();
        if !primes.contains(&kernel) {
            primes.push(kernel);
            reps.push((f.clone(), arrow.clone()));
        }
    }
    let residues = reps;
    let (factors, _) = ring::local_factors(a);
    let missed_factors = (factors.len() as u64).saturating_sub(primes.len() as u64);
    // opens: D(f) basis, closed under union (D(f) ∩ D(g) = D(fg))
    let n = primes.len();
    if n > 20 {
        return Err(EngineError::SizeBoundExceeded {
            needed: n as u64,
            bound: 20,
        });
    }
    let mut masks: Vec<u32> = alloc::vec![0];
    for f in 0..a.size() as u32 {
        let mut mask = 0u32;
        for (i, p) in primes.iter().enumerate() {
            if !p.contains(&f) {
                mask |= 1 << i;
            }
        }
        masks.push(mask);
    }
    masks.sort_unstable();
    masks.dedup();
    loop {
        let before = masks.len();
        let snapshot = masks.clone();
        for &x in &snapshot {
            for &y in &snapshot {
                if !masks.contains(&(x | y)) {
                    masks.push(x | y);
                }
                if !masks.contains(&(x & y)) {
                    masks.push(x & y);
                }
            }
        }
        masks.sort_unstable();
        masks.dedup();
        if masks.len() == before {
            break;
        }
    }
    let mut opens: Vec<Vec<usize>> = masks
        .into_iter()
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    opens.sort_by_key(|s: &Vec<usize>| (s.len(), s.clone()));
    Ok(SpecSpace {
        ring: a.clone(),
        residues,
        primes,
        opens,
        missed_factors,
    })
}

/// Mixed-radix product index, first factor most significant (matching
/// `product_ring`).
fn encode(sizes: &[usize], coords: &[u32]) -> u32 {
    let mut i = 0usize;
    for (s, &c) in sizes.iter().zip(coords) {
        i = i * s + c as usize;
    }
    i as u32
}

pub fn intro_presheaf(spec: &SpecSpace, u: &[usize]) -> Result<PresheafSection> {
    let a = &spec.ring;
    let a_obj = Object::Ring(a.clone());
    let mut open = u.to_vec();
    open.sort_unstable();
    open.dedup();
    if open.is_empty() {
        let zero = ring::zero_ring();
        let ambient_obj = Object::Ring(zero.clone());
        let rho = Morphism::from_table(
            &a_obj,
            &ambient_obj,
            alloc::vec![0; a.size()],
        );
        return Ok(PresheafSection {
            open_set: open,
            ambient: zero.clone(),
            section_ring: zero.clone(),
            include: Morphism::identity(&ambient_obj),
            rho: rho.clone(),
            rho_section: rho,
        });
    }
    let mut locals: Vec<RingObj> = Vec::new();
    let mut local_maps: Vec<Morphism> = Vec::new();
    for &i in &open {
        let (loc, map) = ring::classical_localization(a, &spec.primes[i])?;
        locals.push(loc);
        local_maps.push(map);
    }
    let ambient = ring::product_ring(&locals);
    let ambient_obj = Object::Ring(ambient.clone());
    let sizes: Vec<usize> = locals.iter().map(|l| l.size()).collect();
    let rho_table: Vec<u32> = (0..a.size())
        .map(|i| {
            let coords: Vec<u32> = local_maps
                .iter()
                .map(|m| m.apply(&alloc::vec![i as u64])[0] as u32)
                .collect();
            encode(&sizes, &coords)
        })
        .collect();
    let rho = Morphism::from_table(&a_obj, &ambient_obj, rho_table.clone());
    // generators: ρ(A) plus inverses of the invertible ρ(a), found by
    // exhaustive search in the finite ambient ring
    let mut gens: Vec<u32> = rho_table.clone();
    for &t in &rho_table {
        if let Some(inv) = ambient.inverse(t) {
            gens.push(inv);
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let (section_ring, include) = ring::subring_generated(&ambient, &gens);
    // corestrict ρ to the section ring
    let MapData::Table(inc_t) = &include.map else {
        unreachable!("ring inclusions are tables")
    };
    let section_obj = Object::Ring(section_ring.clone());
    let rho_section_table: Vec<u32> = rho_table
        .iter()
        .map(|t| {
            inc_t
                .iter()
                .position(|x| x == t)
                .expect("rho image lies in the generated subring") as u32
        })
        .collect();
    let rho_section = Morphism::from_table(&a_obj, &section_obj, rho_section_table);
    Ok(PresheafSection {
        open_set: open,
        ambient,
        section_ring,
        include,
        rho,
        rho_section,
    })
}

/// Restriction morphism O(V) → O(U) for U ⊆ V: drop the coordinates
/// outside U and re-find the result inside O(U). Checked to commute with
/// both ρ's.
pub fn restriction(
    spec: &SpecSpace,
    v_sec: &PresheafSection,
    u_sec: &PresheafSection,
) -> Result<Morphism> {
    assert!(
        u_sec.open_set.iter().all(|i| v_sec.open_set.contains(i)),
        "restriction requires U ⊆ V"
    );
    let v_sizes: Vec<usize> = v_sec
        .open_set
        .iter()
        .map(|&i| {
            let (loc, _) = ring::classical_localization(&spec.ring, &spec.primes[i])
                .expect("primes are prime");
            loc.size()
        })
        .collect();
    let keep: Vec<usize> = u_sec
        .open_set
        .iter()
        .map(|i| {
            v_sec
                .open_set
                .iter()
                .position(|j| j == i)
                .expect("U ⊆ V")
        })
        .collect();
    let decode = |mut idx: usize| -> Vec<u32> {
        let mut coords = alloc::vec![0u32; v_sizes.len()];
        for j in (0..v_sizes.len()).rev() {
            coords[j] = (idx % v_sizes[j]) as u32;
            idx /= v_sizes[j];
        }
        coords
    };
    let u_sizes: Vec<usize> = keep.iter().map(|&j| v_sizes[j]).collect();
    let (MapData::Table(v_inc), MapData::Table(u_inc)) =
        (&v_sec.include.map, &u_sec.include.map)
    else {
        unreachable!()
    };
    let table: Vec<u32> = v_inc
        .iter()
        .map(|&amb| {
            let coords = decode(amb as usize);
            let sub: Vec<u32> = keep.iter().map(|&j| coords[j]).collect();
            let target = if u_sizes.is_empty() {
                0
            } else {
                encode(&u_sizes, &sub)
            };
            u_inc
                .iter()
                .position(|&x| x == target)
                .expect("restricted section lies in O(U)") as u32
        })
        .collect();
    let rest = Morphism::from_table(
        &Object::Ring(v_sec.section_ring.clone()),
        &Object::Ring(u_sec.section_ring.clone()),
        table,
    );
    if !rest.is_valid() {
        return Err(EngineError::AxiomViolation {
            law: String::from("restriction is a ring homomorphism"),
            witness: String::from("coordinate projection left the subring"),
        });
    }
    if Morphism::compose(&rest, &v_sec.rho_section) != u_sec.rho_section {
        return Err(EngineError::AxiomViolation {
            law: String::from("restriction commutes with the structure maps"),
            witness: String::from("rho squares disagree"),
        });
    }
    Ok(rest)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistinguishedComparison {
    pub f: u64,
    pub open: Vec<usize>,
    pub section_ring: RingObj,
    pub classical: RingObj,
    pub isomorphic: bool,
    pub iso: Option<Morphism>,
}

/// Compare the section ring on D(f) with the classical localization A_f.
pub fn compare_distinguished(spec: &SpecSpace, f: u32) -> Result<DistinguishedComparison> {
    let d_f: Vec<usize> = spec
        .primes
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.contains(&f))
        .map(|(i, _)| i)
        .collect();
    let section = intro_presheaf(spec, &d_f)?;
    let (classical, _) = ring::localize_at_set(&spec.ring, &[f]);
    let iso = if section.section_ring.size() == 1 || classical.size() == 1 {
        // zero rings: isomorphic exactly when both collapse
        if section.section_ring.size() == classical.size() {
            Some(Morphism::identity(&Object::Ring(classical.clone())))
        } else {
            None
        }
    } else {
        find_isomorphism(
            &Object::Ring(section.section_ring.clone()),
            &Object::Ring(classical.clone()),
        )?
    };
    Ok(DistinguishedComparison {
        f: f as u64,
        open: d_f,
        isomorphic: iso.is_some(),
        iso,
        section_ring: section.section_ring,
        classical,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GlobalCrosscheck {
    pub ring: String,
    /// 𝒪(X) from the universal-property engine (the image middle of γ).
    pub script_o: Object,
    /// O(X) on the full open from the sheaf construction.
    pub section_full: RingObj,
    pub script_o_matches_section: bool,
    pub affine: bool,
    pub pass: bool,
}

/// Cross-check the contravariant global object against the sheaf
/// construction: 𝒪(X) ≅ O_X(full open) ≅ image of γ.
pub fn crosscheck_global(
    a: &RingObj,
    subcat: &BasePointedSubcat,
) -> Result<GlobalCrosscheck> {
    let instance = Instance::ring_for(a);
    let spec = build_spec(a, instance.residue_fields())?;
    let full: Vec<usize> = (0..spec.primes.len()).collect();
    let section = intro_presheaf(&spec, &full)?;
    let a_obj = Object::Ring(a.clone());
    let report = global::global_object(
        &instance,
        &a_obj,
        subcat,
        global::Mode::Strict,
        global::GlobalMode::Single,
    )?;
    let matches = find_isomorphism(
        &report.script_o,
        &Object::Ring(section.section_ring.clone()),
    )?
    .is_some();
    Ok(GlobalCrosscheck {
        ring: a_obj.canonical_name(),
        script_o: report.script_o,
        section_full: section.section_ring,
        script_o_matches_section: matches,
        affine: report.affine,
        pass: matches && report.affine,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localize::SubcatKind;

    fn spec_for(n: u64) -> SpecSpace {
        let a = ring::cyclic_ring(n);
        let instance = Instance::ring_for(&a);
        build_spec(&a, instance.residue_fields()).unwrap()
    }

    #[test]
    fn z6_spec_has_two_primes_and_four_opens() {
        let spec = spec_for(6);
        assert_eq!(spec.primes.len(), 2);
        assert_eq!(spec.opens.len(), 4);
        assert_eq!(spec.missed_factors, 0);
    }

    #[test]
    fn z4_spec_has_one_prime() {
        let spec = spec_for(4);
        assert_eq!(spec.primes.len(), 1);
        assert_eq!(spec.primes[0], alloc::vec![0, 2]);
        assert_eq!(spec.opens.len(), 2);
    }

    #[test]
    fn field_spec_is_a_point() {
        let f4 = FieldTable::default_for(4).unwrap();
        let a = ring::field_ring(&f4);
        let spec = build_spec(&a, &[f4]).unwrap();
        assert_eq!(spec.primes.len(), 1);
        assert_eq!(spec.primes[0], alloc::vec![0]);
        assert_eq!(spec.opens.len(), 2);
    }

    #[test]
    fn z6_full_section_is_z6() {
        let spec = spec_for(6);
        let full = intro_presheaf(&spec, &[0, 1]).unwrap();
        assert_eq!(full.section_ring.size(), 6);
        let iso = find_isomorphism(
            &Object::Ring(full.section_ring.clone()),
            &Object::Ring(spec.ring.clone()),
        )
        .unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn z6_single_point_sections() {
        let spec = spec_for(6);
        let s0 = intro_presheaf(&spec, &[0]).unwrap();
        let s1 = intro_presheaf(&spec, &[1]).unwrap();
        let mut sizes = alloc::vec![s0.section_ring.size(), s1.section_ring.size()];
        sizes.sort_unstable();
        assert_eq!(sizes, alloc::vec![2, 3]);
    }

    #[test]
    fn empty_open_is_the_zero_ring() {
        let spec = spec_for(6);
        let s = intro_presheaf(&spec, &[]).unwrap();
        assert_eq!(s.section_ring.size(), 1);
    }

    #[test]
    fn compare_distinguished_on_z6() {
        let spec = spec_for(6);
        // f = 1: D(f) is everything, both sides Z/6
        let c = compare_distinguished(&spec, 1).unwrap();
        assert_eq!(c.open.len(), 2);
        assert_eq!(c.classical.size(), 6);
        assert!(c.isomorphic);
        // f = 3: 3 mod 2 = 1, 3 mod 3 = 0, so D(3) is the char-2 point
        // and both sides are Z/2 (3 becomes the unit 1 there)
        let c = compare_distinguished(&spec, 3).unwrap();
        assert_eq!(c.open.len(), 1);
        assert_eq!(c.section_ring.size(), 2);
        assert_eq!(c.classical.size(), 2);
        assert!(c.isomorphic);
        // f = 0: empty open, zero ring on both sides
        let c = compare_distinguished(&spec, 0).unwrap();
        assert!(c.open.is_empty());
        assert_eq!(c.classical.size(), 1);
        assert!(c.isomorphic);
    }

    #[test]
    fn compare_distinguished_on_a_field() {
        let f4 = FieldTable::default_for(4).unwrap();
        let a = ring::field_ring(&f4);
        let spec = build_spec(&a, &[f4]).unwrap();
        for f in 1..4u32 {
            let c = compare_distinguished(&spec, f).unwrap();
            assert!(c.isomorphic);
            assert_eq!(c.classical.size(), 4);
        }
    }

    #[test]
    fn restrictions_commute() {
        let spec = spec_for(6);
        let full = intro_presheaf(&spec, &[0, 1]).unwrap();
        for u in [alloc::vec![0usize], alloc::vec![1], alloc::vec![]] {
            let u_sec = intro_presheaf(&spec, &u).unwrap();
            let rest = restriction(&spec, &full, &u_sec).unwrap();
            assert!(rest.is_valid());
        }
    }

    #[test]
    fn crosscheck_small_rings() {
        let subcat = BasePointedSubcat {
            kind: SubcatKind::LocalRings,
            bound: 16,
        };
        for a in [
            ring::cyclic_ring(6),
            ring::cyclic_ring(4),
            ring::product_ring(&[ring::cyclic_ring(2), ring::cyclic_ring(2)]),
        ] {
            let c = crosscheck_global(&a, &subcat).unwrap();
            assert!(c.pass, "crosscheck failed for {}", c.ring);
            assert_eq!(c.section_full.size(), a.size());
        }
    }
}
