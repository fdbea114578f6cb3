//! The four shipped category instances and their object enumerations.
//!
//! Rings are used in the opposite orientation (arrows reported as if
//! reversed); everything else is covariant. Orientation is a property of
//! the instance, fixed per job.

use crate::error::{EngineError, Result};
use crate::fields::FieldTable;
use crate::object::{Object, SetObj, VectObj};
use crate::ring;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Covariant,
    Contravariant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Instance {
    /// Finite sets; base = the one-element set.
    Set,
    /// Finite abelian groups in divisor-chain form; points are elements.
    Ab,
    /// Finite-dimensional spaces over one field; base = the line k.
    Vect(FieldTable),
    /// Finite commutative rings, contravariant; base = the listed fields.
    Ring { residue_fields: Vec<FieldTable> },
}

impl Instance {
    pub fn orientation(&self) -> Orientation {
        match self {
            Instance::Ring { .. } => Orientation::Contravariant,
            _ => Orientation::Covariant,
        }
    }

    /// Default contravariant ring instance: residue fields F_p for p ≤ 7
    /// plus the shipped F_4, F_8, F_9 tables.
    pub fn ring_default() -> Instance {
        let mut residue_fields = Vec::new();
        for p in [2u64, 3, 5, 7] {
            residue_fields.push(FieldTable::prime(p).expect("small primes"));
        }
        for q in [4u64, 8, 9] {
            residue_fields.push(FieldTable::default_for(q).expect("shipped tables"));
        }
        residue_fields.sort();
        Instance::Ring { residue_fields }
    }

    /// Contravariant instance whose base points are exactly the residue
    /// fields of `r` (one per local factor, deduplicated).
    pub fn ring_for(r: &crate::object::RingObj) -> Instance {
        let (factors, _) = ring::local_factors(r);
        let mut residue_fields: Vec<FieldTable> = Vec::new();
        for f in &factors {
            let m = ring::maximal_ideal_if_local(&f.ring)
                .expect("local factors are local");
            let q = f.ring.size() as u64 / m.len() as u64;
            let table = FieldTable::default_for(q).expect("residue field is a shipped size");
            if !residue_fields.contains(&table) {
                residue_fields.push(table);
            }
        }
        residue_fields.sort();
        Instance::Ring { residue_fields }
    }

    pub fn residue_fields(&self) -> &[FieldTable] {
        match self {
            Instance::Ring { residue_fields } => residue_fields,
            _ => &[],
        }
    }

    /// Does the object belong to this instance?
    pub fn contains(&self, obj: &Object) -> bool {
        match (self, obj) {
            (Instance::Set, Object::Set(_)) => true,
            (Instance::Ab, Object::Ab(_)) => true,
            (Instance::Vect(f), Object::Vect(v)) => &v.field == f,
            (Instance::Ring { .. }, Object::Ring(_)) => true,
            _ => false,
        }
    }

    /// Battery of objects with at most `bound` elements, deterministic
    /// order (by size, then canonical name).
    pub fn objects_within(&self, bound: u64) -> Result<Vec<Object>> {
        let mut out: Vec<Object> = match self {
            Instance::Set => (0..=bound as usize)
                .map(|n| Object::Set(SetObj::canonical(n)))
                .collect(),
            Instance::Ab => divisor_chains(bound)
                .into_iter()
                .map(|c| {
                    Object::Ab(crate::object::AbObj::new(c).expect("chains are valid"))
                })
                .collect(),
            Instance::Vect(f) => {
                let mut v = Vec::new();
                let mut dim = 0u32;
                loop {
                    let mut s: u64 = 1;
                    let mut overflow = false;
                    for _ in 0..dim {
                        s = match s.checked_mul(f.order()) {
                            Some(x) => x,
                            None => {
                                overflow = true;
                                break;
                            }
                        };
                    }
                    if overflow || s > bound {
                        break;
                    }
                    v.push(Object::Vect(VectObj::new(f.clone(), dim)));
                    dim += 1;
                }
                v
            }
            Instance::Ring { residue_fields } => ring_battery(residue_fields, bound)?,
        };
        out.sort_by_key(|o| (o.size(), o.canonical_name()));
        Ok(out)
    }
}

/// All divisor chains `d_1 | d_2 | ...` (each `d_i >= 2`) whose product is
/// at most `bound`, including the empty chain.
pub fn divisor_chains(bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current: Vec<u64> = Vec::new();
    fn rec(bound: u64, min: u64, product: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(current.clone());
        let mut d = min;
        while product * d <= bound {
            // next factor must be a multiple of the previous one
            if current.last().map_or(true, |&prev| d % prev == 0) {
                current.push(d);
                rec(bound, d, product * d, current, out);
                current.pop();
            }
            d += 1;
        }
    }
    rec(bound, 2, 1, &mut current, &mut out);
    out.sort_by_key(|c| (c.iter().product::<u64>(), c.clone()));
    out
}

/// Prime powers p^k (k >= 1) up to `bound`, ascending.
pub fn prime_powers(bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in 2..=bound {
        if (2..p).all(|d| p % d != 0) {
            let mut q = p;
            while q <= bound {
                out.push(q);
                q = match q.checked_mul(p) {
                    Some(x) => x,
                    None => break,
                };
            }
        }
    }
    out.sort_unstable();
    out
}

/// Ring battery: prime-power cyclic rings, the configured field tables,
/// and products of up to three of these with at most `bound` elements.
fn ring_battery(fields: &[FieldTable], bound: u64) -> Result<Vec<Object>> {
    let mut atoms: Vec<crate::object::RingObj> = Vec::new();
    for q in prime_powers(bound) {
        atoms.push(ring::cyclic_ring(q));
    }
    for f in fields {
        if f.order() <= bound && f.k > 1 {
            atoms.push(ring::field_ring(f));
        }
    }
    let mut out: Vec<Object> = atoms.iter().cloned().map(Object::Ring).collect();
    for i in 0..atoms.len() {
        for j in i..atoms.len() {
            let s2 = atoms[i].size() as u64 * atoms[j].size() as u64;
            if s2 > bound {
                continue;
            }
            out.push(Object::Ring(ring::product_ring(&[
                atoms[i].clone(),
                atoms[j].clone(),
            ])));
            for k in j..atoms.len() {
                let s3 = s2 * atoms[k].size() as u64;
                if s3 <= bound {
                    out.push(Object::Ring(ring::product_ring(&[
                        atoms[i].clone(),
                        atoms[j].clone(),
                        atoms[k].clone(),
                    ])));
                }
            }
        }
    }
    if out.is_empty() {
        return Err(EngineError::SizeBoundExceeded { needed: 2, bound });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_chains_up_to_8() {
        let chains = divisor_chains(8);
        // [], [2], [3], [4], [2,2], [5], [6], [7], [8], [2,4], [2,2,2]
        assert!(chains.contains(&alloc::vec![]));
        assert!(chains.contains(&alloc::vec![2, 2, 2]));
        assert!(chains.contains(&alloc::vec![2, 4]));
        assert!(!chains.contains(&alloc::vec![2, 3]));
        assert!(!chains.contains(&alloc::vec![4, 2]));
        assert_eq!(chains.len(), 11);
    }

    #[test]
    fn ab_battery_order_24() {
        let objs = Instance::Ab.objects_within(24).unwrap();
        // every object is canonical and within bound
        for o in &objs {
            assert!(o.size() <= 24);
        }
        assert!(objs.contains(&Object::Ab(crate::object::AbObj::cyclic(23))));
        assert!(objs.contains(&Object::Ab(
            crate::object::AbObj::new(alloc::vec![2, 2, 6]).unwrap()
        )));
    }

    #[test]
    fn vect_battery_by_size() {
        let f3 = FieldTable::prime(3).unwrap();
        let objs = Instance::Vect(f3).objects_within(27).unwrap();
        assert_eq!(objs.len(), 4); // dims 0..=3
    }

    #[test]
    fn ring_battery_contains_the_named_examples() {
        let inst = Instance::ring_default();
        let objs = inst.objects_within(64).unwrap();
        let names: Vec<_> = objs.iter().map(|o| o.canonical_name()).collect();
        assert!(objs.iter().any(|o| o.size() == 6));
        assert!(objs.iter().any(|o| o.size() == 64));
        // F_4 as an atom
        assert!(names.iter().any(|n| n.contains("F_4") || n.contains("gf(4")
            || n.contains("F4") || n.contains("4")));
        for o in &objs {
            assert!(o.size() <= 64);
            assert!(o.as_ring().validate(false).is_ok());
        }
    }
}
