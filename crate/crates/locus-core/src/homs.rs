//! Hom-set enumeration, optionally constrained on prescribed element
//! images. This is the engine behind mediator counting: most callers ask
//! for "at most 2" witnesses, so every search path takes an early-exit
//! limit. Results are produced in a deterministic order.

use crate::error::{EngineError, Result};
use crate::fields::FieldTable;
use crate::linalg;
use crate::morphism::Morphism;
use crate::object::{Elem, Object};
use alloc::vec::Vec;

/// Hard cap on the number of homomorphisms any single enumeration may
/// produce when no tighter limit is given.
pub const HOM_ENUM_CAP: u64 = 1 << 20;

/// Every homomorphism `a -> b`, in a deterministic order.
pub fn hom_set(a: &Object, b: &Object) -> Result<Vec<Morphism>> {
    constrained_homs(a, b, &[], usize::MAX)
}

/// Up to `limit` homomorphisms `a -> b` with `h(x) = y` for every
/// constraint `(x, y)`. The order is deterministic, so asking for a prefix
/// is reproducible.
pub fn constrained_homs(
    a: &Object,
    b: &Object,
    constraints: &[(Elem, Elem)],
    limit: usize,
) -> Result<Vec<Morphism>> {
    match (a, b) {
        (Object::Set(_), Object::Set(_)) => set_homs(a, b, constraints, limit),
        (Object::Ab(_), Object::Ab(_)) => ab_homs(a, b, constraints, limit),
        (Object::Vect(_), Object::Vect(_)) => vect_homs(a, b, constraints, limit),
        (Object::Ring(_), Object::Ring(_)) => ring_homs(a, b, constraints, limit),
        _ => Err(EngineError::Unsupported {
            what: alloc::format!(
                "hom set between {} and {}",
                a.canonical_name(),
                b.canonical_name()
            ),
        }),
    }
}

fn checked_pow(base: u64, exp: u64, bound: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > bound {
            return None;
        }
    }
    Some(acc)
}

fn set_homs(
    a: &Object,
    b: &Object,
    constraints: &[(Elem, Elem)],
    limit: usize,
) -> Result<Vec<Morphism>> {
    let n = a.size() as usize;
    let m = b.size() as usize;
    let mut table: Vec<Option<u32>> = alloc::vec![None; n];
    for (x, y) in constraints {
        let xi = a.elem_index(x) as usize;
        let yi = b.elem_index(y) as u32;
        match table[xi] {
            Some(prev) if prev != yi => return Ok(Vec::new()),
            _ => table[xi] = Some(yi),
        }
    }
    let free = table.iter().filter(|s| s.is_none()).count() as u64;
    if m == 0 && free > 0 {
        return Ok(Vec::new());
    }
    if limit == usize::MAX && checked_pow(m as u64, free, HOM_ENUM_CAP).is_none() {
        return Err(EngineError::SizeBoundExceeded {
            needed: u64::MAX,
            bound: HOM_ENUM_CAP,
        });
    }
    let mut out = Vec::new();
    let mut cur: Vec<u32> = alloc::vec![0; n];
    fn rec(
        pos: usize,
        table: &[Option<u32>],
        cur: &mut Vec<u32>,
        m: usize,
        a: &Object,
        b: &Object,
        out: &mut Vec<Morphism>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if pos == table.len() {
            out.push(Morphism::from_table(a, b, cur.clone()));
            return;
        }
        match table[pos] {
            Some(v) => {
                cur[pos] = v;
                rec(pos + 1, table, cur, m, a, b, out, limit);
            }
            None => {
                for v in 0..m as u32 {
                    cur[pos] = v;
                    rec(pos + 1, table, cur, m, a, b, out, limit);
                    if out.len() >= limit {
                        return;
                    }
                }
            }
        }
    }
    rec(0, &table, &mut cur, m, a, b, &mut out, limit);
    Ok(out)
}

fn ab_homs(
    a: &Object,
    b: &Object,
    constraints: &[(Elem, Elem)],
    limit: usize,
) -> Result<Vec<Morphism>> {
    let d = a.as_ab();
    let c = b.as_ab();
    let cod_elems = b.elements();
    // candidate images per generator: elements killed by the generator order
    let mut candidates: Vec<Vec<Elem>> = Vec::new();
    let mut total: u64 = 1;
    for &ord in &d.orders {
        let cand: Vec<Elem> = cod_elems
            .iter()
            .filter(|e| c.scale(ord, e) == c.zero())
            .cloned()
            .collect();
        total = total.saturating_mul(cand.len() as u64);
        candidates.push(cand);
    }
    if limit == usize::MAX && total > HOM_ENUM_CAP {
        return Err(EngineError::SizeBoundExceeded {
            needed: total,
            bound: HOM_ENUM_CAP,
        });
    }
    let mut out = Vec::new();
    let mut images: Vec<Elem> = Vec::new();
    rec_ab(d, c, &candidates, constraints, &mut images, &mut out, limit);
    Ok(out)
}

fn rec_ab(
    d: &crate::object::AbObj,
    c: &crate::object::AbObj,
    candidates: &[Vec<Elem>],
    constraints: &[(Elem, Elem)],
    images: &mut Vec<Elem>,
    out: &mut Vec<Morphism>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if images.len() == candidates.len() {
        let h = Morphism::ab_from_gen_images(d, c, images);
        if constraints.iter().all(|(x, y)| &h.apply(x) == y) {
            out.push(h);
        }
        return;
    }
    let j = images.len();
    for cand in &candidates[j] {
        images.push(cand.clone());
        rec_ab(d, c, candidates, constraints, images, out, limit);
        images.pop();
        if out.len() >= limit {
            return;
        }
    }
}

fn vect_homs(
    a: &Object,
    b: &Object,
    constraints: &[(Elem, Elem)],
    limit: usize,
) -> Result<Vec<Morphism>> {
    let d = a.as_vect();
    let c = b.as_vect();
    if d.field != c.field {
        return Ok(Vec::new());
    }
    let f: &FieldTable = &d.field;
    let dc = d.dim as usize;
    let cc = c.dim as usize;
    // the matrix rows are independent unknowns sharing the coefficient
    // matrix built from the constraint inputs
    let mut coeff: Vec<linalg::Row> = constraints.iter().map(|(x, _)| x.clone()).collect();
    let mut rhs_rows: Vec<Vec<u64>> = (0..cc)
        .map(|i| constraints.iter().map(|(_, y)| y[i]).collect())
        .collect();
    if coeff.is_empty() {
        // no constraints: keep the column count visible to the solver
        coeff.push(alloc::vec![0; dc]);
        for r in rhs_rows.iter_mut() {
            r.push(0);
        }
    }
    let mut row_solutions: Vec<(linalg::Row, Vec<linalg::Row>)> = Vec::new();
    let mut total: u64 = 1;
    for rhs in &rhs_rows {
        match linalg::solve_full(f, &coeff, rhs) {
            Some((p, k)) => {
                total = total.saturating_mul(
                    checked_pow(f.order(), k.len() as u64, u64::MAX).unwrap_or(u64::MAX),
                );
                row_solutions.push((p, k));
            }
            None => return Ok(Vec::new()),
        }
    }
    if limit == usize::MAX && total > HOM_ENUM_CAP {
        return Err(EngineError::SizeBoundExceeded {
            needed: total,
            bound: HOM_ENUM_CAP,
        });
    }
    // enumerate kernel combinations row by row, lexicographically
    let mut out = Vec::new();
    let mut rows: Vec<linalg::Row> = Vec::new();
    rec_vect(d, c, f, &row_solutions, &mut rows, &mut out, limit, dc);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn rec_vect(
    d: &crate::object::VectObj,
    c: &crate::object::VectObj,
    f: &FieldTable,
    row_solutions: &[(linalg::Row, Vec<linalg::Row>)],
    rows: &mut Vec<linalg::Row>,
    out: &mut Vec<Morphism>,
    limit: usize,
    dc: usize,
) {
    if out.len() >= limit {
        return;
    }
    if rows.len() == row_solutions.len() {
        let cols: Vec<Elem> = (0..dc)
            .map(|j| rows.iter().map(|r| r[j]).collect())
            .collect();
        out.push(Morphism::vect_from_cols(d, c, &cols));
        return;
    }
    let (particular, kernel) = &row_solutions[rows.len()];
    let mut coeffs = alloc::vec![0u64; kernel.len()];
    loop {
        let mut row = particular.clone();
        for (k, &cf) in kernel.iter().zip(&coeffs) {
            for j in 0..row.len() {
                row[j] = f.add(row[j], f.mul(cf, k[j]));
            }
        }
        rows.push(row);
        rec_vect(d, c, f, row_solutions, rows, out, limit, dc);
        rows.pop();
        if out.len() >= limit {
            return;
        }
        // odometer over kernel coefficients
        let mut pos = kernel.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            coeffs[pos] += 1;
            if coeffs[pos] < f.order() {
                break;
            }
            coeffs[pos] = 0;
        }
    }
}

fn ring_homs(
    a: &Object,
    b: &Object,
    constraints: &[(Elem, Elem)],
    limit: usize,
) -> Result<Vec<Morphism>> {
    let d = a.as_ring();
    let c = b.as_ring();
    let n = d.size();
    let mut img: Vec<Option<u32>> = alloc::vec![None; n];
    let mut seeds: Vec<(u32, u32)> = alloc::vec![(d.zero, c.zero), (d.one, c.one)];
    for (x, y) in constraints {
        seeds.push((x[0] as u32, y[0] as u32));
    }
    if !propagate(d, c, &mut img, &seeds) {
        return Ok(Vec::new());
    }
    let add_ord_d = additive_orders(d);
    let add_ord_c = additive_orders(c);
    let mut out = Vec::new();
    search_ring(d, c, &img, &add_ord_d, &add_ord_c, &mut out, limit);
    if limit == usize::MAX && out.len() as u64 > HOM_ENUM_CAP {
        return Err(EngineError::SizeBoundExceeded {
            needed: out.len() as u64,
            bound: HOM_ENUM_CAP,
        });
    }
    Ok(out)
}

fn additive_orders(r: &crate::object::RingObj) -> Vec<u32> {
    (0..r.size() as u32)
        .map(|x| {
            let mut acc = x;
            let mut ord = 1u32;
            while acc != r.zero {
                acc = r.a(acc, x);
                ord += 1;
            }
            ord
        })
        .collect()
}

/// Extend a partial ring map by closure under `+`, `*`, and negation.
/// Returns false on contradiction.
fn propagate(
    d: &crate::object::RingObj,
    c: &crate::object::RingObj,
    img: &mut [Option<u32>],
    seeds: &[(u32, u32)],
) -> bool {
    let mut queue: Vec<(u32, u32)> = seeds.to_vec();
    while let Some((x, y)) = queue.pop() {
        match img[x as usize] {
            Some(prev) => {
                if prev != y {
                    return false;
                }
                continue;
            }
            None => img[x as usize] = Some(y),
        }
        queue.push((d.n(x), c.n(y)));
        for z in 0..d.size() as u32 {
            if let Some(zy) = img[z as usize] {
                queue.push((d.a(x, z), c.a(y, zy)));
                queue.push((d.m(x, z), c.m(y, zy)));
            }
        }
    }
    // law check on everything defined so far
    for x in 0..d.size() as u32 {
        let Some(xi) = img[x as usize] else { continue };
        for z in 0..d.size() as u32 {
            let Some(zi) = img[z as usize] else { continue };
            if let Some(s) = img[d.a(x, z) as usize] {
                if s != c.a(xi, zi) {
                    return false;
                }
            }
            if let Some(p) = img[d.m(x, z) as usize] {
                if p != c.m(xi, zi) {
                    return false;
                }
            }
        }
    }
    true
}

fn search_ring(
    d: &crate::object::RingObj,
    c: &crate::object::RingObj,
    img: &[Option<u32>],
    add_ord_d: &[u32],
    add_ord_c: &[u32],
    out: &mut Vec<Morphism>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let Some(next) = img.iter().position(|s| s.is_none()) else {
        let table: Vec<u32> = img.iter().map(|s| s.unwrap()).collect();
        let h = Morphism::from_table(
            &Object::Ring(d.clone()),
            &Object::Ring(c.clone()),
            table,
        );
        debug_assert!(h.is_valid());
        out.push(h);
        return;
    };
    for y in 0..c.size() as u32 {
        if add_ord_d[next] % add_ord_c[y as usize] != 0 {
            continue;
        }
        let mut trial: Vec<Option<u32>> = img.to_vec();
        if propagate(d, c, &mut trial, &[(next as u32, y)]) {
            search_ring(d, c, &trial, add_ord_d, add_ord_c, out, limit);
            if out.len() >= limit {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::{basis_elem, gen_elem};
    use crate::object::{AbObj, SetObj, VectObj};
    use crate::ring;

    #[test]
    fn set_hom_counts() {
        let a = Object::Set(SetObj::canonical(2));
        let b = Object::Set(SetObj::canonical(3));
        assert_eq!(hom_set(&a, &b).unwrap().len(), 9);
        let empty = Object::Set(SetObj::new(Vec::new()).unwrap());
        assert_eq!(hom_set(&empty, &b).unwrap().len(), 1);
        assert_eq!(hom_set(&a, &empty).unwrap().len(), 0);
    }

    #[test]
    fn set_constrained_pins_values() {
        let a = Object::Set(SetObj::canonical(2));
        let b = Object::Set(SetObj::canonical(3));
        let homs =
            constrained_homs(&a, &b, &[(alloc::vec![0], alloc::vec![2])], usize::MAX).unwrap();
        assert_eq!(homs.len(), 3);
        for h in &homs {
            assert_eq!(h.apply(&alloc::vec![0]), alloc::vec![2]);
        }
    }

    #[test]
    fn ab_hom_counts() {
        // hom(Z/4, Z/2) has 2 members; hom(Z/2, Z/4) has 2; hom(Z/6, Z/4) has 2
        let z4 = Object::Ab(AbObj::cyclic(4));
        let z2 = Object::Ab(AbObj::cyclic(2));
        let z6 = Object::Ab(AbObj::cyclic(6));
        assert_eq!(hom_set(&z4, &z2).unwrap().len(), 2);
        assert_eq!(hom_set(&z2, &z4).unwrap().len(), 2);
        assert_eq!(hom_set(&z6, &z4).unwrap().len(), 2);
        for h in hom_set(&z6, &z4).unwrap() {
            assert!(h.is_valid());
        }
    }

    #[test]
    fn ab_constrained_unique() {
        // h: Z/6 -> Z/3 with h(1) = 1 is unique
        let z6 = Object::Ab(AbObj::cyclic(6));
        let z3 = Object::Ab(AbObj::cyclic(3));
        let homs =
            constrained_homs(&z6, &z3, &[(alloc::vec![1], alloc::vec![1])], usize::MAX).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].apply(&alloc::vec![4]), alloc::vec![1]);
    }

    #[test]
    fn vect_hom_counts() {
        let f2 = FieldTable::prime(2).unwrap();
        let v1 = Object::Vect(VectObj::new(f2.clone(), 1));
        let v2 = Object::Vect(VectObj::new(f2.clone(), 2));
        assert_eq!(hom_set(&v1, &v2).unwrap().len(), 4);
        assert_eq!(hom_set(&v2, &v1).unwrap().len(), 4);
        // constrained: h(e1) = (1,1) leaves the second column free
        let homs = constrained_homs(
            &v2,
            &v2,
            &[(alloc::vec![1, 0], alloc::vec![1, 1])],
            usize::MAX,
        )
        .unwrap();
        assert_eq!(homs.len(), 4);
        for h in &homs {
            assert_eq!(h.apply(&alloc::vec![1, 0]), alloc::vec![1, 1]);
        }
    }

    #[test]
    fn vect_limit_short_circuits() {
        let f3 = FieldTable::prime(3).unwrap();
        let v2 = Object::Vect(VectObj::new(f3, 2));
        let homs = constrained_homs(&v2, &v2, &[], 2).unwrap();
        assert_eq!(homs.len(), 2);
    }

    #[test]
    fn ring_hom_counts() {
        // unital ring maps Z/6 -> Z/6: determined by 1, so exactly one
        let z6 = Object::Ring(ring::cyclic_ring(6));
        assert_eq!(hom_set(&z6, &z6).unwrap().len(), 1);
        // Z/6 -> Z/2: the mod-2 reduction only
        let z2 = Object::Ring(ring::cyclic_ring(2));
        let homs = hom_set(&z6, &z2).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(homs[0].is_valid());
        // Z/2 -> Z/6: 1 -> 3 wait: must send 1 to 1; 2*1=0 in dom, 2*1=2 != 0 in cod
        let none = hom_set(&z2, &z6).unwrap();
        assert_eq!(none.len(), 0);
    }

    #[test]
    fn ring_hom_frobenius_on_f4() {
        let f4 = Object::Ring(ring::field_ring(&FieldTable::default_for(4).unwrap()));
        let homs = hom_set(&f4, &f4).unwrap();
        // identity and Frobenius
        assert_eq!(homs.len(), 2);
        assert!(homs.contains(&Morphism::identity(&f4)));
    }

    #[test]
    fn ring_hom_f2_into_f4() {
        let f2 = Object::Ring(ring::cyclic_ring(2));
        let f4 = Object::Ring(ring::field_ring(&FieldTable::default_for(4).unwrap()));
        assert_eq!(hom_set(&f2, &f4).unwrap().len(), 1);
        assert_eq!(hom_set(&f4, &f2).unwrap().len(), 0);
    }

    #[test]
    fn generator_elem_helpers_roundtrip() {
        let g = AbObj::new(alloc::vec![2, 4]).unwrap();
        assert_eq!(gen_elem(&g, 1), alloc::vec![0, 1]);
        let f2 = FieldTable::prime(2).unwrap();
        let v = VectObj::new(f2, 3);
        assert_eq!(basis_elem(&v, 2), alloc::vec![0, 0, 1]);
    }
}
