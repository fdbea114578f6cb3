//! Finite abelian groups beyond the raw object type: Smith-normal
//! canonicalization, subgroups generated by elements (with witness
//! inclusions), and quotients by relation elements.

use crate::morphism::{gen_elem, Morphism};
use crate::object::{AbObj, Elem};
use crate::snf::{integer_kernel, snf, IntMat};
use alloc::vec::Vec;

/// Canonical Smith-normal form of `Z/orders[0] + Z/orders[1] + ...`.
/// Entries equal to 1 vanish; `[2,3]` becomes `[6]`.
pub fn build_fin_ab(orders: &[u64]) -> AbObj {
    assert!(orders.iter().all(|&d| d >= 1), "orders must be >= 1");
    let nontrivial: Vec<u64> = orders.iter().copied().filter(|&d| d > 1).collect();
    if nontrivial.is_empty() {
        return AbObj::trivial();
    }
    let n = nontrivial.len();
    let mut diag = IntMat::zero(n, n);
    for i in 0..n {
        diag[(i, i)] = nontrivial[i] as i64;
    }
    let s = snf(&diag);
    let chain: Vec<u64> = s
        .diagonal()
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| d as u64)
        .collect();
    AbObj::new(chain).expect("SNF yields a divisor chain")
}

/// The subgroup of `amb` generated by `gens`, canonicalized.
pub struct SubgroupData {
    /// Canonical form of the subgroup.
    pub obj: AbObj,
    /// Monomorphism `obj -> amb` onto the subgroup.
    pub include: Morphism,
    /// For each input generator, its coordinates in `obj`
    /// (so `include(gen_coords[i]) = gens[i]`).
    pub gen_coords: Vec<Elem>,
}

pub fn subgroup_from_generators(amb: &AbObj, gens: &[Elem]) -> SubgroupData {
    let n = amb.orders.len();
    let m = gens.len();
    // relation lattice K = {x in Z^m : G x = 0 in amb}
    //                    = projection of ker [G | diag(orders)] to the first m coords
    let mut gm = IntMat::zero(n, m + n);
    for (j, g) in gens.iter().enumerate() {
        for i in 0..n {
            gm[(i, j)] = g[i] as i64;
        }
    }
    for i in 0..n {
        gm[(i, m + i)] = amb.orders[i] as i64;
    }
    let ker = integer_kernel(&gm);
    let mut rel = IntMat::zero(m, ker.len());
    for (c, v) in ker.iter().enumerate() {
        for r in 0..m {
            rel[(r, c)] = v[r];
        }
    }
    let s = snf(&rel);
    // invariant factors of Z^m / K; all positive because K has full rank
    let diag = s.diagonal();
    debug_assert_eq!(diag.len(), m.min(rel.cols));
    let mut orders: Vec<u64> = Vec::new();
    let mut kept: Vec<usize> = Vec::new();
    for j in 0..m {
        let d = if j < diag.len() { diag[j] } else { 0 };
        assert!(d != 0, "relation lattice must have full rank");
        if d > 1 {
            orders.push(d as u64);
            kept.push(j);
        }
    }
    let obj = AbObj::new(orders).expect("SNF yields a divisor chain");
    // new generators h_j = G * (u_inv column j), reduced in amb
    let images: Vec<Elem> = kept
        .iter()
        .map(|&j| {
            let col = s.u_inv.col(j);
            let mut acc = amb.zero();
            for (t, &c) in col.iter().enumerate() {
                let k = c.rem_euclid(amb.orders.iter().product::<u64>().max(1) as i64) as u64;
                acc = amb.add(&acc, &amb.scale(k, &gens[t]));
            }
            acc
        })
        .collect();
    let include = Morphism::ab_from_gen_images(&obj, amb, &images);
    // coordinates of the original generators: column i of U, mod the kept orders
    let gen_coords: Vec<Elem> = (0..m)
        .map(|i| {
            kept.iter()
                .zip(&obj.orders)
                .map(|(&j, &d)| s.u[(j, i)].rem_euclid(d as i64) as u64)
                .collect()
        })
        .collect();
    SubgroupData { obj, include, gen_coords }
}

/// Quotient of `amb` by the subgroup generated by `rels`.
/// Returns the canonical quotient and the projection.
pub fn quotient_by_relations(amb: &AbObj, rels: &[Elem]) -> (AbObj, Morphism) {
    let n = amb.orders.len();
    let t = rels.len();
    let mut m = IntMat::zero(n, t + n);
    for (j, r) in rels.iter().enumerate() {
        for i in 0..n {
            m[(i, j)] = r[i] as i64;
        }
    }
    for i in 0..n {
        m[(i, t + i)] = amb.orders[i] as i64;
    }
    let s = snf(&m);
    let diag = s.diagonal();
    let mut orders: Vec<u64> = Vec::new();
    let mut kept: Vec<usize> = Vec::new();
    for (i, &d) in diag.iter().enumerate().take(n) {
        assert!(d != 0, "quotient of a finite group is finite");
        if d > 1 {
            orders.push(d as u64);
            kept.push(i);
        }
    }
    let q = AbObj::new(orders).expect("SNF yields a divisor chain");
    // projection: amb generator g_i -> (U e_i) at the kept rows, mod d
    let images: Vec<Elem> = (0..n)
        .map(|i| {
            kept.iter()
                .zip(&q.orders)
                .map(|(&row, &d)| s.u[(row, i)].rem_euclid(d as i64) as u64)
                .collect()
        })
        .collect();
    let proj = Morphism::ab_from_gen_images(amb, &q, &images);
    (q, proj)
}

/// Direct sum of groups, canonicalized, with injections and projections
/// through the canonicalizing isomorphism.
pub struct DirectSumData {
    pub obj: AbObj,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

pub fn direct_sum(parts: &[AbObj]) -> DirectSumData {
    let raw_orders: Vec<u64> = parts.iter().flat_map(|p| p.orders.iter().copied()).collect();
    let raw = AbObj { orders: raw_orders.clone() };
    // canonicalize via subgroup-of-itself generated by the standard generators
    let gens: Vec<Elem> = (0..raw_orders.len()).map(|j| gen_elem(&raw, j)).collect();
    let sub = subgroup_from_generators(&raw, &gens);
    debug_assert_eq!(sub.obj.order(), raw.order());
    let obj = sub.obj;
    // injections: part k generator j -> coords of raw generator (offset + j) in obj
    let mut injections = Vec::with_capacity(parts.len());
    let mut offset = 0usize;
    for part in parts {
        let images: Vec<Elem> = (0..part.orders.len())
            .map(|j| sub.gen_coords[offset + j].clone())
            .collect();
        injections.push(Morphism::ab_from_gen_images(part, &obj, &images));
        offset += part.orders.len();
    }
    // projections: obj generator -> raw coords (via include) -> slice per part
    let mut projections = Vec::with_capacity(parts.len());
    let mut offset = 0usize;
    for part in parts {
        let width = part.orders.len();
        let images: Vec<Elem> = (0..obj.orders.len())
            .map(|j| {
                let raw_coords = sub.include.apply(&gen_elem(&obj, j));
                raw_coords[offset..offset + width].to_vec()
            })
            .collect();
        projections.push(Morphism::ab_from_gen_images(&obj, part, &images));
        offset += width;
    }
    DirectSumData { obj, injections, projections }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::object::Object;

    #[test]
    fn build_fin_ab_examples() {
        assert_eq!(build_fin_ab(&[2, 3]).orders, alloc::vec![6]);
        assert_eq!(build_fin_ab(&[1]).orders, Vec::<u64>::new());
        assert_eq!(build_fin_ab(&[2, 4]).orders, alloc::vec![2, 4]);
        assert_eq!(build_fin_ab(&[4, 2]).orders, alloc::vec![2, 4]);
        assert_eq!(build_fin_ab(&[2, 2, 3]).orders, alloc::vec![2, 6]);
        assert_eq!(build_fin_ab(&[6, 4]).orders, alloc::vec![2, 12]);
    }

    #[test]
    fn build_fin_ab_permutation_invariant() {
        let lists: [&[u64]; 3] = [&[2, 3, 4], &[4, 3, 2], &[3, 4, 2]];
        let first = build_fin_ab(lists[0]);
        for l in &lists[1..] {
            assert_eq!(build_fin_ab(l), first);
        }
    }

    #[test]
    fn subgroup_of_z4_generated_by_2() {
        let z4 = AbObj::cyclic(4);
        let sub = subgroup_from_generators(&z4, &[alloc::vec![2]]);
        assert_eq!(sub.obj.orders, alloc::vec![2]);
        assert!(sub.include.is_valid());
        // include(gen_coords[0]) = [2]
        assert_eq!(sub.include.apply(&sub.gen_coords[0]), alloc::vec![2]);
        // mono: both elements map to distinct images
        let o = Object::Ab(sub.obj.clone());
        let mut imgs: Vec<Elem> = o.elements().iter().map(|e| sub.include.apply(e)).collect();
        imgs.sort();
        imgs.dedup();
        assert_eq!(imgs.len(), 2);
    }

    #[test]
    fn subgroup_generated_by_nothing_is_trivial() {
        let z4 = AbObj::cyclic(4);
        let sub = subgroup_from_generators(&z4, &[]);
        assert_eq!(sub.obj, AbObj::trivial());
    }

    #[test]
    fn quotient_examples() {
        let z4 = AbObj::cyclic(4);
        let (q, proj) = quotient_by_relations(&z4, &[alloc::vec![2]]);
        assert_eq!(q.orders, alloc::vec![2]);
        assert!(proj.is_valid());
        assert_eq!(proj.apply(&alloc::vec![1]), alloc::vec![1]);
        assert_eq!(proj.apply(&alloc::vec![2]), alloc::vec![0]);

        // Z/6 / <3> = Z/3
        let z6 = AbObj::cyclic(6);
        let (q, _) = quotient_by_relations(&z6, &[alloc::vec![3]]);
        assert_eq!(q.orders, alloc::vec![3]);

        // quotient by nothing = identity-like
        let (q, proj) = quotient_by_relations(&z6, &[]);
        assert_eq!(q.orders, alloc::vec![6]);
        let o = Object::Ab(z6);
        let mut imgs: Vec<Elem> = o.elements().iter().map(|e| proj.apply(e)).collect();
        imgs.sort();
        imgs.dedup();
        assert_eq!(imgs.len(), 6);
    }

    #[test]
    fn direct_sum_z2_z3_is_z6() {
        let d = direct_sum(&[AbObj::cyclic(2), AbObj::cyclic(3)]);
        assert_eq!(d.obj.orders, alloc::vec![6]);
        for (inj, part) in d.injections.iter().zip([AbObj::cyclic(2), AbObj::cyclic(3)]) {
            assert!(inj.is_valid());
            assert_eq!(inj.dom, Object::Ab(part));
        }
        // proj_k . inj_k = id, proj_j . inj_k = 0 for j != k
        for k in 0..2 {
            for j in 0..2 {
                let comp = Morphism::compose(&d.projections[j], &d.injections[k]);
                if j == k {
                    assert_eq!(comp, Morphism::identity(&d.injections[k].dom));
                } else {
                    assert_eq!(comp, Morphism::zero(&d.injections[k].dom, &d.projections[j].cod));
                }
            }
        }
        // injections are jointly surjective: images generate
        let i0 = d.injections[0].apply(&alloc::vec![1]);
        let i1 = d.injections[1].apply(&alloc::vec![1]);
        let sub = subgroup_from_generators(&d.obj, &[i0, i1]);
        assert_eq!(sub.obj.order(), 6);
    }

    #[test]
    fn direct_sum_empty_is_trivial() {
        let d = direct_sum(&[]);
        assert_eq!(d.obj, AbObj::trivial());
    }
}
