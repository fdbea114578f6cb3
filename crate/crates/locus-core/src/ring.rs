//! Finite commutative ring constructions: cyclic rings, table-backed fields,
//! products, polynomial quotients, subrings, ideals and primes, idempotent
//! decomposition into local factors, and localization at a multiplicative set.

use crate::error::{EngineError, Result};
use crate::fields::FieldTable;
use crate::morphism::Morphism;
use crate::object::{Object, RingObj};
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

/// `Z/n` with elements `0..n`.
pub fn cyclic_ring(n: u64) -> RingObj {
    assert!(n >= 1);
    let n_us = n as usize;
    let mut add = Vec::with_capacity(n_us * n_us);
    let mut mul = Vec::with_capacity(n_us * n_us);
    for a in 0..n {
        for b in 0..n {
            add.push(((a + b) % n) as u32);
            mul.push(((a * b) % n) as u32);
        }
    }
    RingObj {
        name: format!("Z/{n}"),
        labels: (0..n).map(|i| format!("{i}")).collect(),
        add,
        mul,
        neg: (0..n).map(|a| ((n - a) % n) as u32).collect(),
        zero: 0,
        one: (1 % n) as u32,
    }
}

/// The one-element ring (0 = 1). Only legal as a sheaf-section value.
pub fn zero_ring() -> RingObj {
    RingObj {
        name: String::from("0"),
        labels: alloc::vec![String::from("0")],
        add: alloc::vec![0],
        mul: alloc::vec![0],
        neg: alloc::vec![0],
        zero: 0,
        one: 0,
    }
}

/// A field, as a table ring. The defining polynomial is recorded in the name.
pub fn field_ring(f: &FieldTable) -> RingObj {
    let q = f.order();
    let mut add = Vec::with_capacity((q * q) as usize);
    let mut mul = Vec::with_capacity((q * q) as usize);
    for a in 0..q {
        for b in 0..q {
            add.push(f.add(a, b) as u32);
            mul.push(f.mul(a, b) as u32);
        }
    }
    RingObj {
        name: f.canonical_name(),
        labels: (0..q).map(|i| format!("{i}")).collect(),
        add,
        mul,
        neg: (0..q).map(|a| f.neg(a) as u32).collect(),
        zero: 0,
        one: 1,
    }
}

/// Direct product with componentwise operations. Element index is
/// mixed-radix over the factors, first factor most significant.
pub fn product_ring(factors: &[RingObj]) -> RingObj {
    if factors.is_empty() {
        return zero_ring();
    }
    let sizes: Vec<usize> = factors.iter().map(|r| r.size()).collect();
    let total: usize = sizes.iter().product();
    let decode = |mut i: usize| -> Vec<u32> {
        let mut c = alloc::vec![0u32; sizes.len()];
        for k in (0..sizes.len()).rev() {
            c[k] = (i % sizes[k]) as u32;
            i /= sizes[k];
        }
        c
    };
    let encode = |c: &[u32]| -> u32 {
        let mut i = 0usize;
        for k in 0..sizes.len() {
            i = i * sizes[k] + c[k] as usize;
        }
        i as u32
    };
    let mut add = Vec::with_capacity(total * total);
    let mut mul = Vec::with_capacity(total * total);
    let mut neg = Vec::with_capacity(total);
    let mut labels = Vec::with_capacity(total);
    for a in 0..total {
        let ca = decode(a);
        labels.push(format!(
            "({})",
            ca.iter()
                .enumerate()
                .map(|(k, &x)| factors[k].labels[x as usize].clone())
                .collect::<Vec<_>>()
                .join("|")
        ));
        neg.push(encode(
            &ca.iter()
                .enumerate()
                .map(|(k, &x)| factors[k].n(x))
                .collect::<Vec<_>>(),
        ));
        for b in 0..total {
            let cb = decode(b);
            let s: Vec<u32> = (0..sizes.len()).map(|k| factors[k].a(ca[k], cb[k])).collect();
            let p: Vec<u32> = (0..sizes.len()).map(|k| factors[k].m(ca[k], cb[k])).collect();
            add.push(encode(&s));
            mul.push(encode(&p));
        }
    }
    let one: Vec<u32> = factors.iter().map(|r| r.one).collect();
    let zero: Vec<u32> = factors.iter().map(|r| r.zero).collect();
    RingObj {
        name: format!(
            "({})",
            factors.iter().map(|r| r.name.clone()).collect::<Vec<_>>().join(" x ")
        ),
        labels,
        add,
        mul,
        neg: neg.clone(),
        zero: encode(&zero),
        one: encode(&one),
    }
}

/// Projection onto the k-th factor of a `product_ring` result.
pub fn product_projection(factors: &[RingObj], product: &RingObj, k: usize) -> Morphism {
    let sizes: Vec<usize> = factors.iter().map(|r| r.size()).collect();
    let table: Vec<u32> = (0..product.size())
        .map(|mut i| {
            for j in (0..sizes.len()).rev() {
                let c = (i % sizes[j]) as u32;
                if j == k {
                    return c;
                }
                i /= sizes[j];
            }
            unreachable!()
        })
        .collect();
    Morphism::from_table(
        &Object::Ring(product.clone()),
        &Object::Ring(factors[k].clone()),
        table,
    )
}

/// `(Z/n)[x]/(poly)` with `poly` monic, coefficients mod n, low degree first.
pub fn poly_quotient_ring(n: u64, poly: &[u64], bound: u64) -> Result<RingObj> {
    let d = poly.len() - 1;
    if d == 0 || poly[d] % n != 1 {
        return Err(EngineError::AxiomViolation {
            law: String::from("quotient polynomial must be monic of degree >= 1"),
            witness: format!("{poly:?}"),
        });
    }
    let size = n.checked_pow(d as u32).ok_or(EngineError::SizeBoundExceeded {
        needed: u64::MAX,
        bound,
    })?;
    if size > bound {
        return Err(EngineError::SizeBoundExceeded { needed: size, bound });
    }
    let size = size as usize;
    let decode = |mut i: usize| -> Vec<u64> {
        let mut c = alloc::vec![0u64; d];
        for item in c.iter_mut() {
            *item = (i as u64) % n;
            i /= n as usize;
        }
        c
    };
    let encode = |c: &[u64]| -> u32 {
        let mut i = 0u64;
        for k in (0..d).rev() {
            i = i * n + c[k] % n;
        }
        i as u32
    };
    let reduce = |prod: &mut Vec<u64>| {
        for deg in (d..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for j in 0..d {
                let sub = (c * (poly[j] % n)) % n;
                prod[deg - d + j] = (prod[deg - d + j] + n - sub) % n;
            }
        }
    };
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    let mut neg = Vec::with_capacity(size);
    let mut labels = Vec::with_capacity(size);
    for a in 0..size {
        let ca = decode(a);
        labels.push(format!("{ca:?}"));
        neg.push(encode(&ca.iter().map(|&x| (n - x) % n).collect::<Vec<_>>()));
        for b in 0..size {
            let cb = decode(b);
            let s: Vec<u64> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % n).collect();
            let mut p = alloc::vec![0u64; 2 * d];
            for (i, &x) in ca.iter().enumerate() {
                for (j, &y) in cb.iter().enumerate() {
                    p[i + j] = (p[i + j] + x * y) % n;
                }
            }
            reduce(&mut p);
            add.push(encode(&s));
            mul.push(encode(&p[..d]));
        }
    }
    let mut one = alloc::vec![0u64; d];
    one[0] = 1 % n;
    Ok(RingObj {
        name: format!("(Z/{n})[x]/{poly:?}"),
        labels,
        add,
        mul,
        neg,
        zero: 0,
        one: encode(&one),
    })
}

/// Ring description used in job files and the battery.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingSpec {
    ZMod(u64),
    /// `F_{p^k}`; `poly` defaults to the shipped polynomial for small fields.
    GF { p: u64, k: u32, poly: Option<Vec<u64>> },
    Product(Vec<RingSpec>),
    /// `(Z/n)[x]/(poly)`, poly monic, low degree first.
    PolyQuotient { modulus: u64, poly: Vec<u64> },
}

pub fn build_ring(spec: &RingSpec, bound: u64) -> Result<RingObj> {
    let ring = match spec {
        RingSpec::ZMod(n) => {
            if *n < 2 {
                return Err(EngineError::AxiomViolation {
                    law: String::from("Z/n requires n >= 2"),
                    witness: format!("n={n}"),
                });
            }
            if *n > bound {
                return Err(EngineError::SizeBoundExceeded { needed: *n, bound });
            }
            cyclic_ring(*n)
        }
        RingSpec::GF { p, k, poly } => {
            let f = match poly {
                Some(poly) => FieldTable::new(*p, *k, poly.clone())?,
                None => FieldTable::default_for(p.pow(*k))?,
            };
            if f.order() > bound {
                return Err(EngineError::SizeBoundExceeded { needed: f.order(), bound });
            }
            field_ring(&f)
        }
        RingSpec::Product(parts) => {
            let factors: Vec<RingObj> = parts
                .iter()
                .map(|s| build_ring(s, bound))
                .collect::<Result<_>>()?;
            let total: u64 = factors.iter().map(|r| r.size() as u64).product();
            if total > bound {
                return Err(EngineError::SizeBoundExceeded { needed: total, bound });
            }
            product_ring(&factors)
        }
        RingSpec::PolyQuotient { modulus, poly } => poly_quotient_ring(*modulus, poly, bound)?,
    };
    ring.validate(false)?;
    Ok(ring)
}

pub fn is_unit(r: &RingObj, x: u32) -> bool {
    r.inverse(x).is_some()
}

pub fn units(r: &RingObj) -> Vec<u32> {
    (0..r.size() as u32).filter(|&x| is_unit(r, x)).collect()
}

pub fn idempotents(r: &RingObj) -> Vec<u32> {
    (0..r.size() as u32).filter(|&e| r.m(e, e) == e).collect()
}

/// Is the subset (given as a sorted element list) an ideal?
pub fn is_ideal(r: &RingObj, subset: &[u32]) -> bool {
    let set: BTreeSet<u32> = subset.iter().copied().collect();
    if !set.contains(&r.zero) {
        return false;
    }
    for &a in &set {
        for &b in &set {
            if !set.contains(&r.a(a, b)) {
                return false;
            }
        }
        if !set.contains(&r.n(a)) {
            return false;
        }
        for x in 0..r.size() as u32 {
            if !set.contains(&r.m(a, x)) {
                return false;
            }
        }
    }
    true
}

/// Prime check: proper ideal with multiplicatively closed complement.
pub fn is_prime_ideal(r: &RingObj, subset: &[u32]) -> Result<()> {
    let set: BTreeSet<u32> = subset.iter().copied().collect();
    if !is_ideal(r, subset) {
        return Err(EngineError::NotPrime {
            reason: String::from("subset is not an ideal"),
        });
    }
    if set.len() == r.size() {
        return Err(EngineError::NotPrime {
            reason: String::from("ideal is not proper"),
        });
    }
    for x in 0..r.size() as u32 {
        for y in 0..r.size() as u32 {
            if !set.contains(&x) && !set.contains(&y) && set.contains(&r.m(x, y)) {
                return Err(EngineError::NotPrime {
                    reason: format!(
                        "complement not multiplicatively closed: {} * {}",
                        r.labels[x as usize], r.labels[y as usize]
                    ),
                });
            }
        }
    }
    Ok(())
}

/// Ideal generated by a set of elements.
pub fn ideal_generated(r: &RingObj, gens: &[u32]) -> Vec<u32> {
    let mut set: BTreeSet<u32> = BTreeSet::new();
    set.insert(r.zero);
    for &g in gens {
        for x in 0..r.size() as u32 {
            set.insert(r.m(g, x));
        }
    }
    // close under addition
    loop {
        let mut grew = false;
        let cur: Vec<u32> = set.iter().copied().collect();
        for &a in &cur {
            for &b in &cur {
                if set.insert(r.a(a, b)) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    set.into_iter().collect()
}

/// Re-table a multiplicatively/additively closed subset as its own ring.
/// Returns the ring and the element list (positions -> ambient indices).
fn ring_from_subset(r: &RingObj, subset: &[u32], one: u32, name: String) -> (RingObj, Vec<u32>) {
    let mut elems: Vec<u32> = subset.to_vec();
    elems.sort_unstable();
    elems.dedup();
    let pos = |x: u32| elems.binary_search(&x).expect("subset not closed") as u32;
    let n = elems.len();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for &a in &elems {
        for &b in &elems {
            add.push(pos(r.a(a, b)));
            mul.push(pos(r.m(a, b)));
        }
    }
    let ring = RingObj {
        name,
        labels: elems.iter().map(|&i| r.labels[i as usize].clone()).collect(),
        add,
        mul,
        neg: elems.iter().map(|&a| pos(r.n(a))).collect(),
        zero: pos(r.zero),
        one: pos(one),
        };
    (ring, elems)
}

/// Smallest unital subring of `ambient` containing `gens`:
/// closure of `gens ∪ {0, 1}` under `+`, `-`, `*`.
/// Returns the subring and its inclusion morphism.
pub fn subring_generated(ambient: &RingObj, gens: &[u32]) -> (RingObj, Morphism) {
    let mut set: BTreeSet<u32> = gens.iter().copied().collect();
    set.insert(ambient.zero);
    set.insert(ambient.one);
    loop {
        let mut grew = false;
        let cur: Vec<u32> = set.iter().copied().collect();
        for &a in &cur {
            if set.insert(ambient.n(a)) {
                grew = true;
            }
            for &b in &cur {
                if set.insert(ambient.a(a, b)) {
                    grew = true;
                }
                if set.insert(ambient.m(a, b)) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let subset: Vec<u32> = set.into_iter().collect();
    let (ring, elems) = ring_from_subset(
        ambient,
        &subset,
        ambient.one,
        format!("<{} gens> in {}", gens.len(), ambient.name),
    );
    let incl = Morphism::from_table(
        &Object::Ring(ring.clone()),
        &Object::Ring(ambient.clone()),
        elems,
    );
    (ring, incl)
}

/// Quotient `r / ideal`: cosets labelled by their minimal representative.
pub fn quotient_by_ideal(r: &RingObj, ideal: &[u32]) -> (RingObj, Morphism) {
    debug_assert!(is_ideal(r, ideal));
    let n = r.size() as u32;
    // coset representative: minimal element index in a + I
    let mut rep = alloc::vec![u32::MAX; n as usize];
    for a in 0..n {
        let mut m = a;
        for &i in ideal {
            m = m.min(r.a(a, i));
        }
        rep[a as usize] = m;
    }
    let mut reps: Vec<u32> = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let pos = |x: u32| reps.binary_search(&rep[x as usize]).unwrap() as u32;
    let k = reps.len();
    let mut add = Vec::with_capacity(k * k);
    let mut mul = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            add.push(pos(r.a(a, b)));
            mul.push(pos(r.m(a, b)));
        }
    }
    let q = RingObj {
        name: format!("{}/I{}", r.name, ideal.len()),
        labels: reps.iter().map(|&i| format!("[{}]", r.labels[i as usize])).collect(),
        add,
        mul,
        neg: reps.iter().map(|&a| pos(r.n(a))).collect(),
        zero: pos(r.zero),
        one: pos(r.one),
    };
    let proj = Morphism::from_table(
        &Object::Ring(r.clone()),
        &Object::Ring(q.clone()),
        (0..n).map(pos).collect(),
    );
    (q, proj)
}

/// Multiplicative closure of a set of elements (always contains 1).
pub fn multiplicative_closure(r: &RingObj, gens: &[u32]) -> Vec<u32> {
    let mut set: BTreeSet<u32> = BTreeSet::new();
    set.insert(r.one);
    let mut frontier: Vec<u32> = gens.to_vec();
    while let Some(s) = frontier.pop() {
        if set.insert(s) {
            let cur: Vec<u32> = set.iter().copied().collect();
            for &t in &cur {
                frontier.push(r.m(s, t));
            }
        }
    }
    set.into_iter().collect()
}

/// Localization `S^{-1} r` for a finite ring: the quotient by the
/// annihilator ideal `I = {a : s a = 0 for some s in S}`. In a finite ring
/// the images of `S` are automatically invertible in `r / I`, and the
/// quotient satisfies the fraction-ring universal property (the literal
/// fraction-pair construction is kept as a test oracle).
pub fn localize_at_set(r: &RingObj, s_gens: &[u32]) -> (RingObj, Morphism) {
    let s = multiplicative_closure(r, s_gens);
    let ann: Vec<u32> = (0..r.size() as u32)
        .filter(|&a| s.iter().any(|&x| r.m(x, a) == r.zero))
        .collect();
    debug_assert!(is_ideal(r, &ann));
    let (q, proj) = quotient_by_ideal(r, &ann);
    // images of S must now be units
    for &x in &s {
        let img = proj.apply(&alloc::vec![x as u64])[0] as u32;
        debug_assert!(is_unit(&q, img), "localized element not invertible");
    }
    (q, proj)
}

/// The literal fraction construction `{(a, s)} / ~`, used as an independent
/// oracle for `localize_at_set` on small rings.
pub fn localize_by_fractions(r: &RingObj, s_gens: &[u32]) -> RingObj {
    let s = multiplicative_closure(r, s_gens);
    let n = r.size() as u32;
    let equiv = |(a, sa): (u32, u32), (b, sb): (u32, u32)| -> bool {
        s.iter().any(|&u| {
            r.m(u, r.a(r.m(a, sb), r.n(r.m(b, sa)))) == r.zero
        })
    };
    let mut classes: Vec<(u32, u32)> = Vec::new();
    let mut class_of = alloc::vec![0u32; (n as usize) * s.len()];
    for a in 0..n {
        for (si, &sv) in s.iter().enumerate() {
            let idx = a as usize * s.len() + si;
            match classes.iter().position(|&c| equiv(c, (a, sv))) {
                Some(p) => class_of[idx] = p as u32,
                None => {
                    class_of[idx] = classes.len() as u32;
                    classes.push((a, sv));
                }
            }
        }
    }
    let find = |a: u32, sv: u32| -> u32 {
        classes
            .iter()
            .position(|&c| equiv(c, (a, sv)))
            .expect("class missing") as u32
    };
    let k = classes.len();
    let mut add = Vec::with_capacity(k * k);
    let mut mul = Vec::with_capacity(k * k);
    for &(a, sa) in &classes {
        for &(b, sb) in &classes {
            add.push(find(r.a(r.m(a, sb), r.m(b, sa)), r.m(sa, sb)));
            mul.push(find(r.m(a, b), r.m(sa, sb)));
        }
    }
    RingObj {
        name: format!("Frac({})", r.name),
        labels: classes
            .iter()
            .map(|&(a, sv)| format!("{}/{}", r.labels[a as usize], r.labels[sv as usize]))
            .collect(),
        add,
        mul,
        neg: classes.iter().map(|&(a, sv)| find(r.n(a), sv)).collect(),
        zero: find(r.zero, r.one),
        one: find(r.one, r.one),
    }
}

/// Non-units of a ring; for a local ring this is the maximal ideal.
pub fn non_units(r: &RingObj) -> Vec<u32> {
    (0..r.size() as u32).filter(|&x| !is_unit(r, x)).collect()
}

/// If the ring is local, return its unique maximal ideal.
pub fn maximal_ideal_if_local(r: &RingObj) -> Option<Vec<u32>> {
    let m = non_units(r);
    if is_ideal(r, &m) {
        Some(m)
    } else {
        None
    }
}

/// Localization of `r` at the prime ideal `p` (verified), i.e. at
/// `S = r \ p`. Returns `(r_p, rho)` with `r_p` local and
/// `rho^{-1}(max ideal) = p`.
pub fn classical_localization(r: &RingObj, p: &[u32]) -> Result<(RingObj, Morphism)> {
    is_prime_ideal(r, p)?;
    let pset: BTreeSet<u32> = p.iter().copied().collect();
    let s: Vec<u32> = (0..r.size() as u32).filter(|x| !pset.contains(x)).collect();
    let (loc, rho) = localize_at_set(r, &s);
    let m = maximal_ideal_if_local(&loc).ok_or_else(|| EngineError::AxiomViolation {
        law: String::from("localization must be local"),
        witness: loc.name.clone(),
    })?;
    // rho^{-1}(m) = p
    let mset: BTreeSet<u32> = m.into_iter().collect();
    for a in 0..r.size() as u32 {
        let img = rho.apply(&alloc::vec![a as u64])[0] as u32;
        if mset.contains(&img) != pset.contains(&a) {
            return Err(EngineError::AxiomViolation {
                law: String::from("rho^{-1}(max ideal) = p"),
                witness: r.labels[a as usize].clone(),
            });
        }
    }
    Ok((loc, rho))
}

/// A local factor of a ring: the primitive idempotent, the factor ring
/// `e*r` (with unit `e`), and the projection `r -> e*r`.
#[derive(Debug, Clone)]
pub struct LocalFactor {
    pub idempotent: u32,
    pub ring: RingObj,
    pub projection: Morphism,
}

/// Complete orthogonal set of primitive idempotents and the corresponding
/// local factor rings; the product of the factors is isomorphic to the
/// input (witness = the tuple map `a -> (a e_i)_i`).
pub fn local_factors(r: &RingObj) -> (Vec<LocalFactor>, Morphism) {
    let idems = idempotents(r);
    // primitive: e != 0 with no idempotent strictly below it
    let primitive: Vec<u32> = idems
        .iter()
        .copied()
        .filter(|&e| {
            e != r.zero
                && !idems
                    .iter()
                    .any(|&f| f != r.zero && f != e && r.m(f, e) == f)
        })
        .collect();
    debug_assert!(!primitive.is_empty());
    let factors: Vec<LocalFactor> = primitive
        .iter()
        .map(|&e| {
            let subset: Vec<u32> = {
                let mut s: BTreeSet<u32> = BTreeSet::new();
                for a in 0..r.size() as u32 {
                    s.insert(r.m(e, a));
                }
                s.into_iter().collect()
            };
            let (ring, elems) =
                ring_from_subset(r, &subset, e, format!("{}.e[{}]", r.name, r.labels[e as usize]));
            let table: Vec<u32> = (0..r.size() as u32)
                .map(|a| elems.binary_search(&r.m(e, a)).unwrap() as u32)
                .collect();
            let projection = Morphism::from_table(
                &Object::Ring(r.clone()),
                &Object::Ring(ring.clone()),
                table,
            );
            LocalFactor { idempotent: e, ring, projection }
        })
        .collect();
    let product = product_ring(&factors.iter().map(|f| f.ring.clone()).collect::<Vec<_>>());
    // witness: a -> (a e_1, ..., a e_k)
    let sizes: Vec<usize> = factors.iter().map(|f| f.ring.size()).collect();
    let table: Vec<u32> = (0..r.size() as u32)
        .map(|a| {
            let mut idx = 0usize;
            for (k, f) in factors.iter().enumerate() {
                let c = f.projection.apply(&alloc::vec![a as u64])[0] as usize;
                idx = idx * sizes[k] + c;
            }
            idx as u32
        })
        .collect();
    let witness = Morphism::from_table(&Object::Ring(r.clone()), &Object::Ring(product), table);
    (factors, witness)
}

/// All prime ideals. Brute force over subsets for |r| <= 16; derived from
/// the local factors (all primes in a finite commutative ring are maximal
/// and correspond to local factors) above that.
pub fn prime_ideals(r: &RingObj) -> Vec<Vec<u32>> {
    let mut primes = if r.size() <= 16 {
        prime_ideals_brute(r)
    } else {
        prime_ideals_via_factors(r)
    };
    primes.sort();
    primes.dedup();
    primes
}

pub fn prime_ideals_brute(r: &RingObj) -> Vec<Vec<u32>> {
    let n = r.size();
    assert!(n <= 16, "brute-force prime enumeration capped at 16 elements");
    let others: Vec<u32> = (0..n as u32).filter(|&x| x != r.zero).collect();
    let mut out = Vec::new();
    for mask in 0..(1u32 << others.len()) {
        let mut subset = alloc::vec![r.zero];
        for (i, &x) in others.iter().enumerate() {
            if mask & (1 << i) != 0 {
                subset.push(x);
            }
        }
        subset.sort_unstable();
        if is_prime_ideal(r, &subset).is_ok() {
            out.push(subset);
        }
    }
    out.sort();
    out
}

pub fn prime_ideals_via_factors(r: &RingObj) -> Vec<Vec<u32>> {
    let (factors, _) = local_factors(r);
    factors
        .iter()
        .map(|f| {
            let m: BTreeSet<u32> = non_units(&f.ring).into_iter().collect();
            (0..r.size() as u32)
                .filter(|&a| m.contains(&(f.projection.apply(&alloc::vec![a as u64])[0] as u32)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_ring_examples() {
        let z6 = build_ring(&RingSpec::ZMod(6), 64).unwrap();
        assert_eq!(z6.size(), 6);
        let f4 = build_ring(&RingSpec::GF { p: 2, k: 2, poly: None }, 64).unwrap();
        assert_eq!(f4.size(), 4);
        assert_eq!(units(&f4).len(), 3);
        let prod = build_ring(
            &RingSpec::Product(alloc::vec![RingSpec::ZMod(2), RingSpec::ZMod(3)]),
            64,
        )
        .unwrap();
        assert_eq!(prod.size(), 6);
        prod.validate(false).unwrap();
    }

    #[test]
    fn f4_multiplicative_group_cyclic() {
        let f4 = build_ring(&RingSpec::GF { p: 2, k: 2, poly: None }, 64).unwrap();
        // some unit of order 3 exists
        let has_gen = units(&f4).iter().any(|&u| {
            let u2 = f4.m(u, u);
            let u3 = f4.m(u2, u);
            u != f4.one && u2 != f4.one && u3 == f4.one
        });
        assert!(has_gen);
    }

    #[test]
    fn local_factors_of_z6() {
        let z6 = cyclic_ring(6);
        let (factors, witness) = local_factors(&z6);
        let mut idems: Vec<u32> = factors.iter().map(|f| f.idempotent).collect();
        idems.sort_unstable();
        assert_eq!(idems, alloc::vec![3, 4]);
        let mut sizes: Vec<usize> = factors.iter().map(|f| f.ring.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, alloc::vec![2, 3]);
        assert!(witness.is_valid());
        // witness is bijective
        let mut imgs: Vec<u64> = (0..6).map(|a| witness.apply(&alloc::vec![a])[0]).collect();
        imgs.sort_unstable();
        imgs.dedup();
        assert_eq!(imgs.len(), 6);
    }

    #[test]
    fn field_and_z4_are_local() {
        let f4 = build_ring(&RingSpec::GF { p: 2, k: 2, poly: None }, 64).unwrap();
        let (factors, _) = local_factors(&f4);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].ring.size(), 4);

        let z4 = cyclic_ring(4);
        let (factors, _) = local_factors(&z4);
        assert_eq!(factors.len(), 1);
        assert_eq!(maximal_ideal_if_local(&z4), Some(alloc::vec![0, 2]));
    }

    #[test]
    fn classical_localization_z6() {
        let z6 = cyclic_ring(6);
        // p = (2) = {0, 2, 4}
        let (loc, rho) = classical_localization(&z6, &[0, 2, 4]).unwrap();
        assert_eq!(loc.size(), 2);
        assert!(rho.is_valid());
        // p = {0, 3}
        let (loc3, _) = classical_localization(&z6, &[0, 3]).unwrap();
        assert_eq!(loc3.size(), 3);
    }

    #[test]
    fn localization_of_field_is_identity_like() {
        let f4 = build_ring(&RingSpec::GF { p: 2, k: 2, poly: None }, 64).unwrap();
        let (loc, rho) = classical_localization(&f4, &[0]).unwrap();
        assert_eq!(loc.size(), 4);
        // rho is bijective
        let mut imgs: Vec<u64> = (0..4).map(|a| rho.apply(&alloc::vec![a])[0]).collect();
        imgs.sort_unstable();
        imgs.dedup();
        assert_eq!(imgs.len(), 4);
    }

    #[test]
    fn z4_localized_at_its_prime_is_itself() {
        let z4 = cyclic_ring(4);
        let (loc, _) = classical_localization(&z4, &[0, 2]).unwrap();
        assert_eq!(loc.size(), 4);
    }

    #[test]
    fn fraction_oracle_agrees_with_quotient_localization() {
        for spec in [
            RingSpec::ZMod(6),
            RingSpec::ZMod(4),
            RingSpec::ZMod(12),
            RingSpec::Product(alloc::vec![RingSpec::ZMod(2), RingSpec::ZMod(2)]),
        ] {
            let r = build_ring(&spec, 64).unwrap();
            for f in 0..r.size() as u32 {
                let (fast, _) = localize_at_set(&r, &[f]);
                let slow = localize_by_fractions(&r, &[f]);
                assert_eq!(fast.size(), slow.size(), "size mismatch for {} at {}", r.name, f);
                // both must be "the same ring": check via unital hom existence both ways
                // (cheap here: equal sizes + both images of the same universal object;
                // full isomorphism checks live in the iso module tests)
            }
        }
    }

    #[test]
    fn prime_ideals_of_z6() {
        let z6 = cyclic_ring(6);
        let primes = prime_ideals(&z6);
        assert_eq!(primes, alloc::vec![alloc::vec![0, 2, 4], alloc::vec![0, 3]]);
        // brute force and factor-derived agree
        assert_eq!(prime_ideals_brute(&z6), {
            let mut p = prime_ideals_via_factors(&z6);
            p.sort();
            p
        });
    }

    #[test]
    fn subring_generated_examples() {
        let prod = build_ring(
            &RingSpec::Product(alloc::vec![RingSpec::ZMod(2), RingSpec::ZMod(3)]),
            64,
        )
        .unwrap();
        // (1,1) = the unit generates the whole ring additively
        let (sub, incl) = subring_generated(&prod, &[prod.one]);
        assert_eq!(sub.size(), 6);
        assert!(incl.is_valid());
        // empty gens -> prime subring (here also everything, since 1 generates)
        let (sub0, _) = subring_generated(&prod, &[]);
        assert_eq!(sub0.size(), 6);
        // in F_4 the prime subring is F_2
        let f4 = build_ring(&RingSpec::GF { p: 2, k: 2, poly: None }, 64).unwrap();
        let (sub, _) = subring_generated(&f4, &[]);
        assert_eq!(sub.size(), 2);
        let (sub, _) = subring_generated(&f4, &[2]);
        assert_eq!(sub.size(), 4);
    }

    #[test]
    fn quotient_by_ideal_z6() {
        let z6 = cyclic_ring(6);
        let (q, proj) = quotient_by_ideal(&z6, &[0, 2, 4]);
        assert_eq!(q.size(), 2);
        assert!(proj.is_valid());
        q.validate(false).unwrap();
    }
}
