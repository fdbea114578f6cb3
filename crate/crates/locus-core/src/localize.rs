//! Localization at marked points, by universal property.
//!
//! A candidate is a marked object (C, c, ρ) from the base-pointed
//! subcategory whose marked point maps *exactly* onto the target point.
//! It passes when, for every member (L, l) of the subcategory and every
//! pointed morphism γ from (L, l) to (X, x), exactly one pointed mediator
//! κ satisfies ρ∘κ = γ. Pointed morphisms carry a base map closing the
//! marked-point square (a multiplier for groups, a scalar for spaces, a
//! field homomorphism for rings); mediators are counted by their
//! underlying morphism.

use crate::error::{EngineError, Result};
use crate::homs;
use crate::instance::{Instance, Orientation};
use crate::iso::generating_elems;
use crate::mediator::{MediatorCase, VerificationTranscript};
use crate::morphism::Morphism;
use crate::object::{Elem, Object, SetObj, VectObj};
use crate::points::{pts, Point};
use crate::ring;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkedObject {
    pub obj: Object,
    pub marked: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SubcatKind {
    /// Sets equal to their marked points.
    SingletonSets,
    /// Cyclic groups of prime order, generator marked (r = 1); groups
    /// generated by r marked prime-order elements (r > 1).
    PrimeCyclic,
    /// The zero space and spaces spanned by their marked vectors.
    Spanned,
    /// Local rings Z/p^k and the configured non-prime fields with their
    /// residue arrows (r = 1); products of r of these (r > 1).
    LocalRings,
    /// A user-supplied finite list.
    Explicit(Vec<MarkedObject>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasePointedSubcat {
    pub kind: SubcatKind,
    /// Maximum member size for enumeration and verification.
    pub bound: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocalizationCertificate {
    pub localized: Object,
    pub marked: Vec<Point>,
    /// Covariant: `localized -> X`. Contravariant rings: the ring map
    /// `X -> localized` (the arrow `localized -> X` of the opposite
    /// category).
    pub rho: Morphism,
    pub transcript: VerificationTranscript,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FailedAttempt {
    pub candidate: Object,
    pub rho: Morphism,
    pub transcript: VerificationTranscript,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum LocalizeOutcome {
    Found(LocalizationCertificate),
    /// Several pairwise non-isomorphic candidates passed at the bound.
    Ambiguous(Vec<LocalizationCertificate>),
    Absent { attempts: Vec<FailedAttempt> },
}

impl LocalizeOutcome {
    pub fn found(&self) -> Option<&LocalizationCertificate> {
        match self {
            LocalizeOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Cap on multi-point member enumeration work.
const MULTI_ENUM_CAP: u64 = 200_000;

/// All members (C, c_1..c_r) of the subcategory, deterministically.
pub fn enumerate_members(
    instance: &Instance,
    subcat: &BasePointedSubcat,
    r: usize,
) -> Result<Vec<MarkedObject>> {
    assert!(r >= 1, "marked families have r >= 1");
    let bound = subcat.bound;
    match &subcat.kind {
        SubcatKind::Explicit(list) => Ok(list
            .iter()
            .filter(|m| m.marked.len() == r && m.obj.size() <= bound)
            .cloned()
            .collect()),
        SubcatKind::SingletonSets => {
            if r as u64 > bound {
                return Ok(Vec::new());
            }
            // sets equal to their marked points: r elements, all marked,
            // in every order
            let obj = Object::Set(SetObj::canonical(r));
            let elems = obj.elements();
            let mut out = Vec::new();
            permutations(r, &mut |perm| {
                out.push(MarkedObject {
                    obj: obj.clone(),
                    marked: perm
                        .iter()
                        .map(|&i| Point::Element(elems[i].clone()))
                        .collect(),
                });
            });
            Ok(out)
        }
        SubcatKind::PrimeCyclic => {
            if r == 1 {
                let mut out = Vec::new();
                for p in primes_up_to(bound) {
                    out.push(MarkedObject {
                        obj: Object::Ab(crate::object::AbObj::cyclic(p)),
                        marked: alloc::vec![Point::Element(alloc::vec![1])],
                    });
                }
                Ok(out)
            } else {
                // groups generated by r marked prime-order elements
                let mut out = Vec::new();
                for obj in Instance::Ab.objects_within(bound)? {
                    let g = obj.as_ab().clone();
                    if g.orders.is_empty() {
                        continue;
                    }
                    let elems = obj.elements();
                    let prime_order: Vec<&Elem> = elems
                        .iter()
                        .filter(|e| is_prime(g.elem_order(e)))
                        .collect();
                    let total = (prime_order.len() as u64).checked_pow(r as u32);
                    if total.map_or(true, |t| t > MULTI_ENUM_CAP) {
                        return Err(EngineError::SizeBoundExceeded {
                            needed: total.unwrap_or(u64::MAX),
                            bound: MULTI_ENUM_CAP,
                        });
                    }
                    tuples(prime_order.len(), r, &mut |tuple| {
                        if distinct(tuple) {
                            let gens: Vec<Elem> =
                                tuple.iter().map(|&i| prime_order[i].clone()).collect();
                            let sub =
                                crate::abelian::subgroup_from_generators(&g, &gens);
                            if sub.obj.order() == g.order() {
                                out.push(MarkedObject {
                                    obj: obj.clone(),
                                    marked: gens.into_iter().map(Point::Element).collect(),
                                });
                            }
                        }
                    });
                }
                Ok(out)
            }
        }
        SubcatKind::Spanned => {
            let field = match instance {
                Instance::Vect(f) => f.clone(),
                _ => {
                    return Err(EngineError::Unsupported {
                        what: String::from("spanned subcategory outside FinVect"),
                    })
                }
            };
            let mut out = Vec::new();
            for d in 0..=r as u32 {
                let obj = Object::Vect(VectObj::new(field.clone(), d));
                if obj.size() > bound {
                    break;
                }
                let elems = obj.elements();
                let total = (elems.len() as u64).checked_pow(r as u32);
                if total.map_or(true, |t| t > MULTI_ENUM_CAP) {
                    return Err(EngineError::SizeBoundExceeded {
                        needed: total.unwrap_or(u64::MAX),
                        bound: MULTI_ENUM_CAP,
                    });
                }
                tuples(elems.len(), r, &mut |tuple| {
                    if r > 1 && !distinct(tuple) {
                        return;
                    }
                    let vecs: Vec<Elem> = tuple.iter().map(|&i| elems[i].clone()).collect();
                    if d == 0 && r == 1 {
                        // the zero space with its zero point
                        out.push(MarkedObject {
                            obj: obj.clone(),
                            marked: vecs.into_iter().map(Point::Element).collect(),
                        });
                        return;
                    }
                    let span = crate::linalg::independent_columns(&field, &vecs);
                    if span.len() == d as usize
                        && (r > 1 || vecs.iter().any(|v| v.iter().any(|&c| c != 0)))
                    {
                        out.push(MarkedObject {
                            obj: obj.clone(),
                            marked: vecs.into_iter().map(Point::Element).collect(),
                        });
                    }
                });
            }
            Ok(out)
        }
        SubcatKind::LocalRings => {
            let atoms = local_atoms(instance, bound)?;
            if r == 1 {
                Ok(atoms)
            } else {
                // semilocal: products of r local atoms, marked with the
                // residue arrows through the projections
                let mut out = Vec::new();
                tuples(atoms.len(), r, &mut |tuple| {
                    let parts: Vec<&MarkedObject> =
                        tuple.iter().map(|&i| &atoms[i]).collect();
                    let size: u64 = parts.iter().map(|m| m.obj.size()).product();
                    if size > bound {
                        return;
                    }
                    let rings: Vec<_> =
                        parts.iter().map(|m| m.obj.as_ring().clone()).collect();
                    let prod = ring::product_ring(&rings);
                    let marked: Vec<Point> = parts
                        .iter()
                        .enumerate()
                        .map(|(k, m)| {
                            let proj = ring::product_projection(&rings, &prod, k);
                            let Point::ResidueArrow { base, arrow } = &m.marked[0] else {
                                unreachable!()
                            };
                            Point::ResidueArrow {
                                base: base.clone(),
                                arrow: Morphism::compose(arrow, &proj),
                            }
                        })
                        .collect();
                    out.push(MarkedObject {
                        obj: Object::Ring(prod),
                        marked,
                    });
                });
                Ok(out)
            }
        }
    }
}

/// Local atoms: Z/p^k (residue arrow to F_p when configured) and the
/// configured fields of degree > 1 (identity arrow).
fn local_atoms(instance: &Instance, bound: u64) -> Result<Vec<MarkedObject>> {
    let fields = instance.residue_fields();
    // the underlying local rings: Z/p^k for every residue characteristic,
    // plus the configured non-prime fields themselves
    let mut chars: Vec<u64> = fields.iter().map(|f| f.p).collect();
    chars.sort_unstable();
    chars.dedup();
    let mut rings: Vec<Object> = Vec::new();
    for q in crate::instance::prime_powers(bound) {
        let (p, _) = prime_power_split(q);
        if chars.contains(&p) {
            rings.push(Object::Ring(ring::cyclic_ring(q)));
        }
    }
    for f in fields {
        if f.k > 1 && f.order() <= bound {
            rings.push(Object::Ring(ring::field_ring(f)));
        }
    }
    // one marked variant per arrow onto a configured field; a point's
    // arrow need not be surjective, so non-canonical residue arrows
    // (e.g. Z/2 into F_4) are marked candidates too
    let mut out = Vec::new();
    for obj in rings {
        for base in fields {
            let target = Object::Ring(ring::field_ring(base));
            for arrow in homs::hom_set(&obj, &target)? {
                out.push(MarkedObject {
                    obj: obj.clone(),
                    marked: alloc::vec![Point::ResidueArrow {
                        base: base.clone(),
                        arrow,
                    }],
                });
            }
        }
    }
    out.sort_by_key(|m| (m.obj.size(), m.obj.canonical_name(), m.marked[0].id_string()));
    Ok(out)
}

/// The orbit of a marked element under base endomorphisms: the element
/// itself (sets), its multiples (groups), its scalar multiples (spaces).
fn base_orbit(obj: &Object, e: &Elem) -> Vec<Elem> {
    let mut orbit: Vec<Elem> = match obj {
        Object::Set(_) => alloc::vec![e.clone()],
        Object::Ab(g) => (0..g.elem_order(e).max(1)).map(|n| g.scale(n, e)).collect(),
        Object::Vect(v) => (0..v.q()).map(|c| v.scale(c, e)).collect(),
        Object::Ring(_) => unreachable!("element points on rings"),
    };
    orbit.sort();
    orbit.dedup();
    orbit
}

/// Does the square close: is `composite` equal to `beta . arrow` for some
/// field homomorphism `beta`?
fn residue_square_closes(
    composite: &Morphism,
    base_from: &crate::fields::FieldTable,
    base_to: &crate::fields::FieldTable,
    arrow: &Morphism,
) -> Result<bool> {
    let from = Object::Ring(ring::field_ring(base_from));
    let to = Object::Ring(ring::field_ring(base_to));
    for beta in homs::hom_set(&from, &to)? {
        if &Morphism::compose(&beta, arrow) == composite {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Pointed morphisms member -> (X, xs): underlying morphisms whose
/// marked images close the point squares.
fn pointed_maps(
    instance: &Instance,
    member: &MarkedObject,
    x_obj: &Object,
    xs: &[Point],
) -> Result<Vec<Morphism>> {
    match instance.orientation() {
        Orientation::Covariant => {
            let orbits: Vec<Vec<Elem>> = xs
                .iter()
                .map(|p| {
                    let Point::Element(e) = p else {
                        unreachable!()
                    };
                    base_orbit(x_obj, e)
                })
                .collect();
            Ok(homs::hom_set(&member.obj, x_obj)?
                .into_iter()
                .filter(|g| {
                    member.marked.iter().zip(&orbits).all(|(m, orbit)| {
                        let Point::Element(me) = m else { unreachable!() };
                        orbit.contains(&g.apply(me))
                    })
                })
                .collect())
        }
        Orientation::Contravariant => {
            // underlying ring maps X -> L; marked square per index
            let mut out = Vec::new();
            for g in homs::hom_set(x_obj, &member.obj)? {
                let mut ok = true;
                for (l, x) in member.marked.iter().zip(xs) {
                    let (Point::ResidueArrow { base: lb, arrow: la },
                         Point::ResidueArrow { base: xb, arrow: xa }) = (l, x)
                    else {
                        unreachable!()
                    };
                    let composite = Morphism::compose(la, &g);
                    if !residue_square_closes(&composite, xb, lb, xa)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    out.push(g);
                }
            }
            Ok(out)
        }
    }
}

/// Candidate attachments: morphisms ρ with strict marked-point equality
/// (the certificate's `ρ(x_R) = x`).
fn candidate_rhos(
    instance: &Instance,
    member: &MarkedObject,
    x_obj: &Object,
    xs: &[Point],
) -> Result<Vec<Morphism>> {
    match instance.orientation() {
        Orientation::Covariant => {
            let constraints: Vec<(Elem, Elem)> = member
                .marked
                .iter()
                .zip(xs)
                .map(|(m, x)| {
                    let (Point::Element(me), Point::Element(xe)) = (m, x) else {
                        unreachable!()
                    };
                    (me.clone(), xe.clone())
                })
                .collect();
            homs::constrained_homs(&member.obj, x_obj, &constraints, usize::MAX)
        }
        Orientation::Contravariant => {
            // bases must match exactly and the composites must agree
            for (c, x) in member.marked.iter().zip(xs) {
                let (Point::ResidueArrow { base: cb, .. }, Point::ResidueArrow { base: xb, .. }) =
                    (c, x)
                else {
                    unreachable!()
                };
                if cb != xb {
                    return Ok(Vec::new());
                }
            }
            Ok(homs::hom_set(x_obj, &member.obj)?
                .into_iter()
                .filter(|rho| {
                    member.marked.iter().zip(xs).all(|(c, x)| {
                        let (Point::ResidueArrow { arrow: ca, .. },
                             Point::ResidueArrow { arrow: xa, .. }) = (c, x)
                        else {
                            unreachable!()
                        };
                        &Morphism::compose(ca, rho) == xa
                    })
                })
                .collect())
        }
    }
}

/// Mediators for one test case: pointed morphisms κ from the test member
/// to the candidate whose composite with ρ is γ.
fn mediators(
    instance: &Instance,
    candidate: &MarkedObject,
    rho: &Morphism,
    member: &MarkedObject,
    gamma: &Morphism,
) -> Result<Vec<Morphism>> {
    match instance.orientation() {
        Orientation::Covariant => {
            let orbits: Vec<Vec<Elem>> = candidate
                .marked
                .iter()
                .map(|c| {
                    let Point::Element(e) = c else { unreachable!() };
                    base_orbit(&candidate.obj, e)
                })
                .collect();
            let mut out = Vec::new();
            let mut idx = alloc::vec![0usize; orbits.len()];
            loop {
                let constraints: Vec<(Elem, Elem)> = member
                    .marked
                    .iter()
                    .zip(idx.iter().zip(&orbits))
                    .map(|(l, (&i, orbit))| {
                        let Point::Element(le) = l else { unreachable!() };
                        (le.clone(), orbit[i].clone())
                    })
                    .collect();
                for k in
                    homs::constrained_homs(&member.obj, &candidate.obj, &constraints, usize::MAX)?
                {
                    if &Morphism::compose(rho, &k) == gamma {
                        out.push(k);
                    }
                }
                let mut pos = idx.len();
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < orbits[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                }
                if idx.iter().all(|&i| i == 0) {
                    break;
                }
            }
            // distinct orbit targets yield distinct κ, so no dedup needed
            out.sort();
            out.dedup();
            Ok(out)
        }
        Orientation::Contravariant => {
            // κ: candidate -> member (as ring maps) with κ∘ρ = γ
            let constraints: Vec<(Elem, Elem)> = generating_elems(&rho.dom)
                .into_iter()
                .map(|a| (rho.apply(&a), gamma.apply(&a)))
                .collect();
            let mut out = Vec::new();
            for k in homs::constrained_homs(
                &candidate.obj,
                &member.obj,
                &constraints,
                usize::MAX,
            )? {
                let mut ok = true;
                for (l, c) in member.marked.iter().zip(&candidate.marked) {
                    let (Point::ResidueArrow { base: lb, arrow: la },
                         Point::ResidueArrow { base: cb, arrow: ca }) = (l, c)
                    else {
                        unreachable!()
                    };
                    let composite = Morphism::compose(la, &k);
                    if !residue_square_closes(&composite, cb, lb, ca)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    out.push(k);
                }
            }
            Ok(out)
        }
    }
}

/// All test cases for `(X, xs)`: every pointed morphism out of every
/// member, in enumeration order. Shared across candidate verifications.
fn test_case_pool(
    instance: &Instance,
    members: &[MarkedObject],
    x_obj: &Object,
    xs: &[Point],
) -> Result<Vec<(usize, Morphism)>> {
    let mut pool = Vec::new();
    for (mi, member) in members.iter().enumerate() {
        for gamma in pointed_maps(instance, member, x_obj, xs)? {
            pool.push((mi, gamma));
        }
    }
    Ok(pool)
}

/// Verify one candidate against every test case. With `fail_fast`, stop
/// at the first failing case; the transcript is then marked truncated.
fn verify_candidate(
    instance: &Instance,
    candidate: &MarkedObject,
    rho: &Morphism,
    members: &[MarkedObject],
    pool: &[(usize, Morphism)],
    bound: u64,
    fail_fast: bool,
) -> Result<VerificationTranscript> {
    let mut cases = Vec::new();
    let mut truncated = false;
    for (mi, gamma) in pool {
        let member = &members[*mi];
        let found = mediators(instance, candidate, rho, member, gamma)?;
        let count = found.len() as u64;
        let mut witnesses = found;
        witnesses.truncate(2);
        cases.push(MediatorCase {
            test_object: member.obj.canonical_name(),
            test_maps: alloc::vec![gamma.clone()],
            mediators: witnesses,
            mediator_count: count,
        });
        if fail_fast && count != 1 {
            truncated = true;
            break;
        }
    }
    Ok(VerificationTranscript::passing(bound, cases, truncated))
}

/// Are two passing candidates equivalent: an isomorphism matching marked
/// points and commuting with the attachments?
fn pointed_equivalent(
    instance: &Instance,
    a: &LocalizationCertificate,
    b: &LocalizationCertificate,
) -> Result<bool> {
    if a.localized.size() != b.localized.size() {
        return Ok(false);
    }
    match instance.orientation() {
        Orientation::Covariant => {
            for phi in homs::hom_set(&a.localized, &b.localized)? {
                if !(crate::factor::is_mono(&phi) && crate::factor::is_epi(&phi)) {
                    continue;
                }
                if Morphism::compose(&b.rho, &phi) != a.rho {
                    continue;
                }
                let marked_ok = a.marked.iter().zip(&b.marked).all(|(ca, cb)| {
                    let (Point::Element(ea), Point::Element(eb)) = (ca, cb) else {
                        unreachable!()
                    };
                    &phi.apply(ea) == eb
                });
                if marked_ok {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Orientation::Contravariant => {
            for phi in homs::hom_set(&a.localized, &b.localized)? {
                if !(crate::factor::is_mono(&phi) && crate::factor::is_epi(&phi)) {
                    continue;
                }
                if Morphism::compose(&phi, &a.rho) != b.rho {
                    continue;
                }
                let mut marked_ok = true;
                for (ca, cb) in a.marked.iter().zip(&b.marked) {
                    let (Point::ResidueArrow { base: ba, arrow: aa },
                         Point::ResidueArrow { base: bb, arrow: ab }) = (ca, cb)
                    else {
                        unreachable!()
                    };
                    if ba != bb || Morphism::compose(ab, &phi) != *aa {
                        marked_ok = false;
                        break;
                    }
                }
                if marked_ok {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Are two certificates the same localization up to a pointed
/// isomorphism commuting with the attachments?
pub fn certificates_equivalent(
    instance: &Instance,
    a: &LocalizationCertificate,
    b: &LocalizationCertificate,
) -> Result<bool> {
    pointed_equivalent(instance, a, b)
}

/// Exhaustive localization of `(X, xs)` in the subcategory.
pub fn localize_multi(
    instance: &Instance,
    x_obj: &Object,
    xs: &[Point],
    subcat: &BasePointedSubcat,
) -> Result<LocalizeOutcome> {
    localize_multi_with(instance, x_obj, xs, subcat, false)
}

/// As `localize_multi`; with `fail_fast` the transcripts of failing
/// candidates stop at their first counterexample.
pub fn localize_multi_with(
    instance: &Instance,
    x_obj: &Object,
    xs: &[Point],
    subcat: &BasePointedSubcat,
    fail_fast: bool,
) -> Result<LocalizeOutcome> {
    let r = xs.len();
    assert!(r >= 1);
    for i in 0..r {
        for j in i + 1..r {
            assert!(xs[i] != xs[j], "marked points must be pairwise distinct");
        }
    }
    let have = pts(instance, x_obj)?.len() as u64;
    if have < r as u64 {
        return Err(EngineError::NotEnoughPoints {
            have,
            need: r as u64,
        });
    }
    let members = enumerate_members(instance, subcat, r)?;
    let pool = test_case_pool(instance, &members, x_obj, xs)?;
    let mut passing: Vec<LocalizationCertificate> = Vec::new();
    let mut attempts: Vec<FailedAttempt> = Vec::new();
    for member in &members {
        for rho in candidate_rhos(instance, member, x_obj, xs)? {
            let transcript = verify_candidate(
                instance,
                member,
                &rho,
                &members,
                &pool,
                subcat.bound,
                fail_fast,
            )?;
            let cert = LocalizationCertificate {
                localized: member.obj.clone(),
                marked: member.marked.clone(),
                rho,
                transcript,
            };
            if cert.transcript.verdict {
                passing.push(cert);
            } else {
                attempts.push(FailedAttempt {
                    candidate: cert.localized,
                    rho: cert.rho,
                    transcript: cert.transcript,
                });
            }
        }
    }
    // group passing candidates into equivalence classes
    let mut reps: Vec<LocalizationCertificate> = Vec::new();
    for cert in passing {
        let mut matched = false;
        for rep in &reps {
            if pointed_equivalent(instance, rep, &cert)? {
                matched = true;
                break;
            }
        }
        if !matched {
            reps.push(cert);
        }
    }
    Ok(match reps.len() {
        0 => LocalizeOutcome::Absent { attempts },
        1 => LocalizeOutcome::Found(reps.remove(0)),
        _ => LocalizeOutcome::Ambiguous(reps),
    })
}

/// Single-point localization.
pub fn localize(
    instance: &Instance,
    x_obj: &Object,
    x: &Point,
    subcat: &BasePointedSubcat,
) -> Result<LocalizeOutcome> {
    localize_multi(instance, x_obj, core::slice::from_ref(x), subcat)
}

/// Closed-form localization, self-verified against the subcategory.
pub fn closed_form_localize(
    instance: &Instance,
    x_obj: &Object,
    x: &Point,
    subcat: &BasePointedSubcat,
) -> Result<LocalizationCertificate> {
    let (candidate, rho) = match (&subcat.kind, x) {
        (SubcatKind::SingletonSets, Point::Element(e)) => {
            let obj = Object::Set(SetObj::canonical(1));
            let rho = Morphism::from_table(
                &obj,
                x_obj,
                alloc::vec![x_obj.elem_index(e) as u32],
            );
            (
                MarkedObject {
                    obj,
                    marked: alloc::vec![Point::Element(alloc::vec![0])],
                },
                rho,
            )
        }
        (SubcatKind::PrimeCyclic, Point::Element(e)) => {
            let g = x_obj.as_ab();
            let ord = g.elem_order(e);
            if !is_prime(ord) {
                return Err(EngineError::NoLocalization {
                    point: x.id_string(),
                    reason: alloc::format!("element order {} is not prime", ord),
                });
            }
            let c = crate::object::AbObj::cyclic(ord);
            let rho = Morphism::ab_from_gen_images(&c, g, &[e.clone()]);
            (
                MarkedObject {
                    obj: Object::Ab(c),
                    marked: alloc::vec![Point::Element(alloc::vec![1])],
                },
                rho,
            )
        }
        (SubcatKind::Spanned, Point::Element(e)) => {
            let v = x_obj.as_vect();
            if e.iter().all(|&c| c == 0) {
                let zero = VectObj::new(v.field.clone(), 0);
                let rho = Morphism::vect_from_cols(&zero, v, &[]);
                (
                    MarkedObject {
                        obj: Object::Vect(zero),
                        marked: alloc::vec![Point::Element(Vec::new())],
                    },
                    rho,
                )
            } else {
                let line = VectObj::new(v.field.clone(), 1);
                let rho = Morphism::vect_from_cols(&line, v, &[e.clone()]);
                (
                    MarkedObject {
                        obj: Object::Vect(line),
                        marked: alloc::vec![Point::Element(alloc::vec![1])],
                    },
                    rho,
                )
            }
        }
        (SubcatKind::LocalRings, Point::ResidueArrow { base, arrow }) => {
            let a = x_obj.as_ring();
            let kernel: Vec<u32> = (0..a.size() as u32)
                .filter(|&i| {
                    arrow.apply(&alloc::vec![i as u64])[0]
                        == ring::field_ring(base).zero as u64
                })
                .collect();
            let (loc, rho) = ring::classical_localization(a, &kernel)?;
            let loc_obj = Object::Ring(loc);
            let target = Object::Ring(ring::field_ring(base));
            let marked_arrow = homs::hom_set(&loc_obj, &target)?
                .into_iter()
                .find(|c| &Morphism::compose(c, &rho) == arrow)
                .ok_or_else(|| EngineError::NoLocalization {
                    point: x.id_string(),
                    reason: String::from("no residue arrow over the localization"),
                })?;
            (
                MarkedObject {
                    obj: loc_obj,
                    marked: alloc::vec![Point::ResidueArrow {
                        base: base.clone(),
                        arrow: marked_arrow,
                    }],
                },
                rho,
            )
        }
        _ => {
            return Err(EngineError::Unsupported {
                what: String::from("closed form for this subcategory/point combination"),
            })
        }
    };
    let members = enumerate_members(instance, subcat, 1)?;
    let xs = core::slice::from_ref(x);
    let pool = test_case_pool(instance, &members, x_obj, xs)?;
    let transcript = verify_candidate(
        instance,
        &candidate,
        &rho,
        &members,
        &pool,
        subcat.bound,
        false,
    )?;
    if !transcript.verdict {
        return Err(EngineError::NoLocalization {
            point: x.id_string(),
            reason: String::from("closed-form candidate failed its universal property"),
        });
    }
    Ok(LocalizationCertificate {
        localized: candidate.obj,
        marked: candidate.marked,
        rho,
        transcript,
    })
}

/// Independently replay a certificate: check the attachment's marked
/// condition, then regenerate the transcript's cases in enumeration
/// order and recount each case's mediators by filtering the full hom
/// set (no constrained search), comparing against the recorded counts.
/// Truncated transcripts are replayed up to their recorded cases.
pub fn replay_certificate(
    instance: &Instance,
    x_obj: &Object,
    xs: &[Point],
    subcat: &BasePointedSubcat,
    cert: &LocalizationCertificate,
) -> Result<bool> {
    if !cert.rho.is_valid() {
        return Ok(false);
    }
    let candidate = MarkedObject {
        obj: cert.localized.clone(),
        marked: cert.marked.clone(),
    };
    // strict marked condition of the attachment
    match instance.orientation() {
        Orientation::Covariant => {
            if cert.rho.dom != cert.localized || &cert.rho.cod != x_obj {
                return Ok(false);
            }
            for (c, x) in cert.marked.iter().zip(xs) {
                let (Point::Element(ce), Point::Element(xe)) = (c, x) else {
                    return Ok(false);
                };
                if &cert.rho.apply(ce) != xe {
                    return Ok(false);
                }
            }
        }
        Orientation::Contravariant => {
            if &cert.rho.dom != x_obj || cert.rho.cod != cert.localized {
                return Ok(false);
            }
            for (c, x) in cert.marked.iter().zip(xs) {
                let (Point::ResidueArrow { base: cb, arrow: ca },
                     Point::ResidueArrow { base: xb, arrow: xa }) = (c, x)
                else {
                    return Ok(false);
                };
                if cb != xb || &Morphism::compose(ca, &cert.rho) != xa {
                    return Ok(false);
                }
            }
        }
    }
    let members = enumerate_members(instance, subcat, xs.len())?;
    let mut case_iter = cert.transcript.cases.iter();
    'outer: for member in &members {
        for gamma in pointed_maps(instance, member, x_obj, xs)? {
            let Some(case) = case_iter.next() else {
                // only acceptable when the transcript was cut short
                if cert.transcript.truncated {
                    break 'outer;
                }
                return Ok(false);
            };
            if case.test_object != member.obj.canonical_name()
                || case.test_maps != alloc::vec![gamma.clone()]
            {
                return Ok(false);
            }
            let count = recount_mediators(instance, &candidate, &cert.rho, member, &gamma)?;
            if count != case.mediator_count {
                return Ok(false);
            }
            if cert.transcript.truncated && case_iter.len() == 0 {
                break 'outer;
            }
        }
    }
    if case_iter.next().is_some() {
        return Ok(false);
    }
    Ok(cert.transcript.verdict
        == cert
            .transcript
            .cases
            .iter()
            .all(|c| c.mediator_count == 1))
}

/// Brute-force mediator recount: filter the full hom set by composition
/// and the marked-square conditions.
fn recount_mediators(
    instance: &Instance,
    candidate: &MarkedObject,
    rho: &Morphism,
    member: &MarkedObject,
    gamma: &Morphism,
) -> Result<u64> {
    match instance.orientation() {
        Orientation::Covariant => {
            let orbits: Vec<Vec<Elem>> = candidate
                .marked
                .iter()
                .map(|c| {
                    let Point::Element(e) = c else { unreachable!() };
                    base_orbit(&candidate.obj, e)
                })
                .collect();
            let mut count = 0u64;
            for k in homs::hom_set(&member.obj, &candidate.obj)? {
                if &Morphism::compose(rho, &k) != gamma {
                    continue;
                }
                let ok = member.marked.iter().zip(&orbits).all(|(l, orbit)| {
                    let Point::Element(le) = l else { unreachable!() };
                    orbit.contains(&k.apply(le))
                });
                if ok {
                    count += 1;
                }
            }
            Ok(count)
        }
        Orientation::Contravariant => {
            let mut count = 0u64;
            for k in homs::hom_set(&candidate.obj, &member.obj)? {
                if Morphism::compose(&k, rho) != *gamma {
                    continue;
                }
                let mut ok = true;
                for (l, c) in member.marked.iter().zip(&candidate.marked) {
                    let (Point::ResidueArrow { base: lb, arrow: la },
                         Point::ResidueArrow { base: cb, arrow: ca }) = (l, c)
                    else {
                        unreachable!()
                    };
                    let composite = Morphism::compose(la, &k);
                    if !residue_square_closes(&composite, cb, lb, ca)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    count += 1;
                }
            }
            Ok(count)
        }
    }
}

/// Objects with fewer than `r` distinct base-points.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExclusionSet {
    pub r: u64,
    pub excluded: Vec<String>,
}

pub fn exclusion_set(instance: &Instance, objects: &[Object], r: u64) -> Result<ExclusionSet> {
    let mut excluded = Vec::new();
    for obj in objects {
        if (pts(instance, obj)?.len() as u64) < r {
            excluded.push(obj.canonical_name());
        }
    }
    Ok(ExclusionSet { r, excluded })
}

fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| is_prime(p)).collect()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_power_split(q: u64) -> (u64, u32) {
    for p in 2..=q {
        if is_prime(p) && q % p == 0 {
            let mut k = 0;
            let mut m = q;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            return (p, k);
        }
    }
    unreachable!("prime powers only")
}

fn distinct(tuple: &[usize]) -> bool {
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            if tuple[i] == tuple[j] {
                return false;
            }
        }
    }
    true
}

fn permutations(n: usize, f: &mut impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..n).collect();
    permute_rec(&mut idx, 0, f);
}

fn permute_rec(idx: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == idx.len() {
        f(idx);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute_rec(idx, k + 1, f);
        idx.swap(k, i);
    }
}

/// All length-`r` tuples over `0..n`, lexicographic.
fn tuples(n: usize, r: usize, f: &mut impl FnMut(&[usize])) {
    if n == 0 {
        return;
    }
    let mut idx = alloc::vec![0usize; r];
    loop {
        f(&idx);
        let mut pos = r;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
        }
    }
}
