//! Finite coproducts and products per instance, diagrams over inclusion
//! posets, and directed colimits (disjoint union / direct sum modulo the
//! diagram relations).

use crate::abelian::{direct_sum, quotient_by_relations};
use crate::error::{EngineError, Result};
use crate::linalg;
use crate::morphism::{basis_elem, gen_elem, Morphism};
use crate::object::{Elem, Object, SetObj, VectObj};
use crate::ring;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// An apex with one leg per part: injections for cofans, projections for
/// fans.
pub struct Fan {
    pub apex: Object,
    pub legs: Vec<Morphism>,
}

pub fn coproduct(parts: &[Object]) -> Result<Fan> {
    assert!(!parts.is_empty(), "coproduct needs at least one part");
    match &parts[0] {
        Object::Set(_) => {
            let sizes: Vec<usize> = parts.iter().map(|p| p.size() as usize).collect();
            let total: usize = sizes.iter().sum();
            let apex = Object::Set(SetObj::canonical(total));
            let mut legs = Vec::new();
            let mut offset = 0u32;
            for (p, &s) in parts.iter().zip(&sizes) {
                legs.push(Morphism::from_table(
                    p,
                    &apex,
                    (0..s as u32).map(|i| offset + i).collect(),
                ));
                offset += s as u32;
            }
            Ok(Fan { apex, legs })
        }
        Object::Ab(_) => {
            let groups: Vec<_> = parts.iter().map(|p| p.as_ab().clone()).collect();
            let d = direct_sum(&groups);
            Ok(Fan {
                apex: Object::Ab(d.obj),
                legs: d.injections,
            })
        }
        Object::Vect(v0) => {
            let field = v0.field.clone();
            let dims: Vec<usize> = parts
                .iter()
                .map(|p| {
                    assert_eq!(p.as_vect().field, field, "mixed fields in coproduct");
                    p.as_vect().dim as usize
                })
                .collect();
            let total: usize = dims.iter().sum();
            let apex_v = VectObj::new(field, total as u32);
            let mut legs = Vec::new();
            let mut offset = 0usize;
            for (p, &dim) in parts.iter().zip(&dims) {
                let cols: Vec<Elem> = (0..dim)
                    .map(|j| basis_elem(&apex_v, offset + j))
                    .collect();
                legs.push(Morphism::vect_from_cols(p.as_vect(), &apex_v, &cols));
                offset += dim;
            }
            Ok(Fan {
                apex: Object::Vect(apex_v),
                legs,
            })
        }
        Object::Ring(_) => Err(EngineError::NoCoproduct {
            instance: alloc::string::String::from("commutative rings (covariant)"),
        }),
    }
}

pub fn product(parts: &[Object]) -> Result<Fan> {
    assert!(!parts.is_empty(), "product needs at least one part");
    match &parts[0] {
        Object::Set(_) => {
            let sizes: Vec<u64> = parts.iter().map(|p| p.size()).collect();
            let total: u64 = sizes.iter().product();
            if total > crate::object::ELEM_ENUM_CAP {
                return Err(EngineError::SizeBoundExceeded {
                    needed: total,
                    bound: crate::object::ELEM_ENUM_CAP,
                });
            }
            let apex = Object::Set(SetObj::canonical(total as usize));
            // first factor most significant
            let mut legs = Vec::new();
            for (k, p) in parts.iter().enumerate() {
                let table: Vec<u32> = (0..total)
                    .map(|idx| {
                        let mut rem = idx;
                        for &s in sizes.iter().skip(k + 1).rev() {
                            rem /= s;
                        }
                        (rem % sizes[k]) as u32
                    })
                    .collect();
                legs.push(Morphism::from_table(&apex, p, table));
            }
            Ok(Fan { apex, legs })
        }
        Object::Ab(_) => {
            let groups: Vec<_> = parts.iter().map(|p| p.as_ab().clone()).collect();
            let d = direct_sum(&groups);
            Ok(Fan {
                apex: Object::Ab(d.obj),
                legs: d.projections,
            })
        }
        Object::Vect(v0) => {
            let field = v0.field.clone();
            let dims: Vec<usize> = parts
                .iter()
                .map(|p| {
                    assert_eq!(p.as_vect().field, field, "mixed fields in product");
                    p.as_vect().dim as usize
                })
                .collect();
            let total: usize = dims.iter().sum();
            let apex_v = VectObj::new(field, total as u32);
            let mut legs = Vec::new();
            let mut offset = 0usize;
            for (p, &dim) in parts.iter().zip(&dims) {
                let part_v = p.as_vect();
                // projection: slice the coordinate block
                let cols: Vec<Elem> = (0..total)
                    .map(|j| {
                        let mut e = part_v.zero();
                        if j >= offset && j < offset + dim {
                            e[j - offset] = 1;
                        }
                        e
                    })
                    .collect();
                legs.push(Morphism::vect_from_cols(&apex_v, part_v, &cols));
                offset += dim;
            }
            Ok(Fan {
                apex: Object::Vect(apex_v),
                legs,
            })
        }
        Object::Ring(_) => {
            let rings: Vec<_> = parts.iter().map(|p| p.as_ring().clone()).collect();
            let prod = ring::product_ring(&rings);
            let legs = (0..rings.len())
                .map(|k| ring::product_projection(&rings, &prod, k))
                .collect();
            Ok(Fan {
                apex: Object::Ring(prod),
                legs,
            })
        }
    }
}

/// A finite diagram indexed by a poset, with one connecting morphism per
/// strictly comparable pair that the caller supplies. Functoriality over
/// supplied chains is checked by `validate`.
pub struct Diagram {
    pub nodes: Vec<Object>,
    pub arrows: BTreeMap<(usize, usize), Morphism>,
}

impl Diagram {
    pub fn validate(&self) -> Result<()> {
        for (&(i, j), f) in &self.arrows {
            if i == j || f.dom != self.nodes[i] || f.cod != self.nodes[j] {
                return Err(EngineError::AxiomViolation {
                    law: alloc::string::String::from("diagram arrow endpoints"),
                    witness: alloc::format!("arrow {}->{}", i, j),
                });
            }
            if self.arrows.contains_key(&(j, i)) {
                return Err(EngineError::AxiomViolation {
                    law: alloc::string::String::from("poset antisymmetry"),
                    witness: alloc::format!("both {}->{} and {}->{}", i, j, j, i),
                });
            }
        }
        for (&(i, j), f) in &self.arrows {
            for (&(j2, k), g) in &self.arrows {
                if j2 != j {
                    continue;
                }
                let Some(h) = self.arrows.get(&(i, k)) else {
                    return Err(EngineError::AxiomViolation {
                        law: alloc::string::String::from("poset transitivity"),
                        witness: alloc::format!("{}->{}->{} lacks {}->{}", i, j, k, i, k),
                    });
                };
                if &Morphism::compose(g, f) != h {
                    return Err(EngineError::AxiomViolation {
                        law: alloc::string::String::from("functoriality"),
                        witness: alloc::format!("{}->{}->{}", i, j, k),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Colimit of a directed diagram: disjoint union / direct sum of the
/// nodes, modulo identifying each element with its images along the
/// arrows. Legs go node -> apex.
pub fn colimit_directed(d: &Diagram) -> Result<Fan> {
    d.validate()?;
    assert!(!d.nodes.is_empty(), "colimit needs at least one node");
    match &d.nodes[0] {
        Object::Set(_) => {
            let cop = coproduct(&d.nodes)?;
            let total = cop.apex.size() as usize;
            let mut uf: Vec<usize> = (0..total).collect();
            fn find(uf: &mut Vec<usize>, x: usize) -> usize {
                if uf[x] != x {
                    let r = find(uf, uf[x]);
                    uf[x] = r;
                }
                uf[x]
            }
            for (&(i, j), f) in &d.arrows {
                for e in d.nodes[i].elements() {
                    let a = cop.apex.elem_index(&cop.legs[i].apply(&e)) as usize;
                    let b = cop.apex.elem_index(&cop.legs[j].apply(&f.apply(&e))) as usize;
                    let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                    if ra != rb {
                        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                        uf[hi] = lo;
                    }
                }
            }
            let mut class_of = alloc::vec![u32::MAX; total];
            let mut classes = 0u32;
            for x in 0..total {
                let r = find(&mut uf, x);
                if class_of[r] == u32::MAX {
                    class_of[r] = classes;
                    classes += 1;
                }
                class_of[x] = class_of[r];
            }
            let apex = Object::Set(SetObj::canonical(classes as usize));
            let quot = Morphism::from_table(&cop.apex, &apex, class_of);
            let legs = cop
                .legs
                .iter()
                .map(|inj| Morphism::compose(&quot, inj))
                .collect();
            Ok(Fan { apex, legs })
        }
        Object::Ab(_) => {
            let groups: Vec<_> = d.nodes.iter().map(|p| p.as_ab().clone()).collect();
            let ds = direct_sum(&groups);
            let mut rels: Vec<Elem> = Vec::new();
            for (&(i, j), f) in &d.arrows {
                for g in 0..groups[i].orders.len() {
                    let gen = gen_elem(&groups[i], g);
                    let a = ds.injections[i].apply(&gen);
                    let b = ds.injections[j].apply(&f.apply(&gen));
                    rels.push(ds.obj.add(&a, &ds.obj.neg(&b)));
                }
            }
            let (q, proj) = quotient_by_relations(&ds.obj, &rels);
            let legs = ds
                .injections
                .iter()
                .map(|inj| Morphism::compose(&proj, inj))
                .collect();
            Ok(Fan {
                apex: Object::Ab(q),
                legs,
            })
        }
        Object::Vect(v0) => {
            let field = v0.field.clone();
            let cop = coproduct(&d.nodes)?;
            let total = cop.apex.as_vect().dim as usize;
            let mut rel_rows: Vec<linalg::Row> = Vec::new();
            for (&(i, j), f) in &d.arrows {
                let vi = d.nodes[i].as_vect();
                for g in 0..vi.dim as usize {
                    let gen = basis_elem(vi, g);
                    let a = cop.legs[i].apply(&gen);
                    let b = cop.legs[j].apply(&f.apply(&gen));
                    rel_rows.push(
                        a.iter()
                            .zip(&b)
                            .map(|(&x, &y)| field.sub(x, y))
                            .collect(),
                    );
                }
            }
            if rel_rows.is_empty() {
                rel_rows.push(alloc::vec![0; total]);
            }
            let pivots = linalg::rref(&field, &mut rel_rows);
            let free: Vec<usize> = (0..total).filter(|c| !pivots.contains(c)).collect();
            let apex_v = VectObj::new(field.clone(), free.len() as u32);
            // projection column for e_c: reduce modulo the relation rows,
            // then read off the free coordinates
            let proj_cols: Vec<Elem> = (0..total)
                .map(|c| {
                    let mut v = alloc::vec![0u64; total];
                    v[c] = 1;
                    for (k, &p) in pivots.iter().enumerate() {
                        if v[p] != 0 {
                            let coef = v[p];
                            for t in 0..total {
                                v[t] = field.sub(v[t], field.mul(coef, rel_rows[k][t]));
                            }
                        }
                    }
                    free.iter().map(|&t| v[t]).collect()
                })
                .collect();
            let proj = Morphism::vect_from_cols(cop.apex.as_vect(), &apex_v, &proj_cols);
            let legs = cop
                .legs
                .iter()
                .map(|inj| Morphism::compose(&proj, inj))
                .collect();
            Ok(Fan {
                apex: Object::Vect(apex_v),
                legs,
            })
        }
        Object::Ring(_) => Err(EngineError::NoCoproduct {
            instance: alloc::string::String::from("commutative rings (covariant)"),
        }),
    }
}

/// Every leg of a colimit must commute with the diagram arrows.
pub fn cocone_commutes(d: &Diagram, fan: &Fan) -> bool {
    d.arrows.iter().all(|(&(i, j), f)| {
        Morphism::compose(&fan.legs[j], f) == fan.legs[i]
    })
}
