//! Morphisms with extensional map data.
//!
//! A morphism owns copies of its (small) domain and codomain objects, so a
//! certificate containing it can be replayed without further context.
//! Equality is extensional: equal reduced tables / matrices, never identity
//! of some handle.

use crate::object::{AbObj, Elem, Object, VectObj};
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MapData {
    /// `FinSet` / `FinCRing`: image index per element index.
    Table(Vec<u32>),
    /// `FinAb`: row-major matrix, rows = codomain factors, cols = domain
    /// factors; column `j` is the image of the j-th domain generator,
    /// entries reduced mod the codomain orders.
    AbMatrix(Vec<u64>),
    /// `FinVect`: row-major matrix of field-element indices,
    /// rows = codomain dim, cols = domain dim.
    VectMatrix(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Morphism {
    pub dom: Object,
    pub cod: Object,
    pub map: MapData,
}

impl Morphism {
    pub fn identity(obj: &Object) -> Morphism {
        let map = match obj {
            Object::Set(s) => MapData::Table((0..s.labels.len() as u32).collect()),
            Object::Ring(r) => MapData::Table((0..r.size() as u32).collect()),
            Object::Ab(g) => {
                let n = g.orders.len();
                let mut m = alloc::vec![0u64; n * n];
                for i in 0..n {
                    m[i * n + i] = 1 % g.orders[i];
                }
                MapData::AbMatrix(m)
            }
            Object::Vect(v) => {
                let n = v.dim as usize;
                let mut m = alloc::vec![0u64; n * n];
                for i in 0..n {
                    m[i * n + i] = 1;
                }
                MapData::VectMatrix(m)
            }
        };
        Morphism {
            dom: obj.clone(),
            cod: obj.clone(),
            map,
        }
    }

    /// The zero morphism (FinAb / FinVect only).
    pub fn zero(dom: &Object, cod: &Object) -> Morphism {
        let map = match (dom, cod) {
            (Object::Ab(d), Object::Ab(c)) => {
                MapData::AbMatrix(alloc::vec![0; c.orders.len() * d.orders.len()])
            }
            (Object::Vect(d), Object::Vect(c)) => {
                MapData::VectMatrix(alloc::vec![0; (c.dim * d.dim) as usize])
            }
            _ => panic!("zero morphism only defined for FinAb/FinVect"),
        };
        Morphism {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        }
    }

    pub fn from_table(dom: &Object, cod: &Object, table: Vec<u32>) -> Morphism {
        Morphism {
            dom: dom.clone(),
            cod: cod.clone(),
            map: MapData::Table(table),
        }
    }

    /// Build a `FinAb` morphism from the images of the domain generators.
    pub fn ab_from_gen_images(dom: &AbObj, cod: &AbObj, images: &[Elem]) -> Morphism {
        let rows = cod.orders.len();
        let cols = dom.orders.len();
        assert_eq!(images.len(), cols);
        let mut entries = alloc::vec![0u64; rows * cols];
        for (j, img) in images.iter().enumerate() {
            for i in 0..rows {
                entries[i * cols + j] = img[i] % cod.orders[i];
            }
        }
        Morphism {
            dom: Object::Ab(dom.clone()),
            cod: Object::Ab(cod.clone()),
            map: MapData::AbMatrix(entries),
        }
    }

    /// Build a `FinVect` morphism from basis-vector images (the columns).
    pub fn vect_from_cols(dom: &VectObj, cod: &VectObj, cols: &[Elem]) -> Morphism {
        let r = cod.dim as usize;
        let c = dom.dim as usize;
        assert_eq!(cols.len(), c);
        let mut entries = alloc::vec![0u64; r * c];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..r {
                entries[i * c + j] = col[i];
            }
        }
        Morphism {
            dom: Object::Vect(dom.clone()),
            cod: Object::Vect(cod.clone()),
            map: MapData::VectMatrix(entries),
        }
    }

    pub fn apply(&self, e: &Elem) -> Elem {
        match (&self.map, &self.cod) {
            (MapData::Table(t), _) => alloc::vec![t[e[0] as usize] as u64],
            (MapData::AbMatrix(m), Object::Ab(c)) => {
                let rows = c.orders.len();
                let cols = e.len();
                (0..rows)
                    .map(|i| {
                        let d = c.orders[i];
                        let mut acc = 0u64;
                        for j in 0..cols {
                            acc = (acc + m[i * cols + j] % d * (e[j] % d)) % d;
                        }
                        acc
                    })
                    .collect()
            }
            (MapData::VectMatrix(m), Object::Vect(c)) => {
                let rows = c.dim as usize;
                let cols = e.len();
                (0..rows)
                    .map(|i| {
                        let mut acc = 0u64;
                        for j in 0..cols {
                            acc = c.field.add(acc, c.field.mul(m[i * cols + j], e[j]));
                        }
                        acc
                    })
                    .collect()
            }
            _ => panic!("map data does not match codomain kind"),
        }
    }

    /// `outer . inner` (apply `inner` first).
    pub fn compose(outer: &Morphism, inner: &Morphism) -> Morphism {
        assert_eq!(
            inner.cod, outer.dom,
            "composition mismatch: {} vs {}",
            inner.cod.canonical_name(),
            outer.dom.canonical_name()
        );
        let map = match (&inner.map, &outer.map) {
            (MapData::Table(f), MapData::Table(g)) => {
                MapData::Table(f.iter().map(|&i| g[i as usize]).collect())
            }
            (MapData::AbMatrix(_), MapData::AbMatrix(_)) => {
                let d = inner.dom.as_ab();
                let c = outer.cod.as_ab();
                let cols = d.orders.len();
                let images: Vec<Elem> = (0..cols)
                    .map(|j| {
                        let gen = gen_elem(d, j);
                        outer.apply(&inner.apply(&gen))
                    })
                    .collect();
                return Morphism::ab_from_gen_images(d, c, &images);
            }
            (MapData::VectMatrix(_), MapData::VectMatrix(_)) => {
                let d = inner.dom.as_vect();
                let c = outer.cod.as_vect();
                let cols: Vec<Elem> = (0..d.dim as usize)
                    .map(|j| {
                        let mut e = d.zero();
                        e[j] = 1;
                        outer.apply(&inner.apply(&e))
                    })
                    .collect();
                return Morphism::vect_from_cols(d, c, &cols);
            }
            _ => panic!("cannot compose morphisms of different kinds"),
        };
        Morphism {
            dom: inner.dom.clone(),
            cod: outer.cod.clone(),
            map,
        }
    }

    /// Structure-preservation check (totality, additivity, ring laws).
    pub fn is_valid(&self) -> bool {
        match (&self.map, &self.dom, &self.cod) {
            (MapData::Table(t), Object::Set(d), Object::Set(c)) => {
                t.len() == d.labels.len() && t.iter().all(|&i| (i as usize) < c.labels.len())
            }
            (MapData::Table(t), Object::Ring(d), Object::Ring(c)) => {
                if t.len() != d.size() || t.iter().any(|&i| (i as usize) >= c.size()) {
                    return false;
                }
                if t[d.one as usize] != c.one || t[d.zero as usize] != c.zero {
                    return false;
                }
                for x in 0..d.size() as u32 {
                    for y in 0..d.size() as u32 {
                        if t[d.a(x, y) as usize] != c.a(t[x as usize], t[y as usize]) {
                            return false;
                        }
                        if t[d.m(x, y) as usize] != c.m(t[x as usize], t[y as usize]) {
                            return false;
                        }
                    }
                }
                true
            }
            (MapData::AbMatrix(m), Object::Ab(d), Object::Ab(c)) => {
                let rows = c.orders.len();
                let cols = d.orders.len();
                if m.len() != rows * cols {
                    return false;
                }
                // column j, scaled by the generator's order, must vanish
                for j in 0..cols {
                    for i in 0..rows {
                        if m[i * cols + j] >= c.orders[i] {
                            return false;
                        }
                        if (m[i * cols + j] * d.orders[j]) % c.orders[i] != 0 {
                            return false;
                        }
                    }
                }
                true
            }
            (MapData::VectMatrix(m), Object::Vect(d), Object::Vect(c)) => {
                d.field == c.field
                    && m.len() == (c.dim * d.dim) as usize
                    && m.iter().all(|&x| x < c.q())
            }
            _ => false,
        }
    }

    /// Images of all domain elements, in domain enumeration order.
    /// Only for domains under the enumeration cap.
    pub fn element_table(&self) -> Vec<(Elem, Elem)> {
        self.dom
            .elements()
            .into_iter()
            .map(|e| {
                let img = self.apply(&e);
                (e, img)
            })
            .collect()
    }
}

/// The j-th standard generator of a finite abelian group.
pub fn gen_elem(g: &AbObj, j: usize) -> Elem {
    let mut e = g.zero();
    e[j] = 1 % g.orders[j];
    e
}

/// The j-th standard basis vector.
pub fn basis_elem(v: &VectObj, j: usize) -> Elem {
    let mut e = v.zero();
    e[j] = 1;
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldTable;

    #[test]
    fn identity_laws_by_enumeration() {
        let g = AbObj::new(alloc::vec![2, 4]).unwrap();
        let obj = Object::Ab(g.clone());
        // f: Z/2+Z/4 -> Z/2+Z/4, swap-ish map: (a, b) -> (a + 2b?, ...) keep simple:
        let f = Morphism::ab_from_gen_images(
            &g,
            &g,
            &[alloc::vec![1, 2], alloc::vec![0, 3]],
        );
        assert!(f.is_valid());
        let id = Morphism::identity(&obj);
        assert_eq!(Morphism::compose(&f, &id), f);
        assert_eq!(Morphism::compose(&id, &f), f);
        // associativity, extensionally
        let g2 = Morphism::compose(&f, &f);
        let lhs = Morphism::compose(&g2, &f);
        let rhs = Morphism::compose(&f, &g2);
        for e in obj.elements() {
            assert_eq!(lhs.apply(&e), rhs.apply(&e));
        }
    }

    #[test]
    fn ab_matrix_validity() {
        let d = AbObj::cyclic(4);
        let c = AbObj::cyclic(2);
        // reduction Z/4 -> Z/2 is valid; "1 -> generator of Z/4" backwards needs 4|2*1: invalid
        let red = Morphism::ab_from_gen_images(&d, &c, &[alloc::vec![1]]);
        assert!(red.is_valid());
        let bad = Morphism::ab_from_gen_images(&c, &d, &[alloc::vec![1]]);
        assert!(!bad.is_valid());
        let good = Morphism::ab_from_gen_images(&c, &d, &[alloc::vec![2]]);
        assert!(good.is_valid());
    }

    #[test]
    fn vect_matrix_apply() {
        let f2 = FieldTable::prime(2).unwrap();
        let v2 = VectObj::new(f2.clone(), 2);
        let swap = Morphism::vect_from_cols(&v2, &v2, &[alloc::vec![0, 1], alloc::vec![1, 0]]);
        assert_eq!(swap.apply(&alloc::vec![1, 0]), alloc::vec![0, 1]);
        let comp = Morphism::compose(&swap, &swap);
        assert_eq!(comp, Morphism::identity(&Object::Vect(v2)));
    }

    #[test]
    fn ring_hom_validity() {
        use crate::ring;
        let z6 = ring::cyclic_ring(6);
        let z2 = ring::cyclic_ring(2);
        let proj = Morphism::from_table(
            &Object::Ring(z6.clone()),
            &Object::Ring(z2.clone()),
            (0..6).map(|i| i % 2).collect(),
        );
        assert!(proj.is_valid());
        let not_unital = Morphism::from_table(
            &Object::Ring(z6),
            &Object::Ring(z2),
            alloc::vec![0; 6],
        );
        assert!(!not_unital.is_valid());
    }
}
