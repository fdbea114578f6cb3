//! Objects of the four shipped concrete categories.
//!
//! Every object is small and self-describing; two objects are equal exactly
//! when their canonical forms coincide. Elements are coordinate vectors:
//!   - `FinSet` / `FinCRing`: a single index into the element list,
//!   - `FinAb`: one coordinate per cyclic factor of the divisor chain,
//!   - `FinVect`: one field-element index per dimension.

use crate::error::{EngineError, Result};
use crate::fields::FieldTable;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

/// An element, as mixed-radix coordinates (see module docs).
pub type Elem = Vec<u64>;

/// Hard cap on explicit element enumeration; constructions that would pass
/// it must fail with `SizeBoundExceeded` before enumerating.
pub const ELEM_ENUM_CAP: u64 = 1 << 21;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetObj {
    pub labels: Vec<String>,
}

impl SetObj {
    pub fn new(labels: Vec<String>) -> Result<SetObj> {
        for i in 1..labels.len() {
            if labels[i - 1..].contains(&labels[i]) && labels[i - 1] == labels[i] {
                return Err(EngineError::AxiomViolation {
                    law: String::from("set labels must be distinct"),
                    witness: labels[i].clone(),
                });
            }
        }
        let mut seen = labels.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != labels.len() {
            return Err(EngineError::AxiomViolation {
                law: String::from("set labels must be distinct"),
                witness: format!("{labels:?}"),
            });
        }
        Ok(SetObj { labels })
    }

    /// The canonical n-element set with labels "0".."n-1".
    pub fn canonical(n: usize) -> SetObj {
        SetObj {
            labels: (0..n).map(|i| format!("{i}")).collect(),
        }
    }
}

/// A finite abelian group in Smith-normal divisor-chain form:
/// `Z/d_1 + ... + Z/d_r` with `d_1 | d_2 | ...`, each `d_i >= 2`.
/// The empty chain is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbObj {
    pub orders: Vec<u64>,
}

impl AbObj {
    pub fn new(orders: Vec<u64>) -> Result<AbObj> {
        for w in orders.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(EngineError::AxiomViolation {
                    law: String::from("divisor chain d_1 | d_2 | ... required"),
                    witness: format!("{orders:?}"),
                });
            }
        }
        if orders.iter().any(|&d| d < 2) {
            return Err(EngineError::AxiomViolation {
                law: String::from("cyclic orders must be >= 2"),
                witness: format!("{orders:?}"),
            });
        }
        Ok(AbObj { orders })
    }

    pub fn trivial() -> AbObj {
        AbObj { orders: Vec::new() }
    }

    pub fn cyclic(n: u64) -> AbObj {
        if n <= 1 {
            AbObj::trivial()
        } else {
            AbObj { orders: alloc::vec![n] }
        }
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Least common multiple of the cyclic orders (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.orders.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> Elem {
        alloc::vec![0; self.orders.len()]
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect()
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &d)| (d - x) % d)
            .collect()
    }

    pub fn scale(&self, k: u64, a: &Elem) -> Elem {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &d)| (x % d * (k % d)) % d)
            .collect()
    }

    /// Additive order of an element.
    pub fn elem_order(&self, a: &Elem) -> u64 {
        let mut ord = 1u64;
        for (&x, &d) in a.iter().zip(&self.orders) {
            let o = d / gcd(x, d);
            ord = ord / gcd(ord, o) * o;
        }
        ord
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        if a == 0 { 1 } else { a }
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VectObj {
    pub field: FieldTable,
    pub dim: u32,
}

impl VectObj {
    pub fn new(field: FieldTable, dim: u32) -> VectObj {
        VectObj { field, dim }
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn zero(&self) -> Elem {
        alloc::vec![0; self.dim as usize]
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn scale(&self, c: u64, a: &Elem) -> Elem {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }
}

/// A finite commutative unital ring given by explicit operation tables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingObj {
    pub name: String,
    pub labels: Vec<String>,
    /// n*n tables, row-major: `add[a*n + b]`.
    pub add: Vec<u32>,
    pub mul: Vec<u32>,
    pub neg: Vec<u32>,
    pub zero: u32,
    pub one: u32,
}

impl RingObj {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn a(&self, x: u32, y: u32) -> u32 {
        self.add[x as usize * self.size() + y as usize]
    }
    #[inline]
    pub fn m(&self, x: u32, y: u32) -> u32 {
        self.mul[x as usize * self.size() + y as usize]
    }
    #[inline]
    pub fn n(&self, x: u32) -> u32 {
        self.neg[x as usize]
    }

    /// Full commutative unital ring axiom check. The zero ring (0 = 1,
    /// one element) is rejected unless `allow_zero`.
    pub fn validate(&self, allow_zero: bool) -> Result<()> {
        let n = self.size() as u32;
        if n == 0 {
            return Err(EngineError::AxiomViolation {
                law: String::from("ring must be nonempty"),
                witness: String::new(),
            });
        }
        if self.add.len() != (n * n) as usize
            || self.mul.len() != (n * n) as usize
            || self.neg.len() != n as usize
        {
            return Err(EngineError::AxiomViolation {
                law: String::from("table dimensions"),
                witness: self.name.clone(),
            });
        }
        if self.zero == self.one && !allow_zero {
            return Err(EngineError::AxiomViolation {
                law: String::from("0 = 1 (zero ring not permitted here)"),
                witness: self.name.clone(),
            });
        }
        let viol = |law: &str, w: String| -> Result<()> {
            Err(EngineError::AxiomViolation {
                law: String::from(law),
                witness: w,
            })
        };
        for x in 0..n {
            if self.a(x, self.zero) != x {
                return viol("x + 0 = x", format!("x={x}"));
            }
            if self.a(x, self.n(x)) != self.zero {
                return viol("x + (-x) = 0", format!("x={x}"));
            }
            if self.m(x, self.one) != x {
                return viol("x * 1 = x", format!("x={x}"));
            }
            for y in 0..n {
                if self.a(x, y) != self.a(y, x) {
                    return viol("commutative addition", format!("x={x},y={y}"));
                }
                if self.m(x, y) != self.m(y, x) {
                    return viol("commutative multiplication", format!("x={x},y={y}"));
                }
                for z in 0..n {
                    if self.a(self.a(x, y), z) != self.a(x, self.a(y, z)) {
                        return viol("associative addition", format!("x={x},y={y},z={z}"));
                    }
                    if self.m(self.m(x, y), z) != self.m(x, self.m(y, z)) {
                        return viol("associative multiplication", format!("x={x},y={y},z={z}"));
                    }
                    if self.m(x, self.a(y, z)) != self.a(self.m(x, y), self.m(x, z)) {
                        return viol("distributivity", format!("x={x},y={y},z={z}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Two-sided multiplicative inverse, if the element is a unit.
    pub fn inverse(&self, x: u32) -> Option<u32> {
        (0..self.size() as u32).find(|&y| self.m(x, y) == self.one)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Object {
    Set(SetObj),
    Ab(AbObj),
    Vect(VectObj),
    Ring(RingObj),
}

impl Object {
    pub fn size(&self) -> u64 {
        match self {
            Object::Set(s) => s.labels.len() as u64,
            Object::Ab(g) => g.order(),
            Object::Vect(v) => v.q().pow(v.dim),
            Object::Ring(r) => r.size() as u64,
        }
    }

    /// Coordinate radices of the mixed-radix element encoding.
    fn radices(&self) -> Vec<u64> {
        match self {
            Object::Set(s) => alloc::vec![s.labels.len() as u64],
            Object::Ab(g) => g.orders.clone(),
            Object::Vect(v) => alloc::vec![v.q(); v.dim as usize],
            Object::Ring(r) => alloc::vec![r.size() as u64],
        }
    }

    /// All elements, in deterministic lexicographic order (last coordinate
    /// fastest). Callers must keep sizes under `ELEM_ENUM_CAP`.
    pub fn elements(&self) -> Vec<Elem> {
        assert!(
            self.size() <= ELEM_ENUM_CAP,
            "element enumeration over cap for {}",
            self.canonical_name()
        );
        let radices = self.radices();
        if radices.iter().any(|&r| r == 0) {
            return Vec::new();
        }
        let total = self.size() as usize;
        let mut out = Vec::with_capacity(total);
        let mut cur = alloc::vec![0u64; radices.len()];
        if radices.is_empty() {
            out.push(Vec::new());
            return out;
        }
        loop {
            out.push(cur.clone());
            // increment, last coordinate fastest
            let mut i = radices.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < radices[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Index of an element in `elements()` order.
    pub fn elem_index(&self, e: &Elem) -> u64 {
        let radices = self.radices();
        let mut idx = 0u64;
        for (c, r) in e.iter().zip(&radices) {
            idx = idx * r + c;
        }
        idx
    }

    pub fn elem_at(&self, mut idx: u64) -> Elem {
        let radices = self.radices();
        let mut e = alloc::vec![0u64; radices.len()];
        for i in (0..radices.len()).rev() {
            e[i] = idx % radices[i];
            idx /= radices[i];
        }
        e
    }

    pub fn canonical_name(&self) -> String {
        match self {
            Object::Set(s) => format!("Set{:?}", s.labels),
            Object::Ab(g) => {
                if g.orders.is_empty() {
                    String::from("Ab[0]")
                } else {
                    let parts: Vec<String> = g.orders.iter().map(|d| format!("Z/{d}")).collect();
                    parts.join("+")
                }
            }
            Object::Vect(v) => format!("{}^{}", v.field.canonical_name(), v.dim),
            Object::Ring(r) => r.name.clone(),
        }
    }

    pub fn as_set(&self) -> &SetObj {
        match self {
            Object::Set(s) => s,
            _ => panic!("expected FinSet object"),
        }
    }
    pub fn as_ab(&self) -> &AbObj {
        match self {
            Object::Ab(g) => g,
            _ => panic!("expected FinAb object"),
        }
    }
    pub fn as_vect(&self) -> &VectObj {
        match self {
            Object::Vect(v) => v,
            _ => panic!("expected FinVect object"),
        }
    }
    pub fn as_ring(&self) -> &RingObj {
        match self {
            Object::Ring(r) => r,
            _ => panic!("expected FinCRing object"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ab_divisor_chain_enforced() {
        assert!(AbObj::new(alloc::vec![2, 4]).is_ok());
        assert!(AbObj::new(alloc::vec![2, 3]).is_err());
        assert!(AbObj::new(alloc::vec![1, 2]).is_err());
    }

    #[test]
    fn element_enumeration_order() {
        let g = Object::Ab(AbObj::new(alloc::vec![2, 4]).unwrap());
        let els = g.elements();
        assert_eq!(els.len(), 8);
        assert_eq!(els[0], alloc::vec![0, 0]);
        assert_eq!(els[1], alloc::vec![0, 1]);
        assert_eq!(els[4], alloc::vec![1, 0]);
        for (i, e) in els.iter().enumerate() {
            assert_eq!(g.elem_index(e), i as u64);
            assert_eq!(g.elem_at(i as u64), *e);
        }
    }

    #[test]
    fn trivial_group_has_one_element() {
        let g = Object::Ab(AbObj::trivial());
        assert_eq!(g.size(), 1);
        assert_eq!(g.elements(), alloc::vec![Elem::new()]);
    }

    #[test]
    fn empty_set_has_no_elements() {
        let s = Object::Set(SetObj::canonical(0));
        assert_eq!(s.size(), 0);
        assert!(s.elements().is_empty());
    }

    #[test]
    fn elem_orders() {
        let g = AbObj::new(alloc::vec![2, 4]).unwrap();
        assert_eq!(g.elem_order(&alloc::vec![0, 0]), 1);
        assert_eq!(g.elem_order(&alloc::vec![1, 0]), 2);
        assert_eq!(g.elem_order(&alloc::vec![1, 1]), 4);
        assert_eq!(g.elem_order(&alloc::vec![0, 2]), 2);
    }
}
