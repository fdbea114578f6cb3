//! Arithmetic tables for the finite fields `F_{p^k}`.
//!
//! Every field carries an explicitly stored monic polynomial; `F_{p^k}` is
//! `F_p[x]/(poly)` and element `i` encodes the coefficient vector of `i` in
//! base `p` (little-endian, so `i = sum c_j p^j` represents `sum c_j x^j`).
//! Construction verifies the field axioms and that the multiplicative group
//! is cyclic of order `p^k - 1`.

use crate::error::{EngineError, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Serialize, Deserialize)]
pub struct FieldTable {
    pub p: u64,
    pub k: u32,
    /// Monic polynomial of degree `k`, coefficients mod `p`, low degree first.
    pub poly: Vec<u64>,
    #[serde(skip)]
    add: Vec<u16>,
    #[serde(skip)]
    mul: Vec<u16>,
    #[serde(skip)]
    neg: Vec<u16>,
    #[serde(skip)]
    inv: Vec<u16>,
    #[serde(skip)]
    tables_built: bool,
}

impl PartialEq for FieldTable {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.poly == other.poly
    }
}
impl Eq for FieldTable {}

impl PartialOrd for FieldTable {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FieldTable {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.p, self.k, &self.poly).cmp(&(other.p, other.k, &other.poly))
    }
}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldTable {
    pub fn order(&self) -> u64 {
        self.p.pow(self.k)
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<FieldTable> {
        // poly = x, so F_p[x]/(x) = F_p.
        FieldTable::new(p, 1, alloc::vec![0, 1])
    }

    /// Shipped default polynomials for the small extension fields.
    pub fn default_for(q: u64) -> Result<FieldTable> {
        match q {
            4 => FieldTable::new(2, 2, alloc::vec![1, 1, 1]), // x^2 + x + 1
            8 => FieldTable::new(2, 3, alloc::vec![1, 1, 0, 1]), // x^3 + x + 1
            9 => FieldTable::new(3, 2, alloc::vec![1, 0, 1]), // x^2 + 1
            _ => {
                if is_prime(q) {
                    FieldTable::prime(q)
                } else {
                    Err(EngineError::Unsupported {
                        what: format!("no shipped polynomial for F_{q}"),
                    })
                }
            }
        }
    }

    pub fn new(p: u64, k: u32, poly: Vec<u64>) -> Result<FieldTable> {
        if !is_prime(p) {
            return Err(EngineError::AxiomViolation {
                law: String::from("characteristic must be prime"),
                witness: format!("p = {p}"),
            });
        }
        if poly.len() != k as usize + 1 || poly[k as usize] % p != 1 {
            return Err(EngineError::AxiomViolation {
                law: String::from("polynomial must be monic of degree k"),
                witness: format!("{poly:?}"),
            });
        }
        let q = p.checked_pow(k).filter(|&q| q <= u16::MAX as u64).ok_or(
            EngineError::SizeBoundExceeded {
                needed: u64::MAX,
                bound: u16::MAX as u64,
            },
        )?;
        let mut t = FieldTable {
            p,
            k,
            poly: poly.iter().map(|c| c % p).collect(),
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
            tables_built: false,
        };
        t.build_tables();
        // Field check: every nonzero element must be invertible (this also
        // certifies the polynomial irreducible).
        for a in 1..q {
            if t.inv[a as usize] == 0 && a != 0 {
                return Err(EngineError::AxiomViolation {
                    law: String::from("nonzero element without inverse (polynomial reducible?)"),
                    witness: format!("element {a} in F_{{{p}^{k}}}"),
                });
            }
        }
        // Cyclicity of the multiplicative group.
        if !t.has_multiplicative_generator() {
            return Err(EngineError::AxiomViolation {
                law: String::from("multiplicative group not cyclic"),
                witness: format!("F_{{{p}^{k}}}"),
            });
        }
        Ok(t)
    }

    fn decode(&self, mut i: u64) -> Vec<u64> {
        let mut c = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            c.push(i % self.p);
            i /= self.p;
        }
        c
    }

    fn encode(&self, c: &[u64]) -> u64 {
        let mut i = 0;
        for j in (0..self.k as usize).rev() {
            i = i * self.p + c[j] % self.p;
        }
        i
    }

    /// Rebuild the arithmetic tables (needed after deserialization, which
    /// skips them).
    pub fn build_tables(&mut self) {
        if self.tables_built {
            return;
        }
        let q = self.order() as usize;
        let p = self.p;
        self.add = alloc::vec![0; q * q];
        self.mul = alloc::vec![0; q * q];
        self.neg = alloc::vec![0; q];
        self.inv = alloc::vec![0; q];
        for a in 0..q as u64 {
            let ca = self.decode(a);
            let cn: Vec<u64> = ca.iter().map(|&x| (p - x) % p).collect();
            self.neg[a as usize] = self.encode(&cn) as u16;
            for b in 0..q as u64 {
                let cb = self.decode(b);
                let cs: Vec<u64> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % p).collect();
                self.add[(a * q as u64 + b) as usize] = self.encode(&cs) as u16;
                // polynomial multiplication mod poly
                let mut prod = alloc::vec![0u64; 2 * self.k as usize];
                for (i, &x) in ca.iter().enumerate() {
                    for (j, &y) in cb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce: x^k = -(poly[0..k])
                for d in (self.k as usize..prod.len()).rev() {
                    let c = prod[d];
                    if c == 0 {
                        continue;
                    }
                    prod[d] = 0;
                    for j in 0..self.k as usize {
                        let sub = (c * self.poly[j]) % p;
                        prod[d - self.k as usize + j] =
                            (prod[d - self.k as usize + j] + p - sub) % p;
                    }
                }
                self.mul[(a * q as u64 + b) as usize] =
                    self.encode(&prod[..self.k as usize]) as u16;
            }
        }
        for a in 1..q {
            for b in 1..q {
                if self.mul[a * q + b] == 1 {
                    self.inv[a] = b as u16;
                    break;
                }
            }
        }
        self.tables_built = true;
    }

    fn has_multiplicative_generator(&self) -> bool {
        let q = self.order();
        let target = q - 1;
        (1..q).any(|g| {
            let mut x = g;
            let mut ord = 1;
            while x != 1 {
                x = self.mul(x, g);
                ord += 1;
                if ord > target {
                    return false;
                }
            }
            ord == target
        })
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[(a * self.order() + b) as usize] as u64
    }
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.order() + b) as usize] as u64
    }
    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.neg[a as usize] as u64
    }
    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }
    /// Inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.inv[a as usize] as u64
    }

    pub fn canonical_name(&self) -> String {
        if self.k == 1 {
            format!("F_{}", self.p)
        } else {
            format!("F_{}[{:?}]", self.order(), self.poly)
        }
    }
}
