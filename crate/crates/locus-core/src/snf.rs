//! Integer matrices and Smith normal form with unimodular transforms.
//!
//! `snf(A)` returns `(U, D, V)` with `U * A * V = D` diagonal, `d_1 | d_2 | ...`,
//! together with the inverses of `U` and `V`. This backs the finite abelian
//! group machinery: canonical divisor chains, subgroup images and quotients.

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: alloc::vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend_from_slice(row);
        }
        IntMat { rows: r, cols: c, data }
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut acc = alloc::vec![0i128; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)] as i128;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    acc[i * other.cols + j] += a * other[(k, j)] as i128;
                }
            }
        }
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out[(i, j)] = i128::try_from(acc[i * other.cols + j])
                    .ok()
                    .and_then(|v| i64::try_from(v).ok())
                    .expect("matrix product entry exceeds i64");
            }
        }
        out
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            let t = self[(a, j)];
            self[(a, j)] = self[(b, j)];
            self[(b, j)] = t;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            let t = self[(i, a)];
            self[(i, a)] = self[(i, b)];
            self[(i, b)] = t;
        }
    }

    /// row a += k * row b
    fn add_row(&mut self, a: usize, b: usize, k: i64) {
        for j in 0..self.cols {
            self[(a, j)] += k * self[(b, j)];
        }
    }

    /// col a += k * col b
    fn add_col(&mut self, a: usize, b: usize, k: i64) {
        for i in 0..self.rows {
            self[(i, a)] += k * self[(i, b)];
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            self[(a, j)] = -self[(a, j)];
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            self[(i, a)] = -self[(i, a)];
        }
    }
}

impl core::ops::Index<(usize, usize)> for IntMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}
impl core::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form decomposition: `u * a * v = d`, `u_inv`/`v_inv` are the
/// exact inverses of the unimodular transforms.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMat,
    pub u_inv: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
    pub d: IntMat,
}

impl Snf {
    /// The diagonal entries `d_1 | d_2 | ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)])
            .collect()
    }
}

pub fn snf(a: &IntMat) -> Snf {
    let mut d = a.clone();
    let n = d.rows;
    let m = d.cols;
    let mut u = IntMat::identity(n);
    let mut u_inv = IntMat::identity(n);
    let mut v = IntMat::identity(m);
    let mut v_inv = IntMat::identity(m);

    // Row op E applied on the left of d: u <- E u, u_inv <- u_inv E^{-1}.
    // Column op F applied on the right: v <- v F, v_inv <- F^{-1} v_inv.
    let mut t = 0;
    while t < n.min(m) {
        // find pivot: smallest nonzero |entry| in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..m {
                if d[(i, j)] != 0
                    && pivot.is_none_or(|(pi, pj)| d[(i, j)].abs() < d[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
        }
        if pj != t {
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);
        }
        // eliminate column and row t
        let mut again = true;
        while again {
            again = false;
            for i in t + 1..n {
                if d[(i, t)] != 0 {
                    let q = d[(i, t)].div_euclid(d[(t, t)]);
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                    u_inv.add_col(t, i, q);
                    if d[(i, t)] != 0 {
                        // remainder nonzero and smaller: swap up and restart
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                        u_inv.swap_cols(t, i);
                        again = true;
                    }
                }
            }
            for j in t + 1..m {
                if d[(t, j)] != 0 {
                    let q = d[(t, j)].div_euclid(d[(t, t)]);
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                    v_inv.add_row(t, j, q);
                    if d[(t, j)] != 0 {
                        d.swap_cols(t, j);
                        v.swap_cols(t, j);
                        v_inv.swap_rows(t, j);
                        again = true;
                    }
                }
            }
        }
        // divisibility: d_t must divide every remaining entry
        let dt = d[(t, t)];
        let mut fixed = true;
        'outer: for i in t + 1..n {
            for j in t + 1..m {
                if d[(i, j)] % dt != 0 {
                    d.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                    u_inv.add_col(i, t, -1);
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue; // redo elimination at the same t
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }
    Snf { u, u_inv, v, v_inv, d }
}

/// Basis of the integer kernel `{x : A x = 0}`, as columns.
pub fn integer_kernel(a: &IntMat) -> Vec<Vec<i64>> {
    let s = snf(a);
    let rank = s
        .diagonal()
        .iter()
        .take_while(|&&d| d != 0)
        .count();
    (rank..a.cols).map(|j| s.v.col(j)).collect()
}
