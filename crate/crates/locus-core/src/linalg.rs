//! Dense linear algebra over the table fields, sized for desk-scale
//! dimensions. Matrices are row vectors of field-element indices.

use crate::fields::FieldTable;
use alloc::vec::Vec;

pub type Row = Vec<u64>;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
pub fn rref(f: &FieldTable, mat: &mut [Row]) -> Vec<usize> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| mat[i][c] != 0) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = f.inv(mat[r][c]);
        for x in mat[r].iter_mut() {
            *x = f.mul(inv, *x);
        }
        for i in 0..rows {
            if i != r && mat[i][c] != 0 {
                let factor = mat[i][c];
                for j in 0..cols {
                    let sub = f.mul(factor, mat[r][j]);
                    mat[i][j] = f.sub(mat[i][j], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(f: &FieldTable, mat: &[Row]) -> usize {
    let mut m: Vec<Row> = mat.to_vec();
    rref(f, &mut m).len()
}

/// All solutions of `A x = b`: a particular solution plus a kernel basis,
/// or `None` if inconsistent.
pub fn solve_full(f: &FieldTable, a: &[Row], b: &Row) -> Option<(Row, Vec<Row>)> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Row> = a
        .iter()
        .zip(b)
        .map(|(r, &bv)| {
            let mut row = r.clone();
            row.push(bv);
            row
        })
        .collect();
    let pivots = rref(f, &mut aug);
    // inconsistent if a pivot lands in the augmented column
    if pivots.contains(&cols) {
        return None;
    }
    let mut particular = alloc::vec![0u64; cols];
    for (i, &p) in pivots.iter().enumerate() {
        particular[p] = aug[i][cols];
    }
    let pivot_set: Vec<bool> = {
        let mut v = alloc::vec![false; cols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut kernel = Vec::new();
    for free in 0..cols {
        if pivot_set[free] {
            continue;
        }
        let mut k = alloc::vec![0u64; cols];
        k[free] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            k[p] = f.neg(aug[i][free]);
        }
        kernel.push(k);
    }
    Some((particular, kernel))
}

/// Kernel basis of `A x = 0`.
pub fn kernel_basis(f: &FieldTable, a: &[Row]) -> Vec<Row> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    solve_full(f, a, &alloc::vec![0; a.len()])
        .map(|(_, k)| k)
        .unwrap_or_else(|| {
            // A x = 0 is always consistent
            let mut id = Vec::new();
            for i in 0..cols {
                let mut r = alloc::vec![0; cols];
                r[i] = 1;
                id.push(r);
            }
            id
        })
}

/// Indices of a maximal independent subset of the given columns
/// (leftmost-greedy, so deterministic).
pub fn independent_columns(f: &FieldTable, cols: &[Row]) -> Vec<usize> {
    if cols.is_empty() {
        return Vec::new();
    }
    let dim = cols[0].len();
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Row> = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        // is c in span(basis)?
        let mut mat: Vec<Row> = (0..dim)
            .map(|i| basis.iter().map(|b| b[i]).collect())
            .collect();
        let b: Row = c.clone();
        let in_span = if basis.is_empty() {
            c.iter().all(|&x| x == 0)
        } else {
            solve_full(f, &mut mat, &b).is_some()
        };
        if !in_span {
            chosen.push(j);
            basis.push(c.clone());
        }
    }
    chosen
}

/// Coordinates of `v` in terms of the given independent columns, if any.
pub fn coordinates_in(f: &FieldTable, basis_cols: &[Row], v: &Row) -> Option<Row> {
    if basis_cols.is_empty() {
        return if v.iter().all(|&x| x == 0) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let dim = basis_cols[0].len();
    let mat: Vec<Row> = (0..dim)
        .map(|i| basis_cols.iter().map(|b| b[i]).collect())
        .collect();
    solve_full(f, &mat, v).map(|(p, _)| p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_over_f2() {
        let f2 = FieldTable::prime(2).unwrap();
        // x + y = 1, y = 1 -> x = 0
        let a = alloc::vec![alloc::vec![1, 1], alloc::vec![0, 1]];
        let (p, k) = solve_full(&f2, &a, &alloc::vec![1, 1]).unwrap();
        assert_eq!(p, alloc::vec![0, 1]);
        assert!(k.is_empty());
    }

    #[test]
    fn kernel_dimension() {
        let f3 = FieldTable::prime(3).unwrap();
        let a = alloc::vec![alloc::vec![1, 2, 0]];
        let k = kernel_basis(&f3, &a);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = (v[0] + 2 * v[1]) % 3;
            assert_eq!(s % 3, 0);
        }
    }

    #[test]
    fn independent_columns_picks_rank_many() {
        let f2 = FieldTable::prime(2).unwrap();
        let cols = alloc::vec![
            alloc::vec![1, 0],
            alloc::vec![1, 0],
            alloc::vec![0, 1],
            alloc::vec![1, 1],
        ];
        assert_eq!(independent_columns(&f2, &cols), alloc::vec![0, 2]);
        let coords = coordinates_in(
            &f2,
            &[alloc::vec![1, 0], alloc::vec![0, 1]],
            &alloc::vec![1, 1],
        )
        .unwrap();
        assert_eq!(coords, alloc::vec![1, 1]);
    }
}
