//! Dense Gaussian elimination over `Q`.

use num_traits::{One, Zero};

use crate::rational::{Q, QVec};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [QVec]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[QVec]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows over `n` columns.
pub fn nullspace(rows: &[QVec], n: usize) -> Vec<QVec> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); n];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `A x = b`, or `None` if inconsistent.
pub fn solve(rows: &[QVec], b: &[Q]) -> Option<QVec> {
    let n = rows.first().map_or(0, Vec::len);
    let mut aug: Vec<QVec> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][n].clone();
    }
    Some(x)
}

/// Columns-as-vectors: solve `sum_k c_k v_k = target`.
pub fn express_in(vectors: &[QVec], target: &[Q]) -> Option<QVec> {
    let dim = target.len();
    if vectors.is_empty() {
        return if target.iter().all(Zero::is_zero) { Some(Vec::new()) } else { None };
    }
    let rows: Vec<QVec> = (0..dim)
        .map(|i| vectors.iter().map(|v| v[i].clone()).collect())
        .collect();
    solve(&rows, target)
}

pub fn transpose(m: &[QVec]) -> Vec<QVec> {
    let Some(first) = m.first() else {
        return Vec::new();
    };
    (0..first.len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(m: &[QVec]) -> Option<Vec<QVec>> {
    let n = m.len();
    let mut aug: Vec<QVec> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
