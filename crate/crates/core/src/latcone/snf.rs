//! Smith normal form over `Z` with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub type ZMat = Vec<Vec<BigInt>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithDecomposition {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    #[serde(serialize_with = "ser_bigints")]
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    /// `left * input * right = diag(invariant_factors)`.
    #[serde(skip)]
    pub left: ZMat,
    #[serde(skip)]
    pub right: ZMat,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl SmithDecomposition {
    /// Product of the invariant factors (the torsion order when rank is full).
    pub fn factor_product(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn from_i64(m: &[Vec<i64>]) -> ZMat {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn identity(n: usize) -> ZMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &ZMat, b: &ZMat) -> ZMat {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(BigInt::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

/// Smith normal form of an `rows x cols` integer matrix.
pub fn smith_normal_form(input: &ZMat) -> SmithDecomposition {
    let rows = input.len();
    let cols = input.first().map_or(0, Vec::len);
    let mut a = input.clone();
    let mut left = identity(rows);
    let mut right = identity(cols);
    let mut t = 0;

    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        left.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut right, t, pj);

        loop {
            let mut dirty = false;
            // Clear column t below the pivot.
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let qt = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &qt);
                row_axpy(&mut left, i, t, &qt);
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    left.swap(t, i);
                    dirty = true;
                }
            }
            // Clear row t right of the pivot.
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let qt = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &qt);
                col_axpy(&mut right, j, t, &qt);
                if !a[t][j].is_zero() {
                    swap_cols(&mut a, t, j);
                    swap_cols(&mut right, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: the pivot must divide the whole trailing block.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match offender {
                Some((i, _)) => {
                    // Add row i to row t and restart the clearing.
                    let neg_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &neg_one);
                    row_axpy(&mut left, t, i, &neg_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in left[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }

    let invariant_factors: Vec<BigInt> =
        (0..rows.min(cols)).map(|i| a[i][i].clone()).filter(|d| !d.is_zero()).collect();
    SmithDecomposition { rank: invariant_factors.len(), invariant_factors, left, right }
}

/// row[i] -= q * row[k]
fn row_axpy(m: &mut ZMat, i: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = m[k].clone();
    for (x, s) in m[i].iter_mut().zip(&src) {
        *x -= q * s;
    }
}

/// col[j] -= q * col[k]
fn col_axpy(m: &mut ZMat, j: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let s = row[k].clone();
        row[j] -= q * s;
    }
}

fn swap_cols(m: &mut ZMat, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(m: &ZMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
