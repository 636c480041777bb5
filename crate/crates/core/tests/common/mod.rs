//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use chamberforge::rootdata::RootDatum;
use chamberforge::StackyFan;

/// Rank of a small integer matrix by fraction-free elimination in `i128`.
pub fn int_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = m[i][j] * a - m[r][j] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// `(h0, h1)` of `O(b_0|…|b_{n+1})` by gluing sections on the components.
///
/// Component `i` (weights `b_{i-1}`, `b_i`) carries an invariant section iff
/// `b_{i-1} >= 0 >= b_i`, nonvanishing at an end exactly when that weight is
/// zero, and an invariant `H^1` class iff `b_{i-1} < 0 < b_i`. Nodes with
/// weight zero impose one matching condition each.
pub fn gluing_h0_h1(b: &[i64]) -> (usize, usize) {
    let comps = b.len() - 1;
    let has = |i: usize| b[i] >= 0 && b[i + 1] <= 0;
    let sections: Vec<usize> = (0..comps).filter(|&i| has(i)).collect();
    let zero_nodes: Vec<usize> = (1..comps).filter(|&k| b[k] == 0).collect();
    // Row per zero-weight node, column per component section.
    let rows: Vec<Vec<i64>> = zero_nodes
        .iter()
        .map(|&k| {
            sections
                .iter()
                .map(|&i| {
                    if i + 1 == k {
                        1 // right end of component i at node k
                    } else if i == k {
                        -1 // left end of component k at node k
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let rank = if sections.is_empty() { 0 } else { int_rank(&rows) };
    let h1_local = (0..comps).filter(|&i| b[i] < 0 && b[i + 1] > 0).count();
    (sections.len() - rank, zero_nodes.len() - rank + h1_local)
}

/// Closure of the simple reflections under composition, as Λ-matrices.
pub fn brute_weyl(rd: &RootDatum) -> BTreeSet<Vec<Vec<i64>>> {
    let r = rd.rank;
    let gens: Vec<Vec<Vec<i64>>> = (0..rd.num_simple())
        .map(|i| {
            (0..r)
                .map(|a| {
                    (0..r)
                        .map(|b| i64::from(a == b) - rd.simple_coroots[i][a] * rd.simple_roots[i][b])
                        .collect()
                })
                .collect()
        })
        .collect();
    let id: Vec<Vec<i64>> = (0..r).map(|a| (0..r).map(|b| i64::from(a == b)).collect()).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(m) = frontier.pop() {
        for g in &gens {
            let p: Vec<Vec<i64>> =
                (0..r).map(|a| (0..r).map(|b| (0..r).map(|k| g[a][k] * m[k][b]).sum()).collect()).collect();
            if seen.insert(p.clone()) {
                frontier.push(p);
            }
        }
    }
    seen
}

/// Cones of a fan as sets of ray vectors.
pub fn cone_vector_sets(fan: &StackyFan) -> BTreeSet<BTreeSet<Vec<i64>>> {
    fan.cones.iter().map(|c| c.iter().map(|&k| fan.rays[k].clone()).collect()).collect()
}

/// Maximal cones of `KGL_r` from the braid arrangement: chambers of
/// `x_{π(0)} >= … >= x_{π(r)}` where `π` keeps `1..r` in increasing order,
/// with rays `1_{π(0..m)}` normalised by `x_0 = 0`.
pub fn kgl_oracle(r: usize) -> BTreeSet<BTreeSet<Vec<i64>>> {
    let mut out = BTreeSet::new();
    for pos in 0..=r {
        // π lists 1..r in order with 0 inserted at position `pos`.
        let mut pi: Vec<usize> = (1..=r).collect();
        pi.insert(pos, 0);
        let mut cone = BTreeSet::new();
        for m in 1..=r {
            let mut x = vec![0i64; r + 1];
            for &j in &pi[..m] {
                x[j] = 1;
            }
            let a: Vec<i64> = x[1..].iter().map(|v| v - x[0]).collect();
            cone.insert(a);
        }
        out.insert(cone);
    }
    out
}

/// Whether `x` is a nonnegative combination of at most two of `gens` in the
/// plane, decided by Carathéodory and Cramer's rule.
pub fn planar_member(gens: &[[i64; 2]], x: [i64; 2]) -> bool {
    if x == [0, 0] {
        return true;
    }
    let det = |a: [i64; 2], b: [i64; 2]| a[0] * b[1] - a[1] * b[0];
    let dotp = |a: [i64; 2], b: [i64; 2]| a[0] * b[0] + a[1] * b[1];
    for g in gens {
        if det(*g, x) == 0 && dotp(*g, x) > 0 {
            return true;
        }
    }
    for (i, g) in gens.iter().enumerate() {
        for h in &gens[i + 1..] {
            let d = det(*g, *h);
            if d == 0 {
                continue;
            }
            // x = s g + t h with s = det(x,h)/d, t = det(g,x)/d.
            let s = det(x, *h) * d.signum();
            let t = det(*g, x) * d.signum();
            if s >= 0 && t >= 0 {
                return true;
            }
        }
    }
    false
}

/// `k`-th determinantal divisor: gcd of all `k × k` minors.
pub fn determinantal_divisor(m: &[Vec<i64>], k: usize) -> i128 {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect()).collect()
    }
    fn det(m: &[Vec<i128>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum()
    }
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = 0i128;
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect()).collect();
            g = gcd(g, det(&sub));
        }
    }
    g
}
