//! Canonical fans, `KGL_r`, multidegree labels and the Losev–Manin map.
//!
//! Type-A conventions: for `PGL_{r+1}` the simple roots are `α_i = ε_i - ε_{i-1}`
//! (`i = 1..r`), so a cocharacter `diag(t^{x_0}, …, t^{x_r})` has coweight
//! coordinates `c_i = x_i - x_{i-1}` and `ϖ_m^∨` is `x = 1_{m..r}`. The
//! embedding `GL_r → PGL_{r+1}` is `A ↦ block(1, A)`, so `x_0 = 0` and the
//! remaining `x_i` are the `GL_r` diagonal exponents.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::chains::{multidegree, SplittingType};
use crate::fans::{weyl_fan, StackyFan};
use crate::rational;
use crate::rootdata::{gl, pgl, LabelScheme, RootDatum};
use crate::Error;

/// Face fan of the positive chamber with primitive generators on the
/// fundamental coweight rays.
pub fn canonical_fan(rd: &RootDatum) -> Result<StackyFan, Error> {
    if !rd.is_semisimple() {
        return Err(Error::Precondition(format!("{} is not semisimple", rd.name)));
    }
    let rays = rd
        .fundamental_coweights
        .iter()
        .map(|w| rational::primitive_on_ray(w).ok_or_else(|| Error::InvalidRootDatum("zero coweight".into())))
        .collect::<Result<Vec<_>, _>>()?;
    StackyFan::single_cone(rd.rank, rays)
}

/// `x` with `x_0 = 0` from coweight coordinates.
pub fn coweight_to_diag(c: &[i64]) -> Vec<i64> {
    let mut x = Vec::with_capacity(c.len() + 1);
    x.push(0);
    let mut acc = 0;
    for &ci in c {
        acc += ci;
        x.push(acc);
    }
    x
}

/// Coweight coordinates of `diag(t^{x_0}, …, t^{x_r})` modulo the center.
pub fn diag_to_coweight(x: &[i64]) -> Vec<i64> {
    x.windows(2).map(|w| w[1] - w[0]).collect()
}

/// The part of the `PGL_{r+1}` chamber fan inside the `GL_r` chamber.
///
/// Rays keep the order they have in the Weyl fan of the canonical fan.
pub fn kgl_fan(r: usize) -> Result<StackyFan, Error> {
    if r == 0 {
        return Err(Error::Precondition("KGL_r needs r >= 1".into()));
    }
    let p = pgl(r + 1)?;
    let wf = weyl_fan(&p, &canonical_fan(&p)?)?;
    let to_gl = |c: &[i64]| coweight_to_diag(c)[1..].to_vec();
    let in_chamber = |a: &[i64]| a.windows(2).all(|w| w[0] >= w[1]);
    let keep: Vec<Vec<usize>> = wf
        .maximal_cones()
        .into_iter()
        .filter(|c| c.iter().all(|&k| in_chamber(&to_gl(&wf.rays[k]))))
        .collect();
    let used: BTreeSet<usize> = keep.iter().flatten().copied().collect();
    let old: Vec<usize> = used.into_iter().collect();
    let rays: Vec<Vec<i64>> = old.iter().map(|&k| to_gl(&wf.rays[k])).collect();
    let cones = keep
        .iter()
        .map(|c| c.iter().map(|k| old.binary_search(k).expect("ray is used")).collect())
        .collect();
    StackyFan::new(r, rays, cones)
}

/// A split bundle written in multidegree notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleLabel {
    pub projective: bool,
    /// One `O(d_0,…,d_n)` per summand, in coordinate order.
    pub summands: Vec<String>,
}

impl BundleLabel {
    /// Summands sorted, for order-free comparison.
    pub fn multiset(&self) -> Vec<String> {
        let mut s = self.summands.clone();
        s.sort();
        s
    }
}

impl fmt::Display for BundleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.summands.join(" ⊕ ");
        if self.projective {
            write!(f, "P({body})")
        } else {
            f.write_str(&body)
        }
    }
}

fn format_degrees(d: &[i64]) -> String {
    let inner: Vec<String> = d.iter().map(i64::to_string).collect();
    format!("O({})", inner.join(","))
}

/// Multidegrees of each coordinate line: summand `k` has weights
/// `(0, x_1[k], …, x_n[k], 0)`.
fn summand_degrees(xs: &[Vec<i64>], width: usize) -> Vec<Vec<i64>> {
    (0..width)
        .map(|k| {
            let mut w = vec![0];
            w.extend(xs.iter().map(|x| x[k]));
            w.push(0);
            multidegree(&w)
        })
        .collect()
}

/// Multidegree label of `E(β)` for `GL_r`, or of `P(E)` for `PGL_{r+1}`.
///
/// Projective labels are twisted so that every coordinate has minimum
/// degree zero on components `1..n` and the total degree of each summand is
/// one; stable types then read `P(O(v_0) ⊕ … ⊕ O(v_r))` with unit `v_j`.
pub fn bundle_label(rd: &RootDatum, beta: &SplittingType) -> Result<BundleLabel, Error> {
    beta.check_rank(rd.rank)?;
    match rd.label_scheme {
        LabelScheme::None => Err(Error::NoLabelScheme),
        LabelScheme::Gl => {
            let degs = summand_degrees(&beta.entries, rd.rank);
            Ok(BundleLabel { projective: false, summands: degs.iter().map(|d| format_degrees(d)).collect() })
        }
        LabelScheme::Pgl => {
            let xs: Vec<Vec<i64>> = beta.entries.iter().map(|c| coweight_to_diag(c)).collect();
            let mut degs = summand_degrees(&xs, rd.rank + 1);
            let n = beta.len();
            let mut twist = vec![0i64; n + 1];
            for i in 1..=n {
                twist[i] = -degs.iter().map(|d| d[i]).min().unwrap_or(0);
            }
            twist[0] = 1 - twist[1..].iter().sum::<i64>();
            for d in &mut degs {
                for (di, ti) in d.iter_mut().zip(&twist) {
                    *di += ti;
                }
            }
            Ok(BundleLabel { projective: true, summands: degs.iter().map(|d| format_degrees(d)).collect() })
        }
    }
}

/// Label of the orbit of cone `c`: the ray generators in increasing order.
pub fn cone_type(fan: &StackyFan, c: &[usize]) -> SplittingType {
    let mut c = c.to_vec();
    c.sort_unstable();
    SplittingType::new(c.iter().map(|&k| fan.rays[k].clone()).collect())
}

/// Splitting type over `PGL_{r+1}` of a chain with labels `a_0..a_r`
/// distributed over its components, listed from `p_+` to `p_-`.
///
/// The node after component `m` has `ℓ_j = -1` exactly for labels on
/// components `0..=m`; its class mod center is returned in coweight
/// coordinates, which is primitive and in the orbit of a fundamental coweight.
pub fn losev_manin_type(r: usize, distribution: &[Vec<usize>]) -> Result<SplittingType, Error> {
    if let Some(m) = distribution.iter().position(Vec::is_empty) {
        return Err(Error::EmptyComponent(m));
    }
    let mut seen = vec![false; r + 1];
    for &j in distribution.iter().flatten() {
        if j > r {
            return Err(Error::IndexOutOfRange { index: j, size: r + 1 });
        }
        if std::mem::replace(&mut seen[j], true) {
            return Err(Error::Precondition(format!("label a_{j} appears twice")));
        }
    }
    if let Some(j) = seen.iter().position(|s| !s) {
        return Err(Error::Precondition(format!("label a_{j} is not placed")));
    }
    let mut ell = vec![0i64; r + 1];
    let mut entries = Vec::new();
    for block in &distribution[..distribution.len().saturating_sub(1)] {
        for &j in block {
            ell[j] = -1;
        }
        let c = diag_to_coweight(&ell);
        debug_assert!(rational::is_primitive(&c));
        entries.push(c);
    }
    Ok(SplittingType::new(entries))
}

/// Ordered partitions of `{0..n}` into `blocks` nonempty blocks, sorted by
/// the block assignment of `0, 1, …` lexicographically.
pub fn ordered_set_partitions(n: usize, blocks: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if blocks == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut assign = vec![0usize; n];
    loop {
        let mut parts = vec![Vec::new(); blocks];
        for (j, &b) in assign.iter().enumerate() {
            parts[b].push(j);
        }
        if parts.iter().all(|p| !p.is_empty()) {
            out.push(parts);
        }
        // Odometer increment, last label fastest.
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            assign[pos] += 1;
            if assign[pos] < blocks {
                break;
            }
            assign[pos] = 0;
        }
    }
}

/// `GL_r` preset together with its `KGL_r` fan.
pub fn kgl(r: usize) -> Result<(RootDatum, StackyFan), Error> {
    Ok((gl(r)?, kgl_fan(r)?))
}
