//! Split reductive root data in fixed dual bases of `V` and `Λ`.
//!
//! Characters and cocharacters are coordinate vectors in dual bases, so the
//! pairing is the dot product. Dynkin nodes `Ω` are numbered from 0.

mod json;
mod presets;
mod weyl;

use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::latcone::{linalg, RationalCone};
use crate::rational::{self, dot, qvec, QVec, Q};
use crate::Error;

pub use json::RootDatumJson;
pub use presets::{gl, pgl, preset, preset_names, sl};
pub use weyl::{
    common_chamber, common_chamber_by_roots, default_weyl_cap, dominant_representative,
    weyl_group_elements, WeylElement, WEYL_CAP_ENV,
};

/// Which multidegree label scheme applies (see `moduli::bundle_label`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelScheme {
    None,
    /// `GL_r` in diagonal-exponent coordinates.
    Gl,
    /// `PGL_{r+1}` in fundamental-coweight coordinates.
    Pgl,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RootDatum {
    pub name: String,
    pub rank: usize,
    pub character_basis_labels: Vec<String>,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    #[serde(with = "rational::serde_qmat")]
    pub fundamental_weights: Vec<QVec>,
    #[serde(with = "rational::serde_qmat")]
    pub fundamental_coweights: Vec<QVec>,
    pub dynkin_edges: Vec<(usize, usize)>,
    #[serde(with = "rational::serde_qmat")]
    pub weyl_invariant_characters: Vec<QVec>,
    pub label_scheme: LabelScheme,
    #[serde(skip)]
    roots_cache: OnceLock<Vec<Vec<i64>>>,
    #[serde(skip)]
    weyl_cache: OnceLock<Result<Vec<WeylElement>, Error>>,
}

impl Clone for RootDatum {
    fn clone(&self) -> Self {
        RootDatum {
            name: self.name.clone(),
            rank: self.rank,
            character_basis_labels: self.character_basis_labels.clone(),
            simple_roots: self.simple_roots.clone(),
            simple_coroots: self.simple_coroots.clone(),
            fundamental_weights: self.fundamental_weights.clone(),
            fundamental_coweights: self.fundamental_coweights.clone(),
            dynkin_edges: self.dynkin_edges.clone(),
            weyl_invariant_characters: self.weyl_invariant_characters.clone(),
            label_scheme: self.label_scheme,
            roots_cache: self.roots_cache.clone(),
            weyl_cache: self.weyl_cache.clone(),
        }
    }
}

impl PartialEq for RootDatum {
    fn eq(&self, o: &Self) -> bool {
        self.rank == o.rank
            && self.simple_roots == o.simple_roots
            && self.simple_coroots == o.simple_coroots
            && self.fundamental_weights == o.fundamental_weights
            && self.fundamental_coweights == o.fundamental_coweights
            && self.dynkin_edges == o.dynkin_edges
            && self.weyl_invariant_characters == o.weyl_invariant_characters
    }
}

/// `⟨χ, λ⟩` for a character and a cocharacter given in the dual bases.
pub fn pairing(chi: &[Q], lambda: &[Q]) -> Result<Q, Error> {
    if chi.len() != lambda.len() {
        return Err(Error::DimensionMismatch { expected: chi.len(), found: lambda.len() });
    }
    Ok(dot(chi, lambda))
}

impl RootDatum {
    /// Builds a datum and checks every structural invariant.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        rank: usize,
        character_basis_labels: Vec<String>,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
        fundamental_weights: Vec<QVec>,
        fundamental_coweights: Vec<QVec>,
        weyl_invariant_characters: Vec<QVec>,
        label_scheme: LabelScheme,
    ) -> Result<Self, Error> {
        let n = simple_roots.len();
        let mut rd = RootDatum {
            name: name.into(),
            rank,
            character_basis_labels,
            simple_roots,
            simple_coroots,
            fundamental_weights,
            fundamental_coweights,
            dynkin_edges: Vec::new(),
            weyl_invariant_characters,
            label_scheme,
            roots_cache: OnceLock::new(),
            weyl_cache: OnceLock::new(),
        };
        rd.dynkin_edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| rd.cartan(i, j) != 0)
            .collect();
        rd.check()?;
        Ok(rd)
    }

    fn check(&self) -> Result<(), Error> {
        let bad = |m: String| Err(Error::InvalidRootDatum(m));
        let n = self.simple_roots.len();
        if self.rank == 0 {
            return bad("rank must be positive".into());
        }
        if self.character_basis_labels.len() != self.rank {
            return bad("one basis label per coordinate is required".into());
        }
        for (what, len) in [
            ("simple_coroots", self.simple_coroots.len()),
            ("fundamental_weights", self.fundamental_weights.len()),
            ("fundamental_coweights", self.fundamental_coweights.len()),
        ] {
            if len != n {
                return bad(format!("{what} has {len} entries, expected {n}"));
            }
        }
        let lens = self.simple_roots.iter().chain(&self.simple_coroots).map(Vec::len);
        let qlens = self
            .fundamental_weights
            .iter()
            .chain(&self.fundamental_coweights)
            .chain(&self.weyl_invariant_characters)
            .map(Vec::len);
        if let Some(l) = lens.chain(qlens).find(|&l| l != self.rank) {
            return Err(Error::DimensionMismatch { expected: self.rank, found: l });
        }
        for i in 0..n {
            for j in 0..n {
                let c = self.cartan(i, j);
                if i == j && c != 2 {
                    return bad(format!("<alpha_{i}, coroot_{i}> = {c}, expected 2"));
                }
                if i != j && c > 0 {
                    return bad(format!("positive off-diagonal Cartan entry at ({i},{j})"));
                }
                if i != j && (c == 0) != (self.cartan(j, i) == 0) {
                    return bad(format!("Cartan zero pattern not symmetric at ({i},{j})"));
                }
                let d = if i == j { 1 } else { 0 };
                if dot(&self.fundamental_weights[i], &self.coroot_q(j)) != rational::q(d) {
                    return bad(format!("<varpi_{i}, coroot_{j}> != {d}"));
                }
                if dot(&self.root_q(i), &self.fundamental_coweights[j]) != rational::q(d) {
                    return bad(format!("<alpha_{i}, coweight_{j}> != {d}"));
                }
            }
        }
        for z in &self.weyl_invariant_characters {
            if self.simple_coroots.iter().any(|c| !rational::dot_qi(z, c).is_zero()) {
                return bad("a listed invariant character is not W-fixed".into());
            }
        }
        Ok(())
    }

    /// Number of Dynkin nodes `|Ω|`.
    pub fn num_simple(&self) -> usize {
        self.simple_roots.len()
    }

    /// `⟨α_i, α_j^∨⟩`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        rational::dot_i(&self.simple_roots[i], &self.simple_coroots[j])
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.num_simple();
        (0..n).map(|i| (0..n).map(|j| self.cartan(i, j)).collect()).collect()
    }

    pub fn root_q(&self, i: usize) -> QVec {
        qvec(&self.simple_roots[i])
    }

    pub fn coroot_q(&self, i: usize) -> QVec {
        qvec(&self.simple_coroots[i])
    }

    pub fn is_semisimple(&self) -> bool {
        self.num_simple() == self.rank
    }

    /// All roots `Φ` in `V`: positive roots by height, then their negatives.
    pub fn roots(&self) -> &[Vec<i64>] {
        self.roots_cache.get_or_init(|| {
            let pos = self.positive_root_coefficients();
            let mut out: Vec<Vec<i64>> = pos.iter().map(|c| self.combine_roots(c)).collect();
            let neg: Vec<Vec<i64>> = out.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
            out.extend(neg);
            out
        })
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        let all = self.roots();
        &all[..all.len() / 2]
    }

    /// `dim g = rank + |Φ|`.
    pub fn dim_g(&self) -> usize {
        self.rank + self.roots().len()
    }

    fn combine_roots(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        for (c, a) in coeffs.iter().zip(&self.simple_roots) {
            for (x, y) in v.iter_mut().zip(a) {
                *x += c * y;
            }
        }
        v
    }

    /// Positive roots as coefficient vectors over the simple roots, via root strings.
    fn positive_root_coefficients(&self) -> Vec<Vec<i64>> {
        let n = self.num_simple();
        let cm = self.cartan_matrix();
        let unit = |i: usize| (0..n).map(|k| i64::from(k == i)).collect::<Vec<i64>>();
        let mut roots: Vec<Vec<i64>> = (0..n).map(unit).collect();
        let mut layer = roots.clone();
        while !layer.is_empty() {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    // p = how far the α_i-string extends downward from β.
                    let mut p = 0;
                    loop {
                        let mut down = beta.clone();
                        down[i] -= p + 1;
                        if down.iter().all(|&x| x >= 0) && roots.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pair: i64 = (0..n).map(|k| beta[k] * cm[k][i]).sum();
                    if p - pair > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !roots.contains(&up) && !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            next.sort();
            roots.extend(next.iter().cloned());
            layer = next;
        }
        roots
    }

    /// `⟨α, λ⟩ >= 0` for every simple root.
    pub fn is_dominant(&self, lambda: &[Q]) -> bool {
        self.simple_roots.iter().all(|a| !rational::dot_qi(lambda, a).is_negative())
    }

    pub fn is_dominant_i(&self, lambda: &[i64]) -> bool {
        self.simple_roots.iter().all(|a| rational::dot_i(a, lambda) >= 0)
    }

    /// W-fixed cocharacters: the annihilator of all roots in `Λ_Q`.
    pub fn central_cocharacters(&self) -> Vec<QVec> {
        let rows: Vec<QVec> = self.simple_roots.iter().map(|a| qvec(a)).collect();
        linalg::nullspace(&rows, self.rank)
    }

    /// The positive Weyl chamber `Λ_Q^+` as a cone.
    pub fn chamber_cone(&self) -> RationalCone {
        RationalCone {
            ambient_dim: self.rank,
            generators: self.fundamental_coweights.clone(),
            lineality: self.central_cocharacters(),
        }
    }

    /// Connected components of the Dynkin subgraph on `nodes`.
    pub fn dynkin_components(&self, nodes: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.num_simple()];
        let mut comps = Vec::new();
        for &start in nodes {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let u = comp[k];
                for &(a, b) in &self.dynkin_edges {
                    let v = if a == u { b } else if b == u { a } else { continue };
                    if nodes.contains(&v) && !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Weyl group with the default cap, cached.
    pub fn weyl_group(&self) -> Result<&[WeylElement], Error> {
        self.weyl_cache
            .get_or_init(|| weyl_group_elements(self, default_weyl_cap()))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// `s_i(λ) = λ - ⟨α_i, λ⟩ α_i^∨` on a rational cocharacter.
    pub fn reflect_cochar(&self, i: usize, lambda: &[Q]) -> QVec {
        let c = rational::dot_qi(lambda, &self.simple_roots[i]);
        rational::sub(lambda, &rational::scale(&c, &self.coroot_q(i)))
    }

    /// Wall projection `P_i(x) = x - (⟨α_i, x⟩ / 2) α_i^∨`.
    pub fn wall_projection(&self, i: usize, x: &[Q]) -> QVec {
        let c = rational::dot_qi(x, &self.simple_roots[i]) / rational::q(2);
        rational::sub(x, &rational::scale(&c, &self.coroot_q(i)))
    }
}
