//! Weyl group enumeration and chamber searches.

use std::collections::{HashSet, VecDeque};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::RootDatum;
use crate::rational::{self, QVec, Q};
use crate::Error;

pub const WEYL_CAP_ENV: &str = "CHAMBERFORGE_WEYL_CAP";
const DEFAULT_CAP: usize = 2000;

/// Cap on `|W|`, overridable through `CHAMBERFORGE_WEYL_CAP`.
pub fn default_weyl_cap() -> usize {
    std::env::var(WEYL_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&c: &usize| c > 0)
        .unwrap_or(DEFAULT_CAP)
}

/// `w = s_{word[0]} ⋯ s_{word[k-1]}`; `matrix` acts on `Λ` (columns),
/// `char_matrix` on `V`, and the two are contragredient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
    #[serde(skip_serializing, default)]
    pub char_matrix: Vec<Vec<i64>>,
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect())
        .collect()
}

fn identity(r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement { word: Vec::new(), matrix: identity(rank), char_matrix: identity(rank) }
    }

    pub fn simple(rd: &RootDatum, i: usize) -> Self {
        let r = rd.rank;
        let a = &rd.simple_roots[i];
        let c = &rd.simple_coroots[i];
        let matrix = (0..r)
            .map(|x| (0..r).map(|y| i64::from(x == y) - c[x] * a[y]).collect())
            .collect();
        let char_matrix = (0..r)
            .map(|x| (0..r).map(|y| i64::from(x == y) - a[x] * c[y]).collect())
            .collect();
        WeylElement { word: vec![i], matrix, char_matrix }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity(self.matrix.len())
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend(&other.word);
        WeylElement {
            word,
            matrix: mat_mul(&self.matrix, &other.matrix),
            char_matrix: mat_mul(&self.char_matrix, &other.char_matrix),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let t = |m: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            let r = m.len();
            (0..r).map(|i| (0..r).map(|j| m[j][i]).collect()).collect()
        };
        // Contragredience: the Λ-inverse is the transpose of the V-matrix.
        WeylElement {
            word: self.word.iter().rev().copied().collect(),
            matrix: t(&self.char_matrix),
            char_matrix: t(&self.matrix),
        }
    }

    pub fn act(&self, lambda: &[i64]) -> Vec<i64> {
        self.matrix.iter().map(|row| rational::dot_i(row, lambda)).collect()
    }

    pub fn act_q(&self, lambda: &[Q]) -> QVec {
        self.matrix.iter().map(|row| rational::dot_qi(lambda, row)).collect()
    }

    pub fn act_char(&self, chi: &[i64]) -> Vec<i64> {
        self.char_matrix.iter().map(|row| rational::dot_i(row, chi)).collect()
    }

    pub fn act_char_q(&self, chi: &[Q]) -> QVec {
        self.char_matrix.iter().map(|row| rational::dot_qi(chi, row)).collect()
    }
}

/// All of `W`, breadth first from the identity (so words are reduced).
pub fn weyl_group_elements(rd: &RootDatum, cap: usize) -> Result<Vec<WeylElement>, Error> {
    let gens: Vec<WeylElement> = (0..rd.num_simple()).map(|i| WeylElement::simple(rd, i)).collect();
    let id = WeylElement::identity(rd.rank);
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::from([id.matrix.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in &gens {
            let h = s.compose(&g);
            if seen.insert(h.matrix.clone()) {
                if out.len() >= cap {
                    return Err(Error::WeylCapExceeded { cap, partial: out.len() });
                }
                out.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(out)
}

/// `(w, wλ)` with `wλ` dominant, by repeatedly reflecting in the least
/// simple root that pairs negatively.
pub fn dominant_representative(rd: &RootDatum, lambda: &[Q]) -> (WeylElement, QVec) {
    let mut w = WeylElement::identity(rd.rank);
    let mut x = lambda.to_vec();
    while let Some(i) =
        (0..rd.num_simple()).find(|&i| rational::dot_qi(&x, &rd.simple_roots[i]).is_negative())
    {
        x = rd.reflect_cochar(i, &x);
        w = WeylElement::simple(rd, i).compose(&w);
    }
    (w, x)
}

/// The first `w` (breadth-first order) with every `wβ_k` dominant.
pub fn common_chamber(rd: &RootDatum, beta: &[Vec<i64>]) -> Result<Option<WeylElement>, Error> {
    for b in beta {
        if b.len() != rd.rank {
            return Err(Error::DimensionMismatch { expected: rd.rank, found: b.len() });
        }
    }
    let w = rd.weyl_group()?;
    Ok(w.iter().find(|w| beta.iter().all(|b| rd.is_dominant_i(&w.act(b)))).cloned())
}

/// A common chamber exists iff no root pairs with opposite signs on two entries.
pub fn common_chamber_by_roots(rd: &RootDatum, beta: &[Vec<i64>]) -> bool {
    rd.roots().iter().all(|a| {
        let pos = beta.iter().any(|b| rational::dot_i(a, b) > 0);
        let neg = beta.iter().any(|b| rational::dot_i(a, b) < 0);
        !(pos && neg)
    })
}
