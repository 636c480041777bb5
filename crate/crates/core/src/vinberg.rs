//! Polyhedral shadow of the Vinberg monoid: the cones `K`, `K⁺`, faces
//! `F_{I,J}`, essential pairs and Hilbert–Mumford classification.
//!
//! Index sets `I, J ⊆ Ω` are sorted lists of 0-based Dynkin nodes.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::latcone::{
    cone_member, dual_cone, positivity_witness, strict_positive_on_cone, Membership,
    PositivityClass, RationalCone,
};
use crate::rational::{self, dot, QVec, Q};
use crate::rootdata::RootDatum;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GitStatus {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl From<PositivityClass> for GitStatus {
    fn from(p: PositivityClass) -> Self {
        match p {
            PositivityClass::Strict => GitStatus::Stable,
            PositivityClass::NonnegOnly => GitStatus::StrictlySemistable,
            PositivityClass::Fails => GitStatus::Unstable,
        }
    }
}

impl std::fmt::Display for GitStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GitStatus::Stable => "stable",
            GitStatus::StrictlySemistable => "strictly_semistable",
            GitStatus::Unstable => "unstable",
        })
    }
}

/// A classification together with a one-parameter subgroup witnessing it:
/// destabilizing (`ρ·λ < 0`) for unstable, a kernel direction for strictly
/// semistable, none for stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GitVerdict {
    pub status: GitStatus,
    #[serde(serialize_with = "ser_opt_qvec")]
    pub witness: Option<QVec>,
}

pub(crate) fn ser_opt_qvec<S: serde::Serializer>(v: &Option<QVec>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => rational::serde_qvec::serialize(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EssentialPair {
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub essential: bool,
}

/// No connected component of the Dynkin subgraph on `Ω ∖ J` lies inside `I`.
pub fn is_essential(rd: &RootDatum, i: &[usize], j: &[usize]) -> bool {
    let rest: Vec<usize> = (0..rd.num_simple()).filter(|k| !j.contains(k)).collect();
    rd.dynkin_components(&rest).iter().all(|c| !c.iter().all(|k| i.contains(k)))
}

/// All subsets of `0..n`, sorted lexicographically.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|m| (0..n).filter(|&k| m >> k & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

/// Every pair `(I, J)`, in lexicographic order, with its essential flag.
pub fn essential_pairs(rd: &RootDatum) -> Vec<EssentialPair> {
    let subs = subsets(rd.num_simple());
    let mut out = Vec::with_capacity(subs.len() * subs.len());
    for i in &subs {
        for j in &subs {
            out.push(EssentialPair { i: i.clone(), j: j.clone(), essential: is_essential(rd, i, j) });
        }
    }
    out
}

fn pair_vec(a: &[Q], b: &[Q]) -> QVec {
    a.iter().chain(b).cloned().collect()
}

/// `K⁺ = ⟨(α_i, 0), (ϖ_j, ϖ_j)⟩ + span{(z, z)}` in `V_Q ⊕ V_Q`.
pub fn vinberg_cone_kplus(rd: &RootDatum) -> RationalCone {
    let all: Vec<usize> = (0..rd.num_simple()).collect();
    vinberg_face(rd, &all, &all).cone()
}

/// `K = ⟨(α_i, 0)⟩ + Δ`, with the diagonal as lineality.
pub fn vinberg_cone_k(rd: &RootDatum) -> RationalCone {
    let r = rd.rank;
    let zero = rational::zero_vec(r);
    let generators = (0..rd.num_simple()).map(|i| pair_vec(&rd.root_q(i), &zero)).collect();
    let lineality = (0..r)
        .map(|k| {
            let e: QVec = (0..r).map(|x| rational::q(i64::from(x == k))).collect();
            pair_vec(&e, &e)
        })
        .collect();
    RationalCone { ambient_dim: 2 * r, generators, lineality }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VinbergFace {
    pub pair: EssentialPair,
    #[serde(with = "rational::serde_qmat")]
    pub generators_di: Vec<QVec>,
    #[serde(with = "rational::serde_qmat")]
    pub generators_cj: Vec<QVec>,
    #[serde(with = "rational::serde_qmat")]
    pub lineality: Vec<QVec>,
    /// `D_I + C_J + span(z)` in `V_Q`.
    pub first_factor_cone: RationalCone,
}

/// The face `F_{I,J}`; built for any pair, essential or not.
pub fn vinberg_face(rd: &RootDatum, i: &[usize], j: &[usize]) -> VinbergFace {
    let zero = rational::zero_vec(rd.rank);
    let generators_di = i.iter().map(|&k| pair_vec(&rd.root_q(k), &zero)).collect();
    let generators_cj = j.iter().map(|&k| pair_vec(&rd.fundamental_weights[k], &rd.fundamental_weights[k])).collect();
    let lineality = rd.weyl_invariant_characters.iter().map(|z| pair_vec(z, z)).collect();
    let mut gens: Vec<QVec> = i.iter().map(|&k| rd.root_q(k)).collect();
    gens.extend(j.iter().map(|&k| rd.fundamental_weights[k].clone()));
    let first_factor_cone = RationalCone {
        ambient_dim: rd.rank,
        generators: gens,
        lineality: rd.weyl_invariant_characters.clone(),
    };
    VinbergFace {
        pair: EssentialPair { i: i.to_vec(), j: j.to_vec(), essential: is_essential(rd, i, j) },
        generators_di,
        generators_cj,
        lineality,
        first_factor_cone,
    }
}

impl VinbergFace {
    /// The face as a cone in `V_Q ⊕ V_Q`.
    pub fn cone(&self) -> RationalCone {
        let mut generators = self.generators_di.clone();
        generators.extend(self.generators_cj.iter().cloned());
        let dim = 2 * self.first_factor_cone.ambient_dim;
        RationalCone { ambient_dim: dim, generators, lineality: self.lineality.clone() }
    }

    /// Membership of `(μ, ν)`: `μ - ν ∈ D_I` and `ν ∈ C_J + Δ^W`.
    pub fn contains_pair(&self, rd: &RootDatum, mu: &[Q], nu: &[Q]) -> bool {
        let d_i = RationalCone {
            ambient_dim: rd.rank,
            generators: self.pair.i.iter().map(|&k| rd.root_q(k)).collect(),
            lineality: Vec::new(),
        };
        let c_j = RationalCone {
            ambient_dim: rd.rank,
            generators: self.pair.j.iter().map(|&k| rd.fundamental_weights[k].clone()).collect(),
            lineality: rd.weyl_invariant_characters.clone(),
        };
        d_i.contains(&rational::sub(mu, nu)) && c_j.contains(nu)
    }
}

/// `lim_{t→0} λ(t)·x` exists on the face: `μ·λ >= 0` on generators and
/// `= 0` on the lineality.
pub fn limit_exists(face: &VinbergFace, lambda: &[Q]) -> bool {
    let c = &face.first_factor_cone;
    c.generators.iter().all(|g| !dot(g, lambda).is_negative()) && c.lineality.iter().all(|l| dot(l, lambda).is_zero())
}

fn classify(cone: &RationalCone, rho: &[Q]) -> Result<GitVerdict, Error> {
    if rho.len() != cone.ambient_dim {
        return Err(Error::DimensionMismatch { expected: cone.ambient_dim, found: rho.len() });
    }
    let dual = dual_cone(cone)?;
    let status: GitStatus = strict_positive_on_cone(&dual, rho).into();
    let witness = match status {
        GitStatus::Stable => None,
        _ => positivity_witness(&dual, rho),
    };
    Ok(GitVerdict { status, witness })
}

/// Hilbert–Mumford classification of a point whose torus weights are `weights`.
pub fn torus_git(weights: &[QVec], rho: &[Q]) -> Result<GitVerdict, Error> {
    let cone = RationalCone::new(rho.len(), weights.to_vec(), Vec::new())?;
    classify(&cone, rho)
}

/// Classification of the orbit `O_{I,J}` under the character `ρ` of `Z`.
///
/// Unstable verdicts prefer the witness `-α_i^∨` for the least
/// `i ∉ I ∪ J` when it destabilizes.
pub fn orbit_git_status(rd: &RootDatum, pair: &EssentialPair, rho: &[Q]) -> Result<GitVerdict, Error> {
    if !is_essential(rd, &pair.i, &pair.j) {
        return Err(Error::NotEssential { i: pair.i.clone(), j: pair.j.clone() });
    }
    let face = vinberg_face(rd, &pair.i, &pair.j);
    let mut verdict = classify(&face.first_factor_cone, rho)?;
    if verdict.status == GitStatus::Unstable {
        let preferred = (0..rd.num_simple())
            .filter(|k| !pair.i.contains(k) && !pair.j.contains(k))
            .map(|k| rational::neg(&rd.coroot_q(k)))
            .find(|l| verify_destabilizing(&face, rho, l));
        if let Some(l) = preferred {
            verdict.witness = Some(l);
        }
    }
    Ok(verdict)
}

/// `λ` has a limit on the face and `ρ·λ < 0`.
pub fn verify_destabilizing(face: &VinbergFace, rho: &[Q], lambda: &[Q]) -> bool {
    limit_exists(face, lambda) && dot(rho, lambda).is_negative()
}

/// `F_{I,J} ⊆ F_{I',J'}` by membership of every generator.
pub fn face_contained(small: &VinbergFace, big: &VinbergFace) -> bool {
    let c = big.cone();
    let s = small.cone();
    s.generators.iter().chain(&s.lineality).all(|g| matches!(cone_member(&c, g), Ok(Membership::Member { .. })))
}

/// `ρ = Σ ϖ_j`, the standard interior dominant character.
pub fn default_rho(rd: &RootDatum) -> QVec {
    let mut rho = rational::zero_vec(rd.rank);
    for w in &rd.fundamental_weights {
        rho = rational::add(&rho, w);
    }
    rho
}

/// `⟨ρ, α_i^∨⟩ > 0` for all `i`.
pub fn is_interior_dominant(rd: &RootDatum, rho: &[Q]) -> bool {
    rd.simple_coroots.iter().all(|c| rational::dot_qi(rho, c).is_positive())
}
