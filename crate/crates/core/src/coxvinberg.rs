//! Cox data of a stacky fan and the GIT of its base change of the Vinberg
//! monoid.
//!
//! `G_β = G_m^N` acts on `A^N × S_G` through `φ_β(z) = z^β`. A stratum is
//! indexed by the set `H` of coordinates that are nonzero and by `J ⊆ Ω`;
//! `I(H)` is forced. Stability is decided by exact LPs on the cone of
//! one-parameter subgroups with a limit, ordered lexicographically by
//! `(ρ·β(λ), ξ·λ)` where `ξ` comes from a normal-fan certificate.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::fans::{convex_support, is_normal_fan, validate, weyl_fan, StackyFan};
use crate::latcone::{feasible_nonneg, linalg, snf, Feasibility, LinearSystem, Relation, VarKind};
use crate::rational::{self, dot, dot_qi, q, qvec, QVec, Q};
use crate::rootdata::RootDatum;
use crate::vinberg::{is_essential, is_interior_dominant, subsets, vinberg_face, GitStatus};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxData {
    pub fan: StackyFan,
    /// `N × r`, rows `β_j`.
    pub beta_matrix: Vec<Vec<i64>>,
    pub kernel_rank: usize,
    /// Torsion of `K_β` (invariant factors larger than one).
    pub kernel_invariant_factors: Vec<u64>,
    /// Index sets of cones; a point with zero set `S` lies in `A⁰_β` iff `S` is listed.
    pub admissible_sets: Vec<Vec<usize>>,
}

impl CoxData {
    /// Order of the finite part of `K_β`.
    pub fn kernel_order(&self) -> u64 {
        self.kernel_invariant_factors.iter().product()
    }
}

pub fn cox_data(rd: &RootDatum, fan: &StackyFan) -> Result<CoxData, Error> {
    if fan.rank != rd.rank {
        return Err(Error::DimensionMismatch { expected: rd.rank, found: fan.rank });
    }
    let rep = validate(fan);
    if !rep.valid {
        return Err(Error::InvalidFan(format!("{:?}", rep.violations)));
    }
    let beta_matrix = fan.rays.clone();
    let qrows: Vec<QVec> = beta_matrix.iter().map(|r| qvec(r)).collect();
    let kernel_rank = fan.num_rays() - linalg::rank(&qrows);
    let kernel_invariant_factors = if beta_matrix.is_empty() {
        Vec::new()
    } else {
        snf::smith_normal_form(&snf::from_i64(&beta_matrix))
            .nontrivial_factors()
            .iter()
            .map(|d| d.to_u64().expect("invariant factor fits in u64"))
            .collect()
    };
    Ok(CoxData { fan: fan.clone(), beta_matrix, kernel_rank, kernel_invariant_factors, admissible_sets: fan.cones.clone() })
}

/// `(α_i · β_j)`, an `|Ω| × N` matrix.
pub fn base_map_matrix(rd: &RootDatum, fan: &StackyFan) -> Result<Vec<Vec<i64>>, Error> {
    if !fan.is_chamber_supported(rd) {
        return Err(Error::Precondition("fan is not supported in the positive chamber".into()));
    }
    Ok(rd.simple_roots.iter().map(|a| fan.rays.iter().map(|b| rational::dot_i(a, b)).collect()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Stratum {
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    /// `(I, J)` is essential.
    pub valid: bool,
}

/// `I(H) = {i : α_i·β_j = 0 for all j ∉ H}`.
pub fn image_set(rd: &RootDatum, fan: &StackyFan, h: &[usize]) -> Vec<usize> {
    (0..rd.num_simple())
        .filter(|&i| {
            (0..fan.num_rays()).filter(|j| !h.contains(j)).all(|j| rational::dot_i(&rd.simple_roots[i], &fan.rays[j]) == 0)
        })
        .collect()
}

/// The stratum over `H` with `J = ∅`.
pub fn stratum_image(rd: &RootDatum, fan: &StackyFan, h: &[usize]) -> Result<Stratum, Error> {
    stratum(rd, fan, h, &[])
}

pub fn stratum(rd: &RootDatum, fan: &StackyFan, h: &[usize], j: &[usize]) -> Result<Stratum, Error> {
    if let Some(&k) = h.iter().find(|&&k| k >= fan.num_rays()) {
        return Err(Error::IndexOutOfRange { index: k, size: fan.num_rays() });
    }
    if let Some(&k) = j.iter().find(|&&k| k >= rd.num_simple()) {
        return Err(Error::IndexOutOfRange { index: k, size: rd.num_simple() });
    }
    let mut h = h.to_vec();
    h.sort_unstable();
    h.dedup();
    let mut j = j.to_vec();
    j.sort_unstable();
    j.dedup();
    let i = image_set(rd, fan, &h);
    let valid = is_essential(rd, &i, &j);
    Ok(Stratum { h, i, j, valid })
}

/// Result of the destabilizer search for `-α_i^∨ = Σ ℓ_j β_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Destabilizer {
    Found {
        #[serde(with = "rational::serde_qvec")]
        ell: QVec,
    },
    /// No solution; `separator·β_j >= 0` on `H`, `= 0` off `H`, `separator·(-α_i^∨) < 0`.
    Infeasible {
        #[serde(with = "rational::serde_qvec")]
        separator: QVec,
    },
}

/// `ℓ` with `-α_i^∨ = Σ ℓ_j β_j` and `ℓ_j >= 0` for `j ∈ H`.
pub fn destabilizer(rd: &RootDatum, fan: &StackyFan, i: usize, h: &[usize]) -> Result<Destabilizer, Error> {
    if i >= rd.num_simple() {
        return Err(Error::IndexOutOfRange { index: i, size: rd.num_simple() });
    }
    if image_set(rd, fan, h).contains(&i) {
        return Err(Error::IndexInImage { index: i });
    }
    let n = fan.num_rays();
    let target = rational::neg(&rd.coroot_q(i));
    // Through the wall projection: -α_i^∨ = (2/c) P_i(β_j) - (2/c) β_j.
    for j in (0..n).filter(|j| !h.contains(j)) {
        let c = rational::dot_i(&rd.simple_roots[i], &fan.rays[j]);
        if c <= 0 {
            continue;
        }
        let p = rd.wall_projection(i, &fan.ray_q(j));
        let Some((cone, coeffs)) = fan.locate(&p) else {
            continue;
        };
        let f = Q::new(BigInt::from(2), BigInt::from(c));
        let mut ell = rational::zero_vec(n);
        for (k, a) in cone.iter().zip(&coeffs) {
            ell[*k] += &f * a;
        }
        ell[j] -= &f;
        if verify_destabilizer(rd, fan, i, h, &ell) {
            return Ok(Destabilizer::Found { ell });
        }
    }
    // Direct LP: columns β_j for j ∈ H, ±β_j otherwise.
    let mut cols: Vec<(usize, i64)> = Vec::new();
    for j in 0..n {
        cols.push((j, 1));
        if !h.contains(&j) {
            cols.push((j, -1));
        }
    }
    let rows: Vec<QVec> = (0..rd.rank)
        .map(|x| cols.iter().map(|&(j, s)| q(s * fan.rays[j][x])).collect())
        .collect();
    match feasible_nonneg(&rows, &target, cols.len()) {
        Feasibility::Feasible(z) => {
            let mut ell = rational::zero_vec(n);
            for (&(j, s), v) in cols.iter().zip(&z) {
                ell[j] += q(s) * v;
            }
            if verify_destabilizer(rd, fan, i, h, &ell) {
                Ok(Destabilizer::Found { ell })
            } else {
                Err(Error::Precondition("destabilizer failed re-verification".into()))
            }
        }
        Feasibility::Infeasible(separator) => Ok(Destabilizer::Infeasible { separator }),
    }
}

/// Exact re-check of `-α_i^∨ = Σ ℓ_j β_j` and the sign constraints on `H`.
pub fn verify_destabilizer(rd: &RootDatum, fan: &StackyFan, i: usize, h: &[usize], ell: &[Q]) -> bool {
    if ell.len() != fan.num_rays() {
        return false;
    }
    let mut sum = rational::zero_vec(rd.rank);
    for (c, b) in ell.iter().zip(&fan.rays) {
        sum = rational::add(&sum, &rational::scale(c, &qvec(b)));
    }
    sum == rational::neg(&rd.coroot_q(i)) && h.iter().all(|&j| !ell[j].is_negative())
}

/// How an unstable or strictly semistable verdict is witnessed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GitWitness {
    None,
    /// `-α_i^∨ = Σ ℓ_j β_j`, the image of `λ = ℓ`.
    Destabilizer {
        index: usize,
        #[serde(with = "rational::serde_qvec")]
        ell: QVec,
    },
    /// A one-parameter subgroup of `G_β` with a limit and nonpositive weight.
    Cocharacter {
        #[serde(with = "rational::serde_qvec")]
        lambda: QVec,
        in_kernel: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxVerdict {
    pub stratum: Stratum,
    /// The zero set `{j ∉ H}` indexes a cone, i.e. the point lies in `A⁰_β`.
    pub admissible: bool,
    pub status: GitStatus,
    pub witness: GitWitness,
}

/// The linearization data fixed for a fan.
#[derive(Clone, Debug)]
pub struct Linearization {
    pub rho: QVec,
    /// `ρ'_j = ρ·β_j`.
    pub rho_pulled: QVec,
    pub xi: QVec,
}

/// Checks the hypotheses and derives `ξ` from a normal-fan certificate.
pub fn linearization(rd: &RootDatum, fan: &StackyFan, rho: &[Q]) -> Result<Linearization, Error> {
    if rho.len() != rd.rank {
        return Err(Error::DimensionMismatch { expected: rd.rank, found: rho.len() });
    }
    if !is_interior_dominant(rd, rho) {
        return Err(Error::Precondition("ρ must be interior dominant".into()));
    }
    if !fan.is_chamber_supported(rd) {
        return Err(Error::Precondition("fan is not supported in the positive chamber".into()));
    }
    convex_support(&weyl_fan(rd, fan)?)?;
    let cert = is_normal_fan(fan)?.ok_or_else(|| Error::Precondition("fan is not a normal fan".into()))?;
    let rho_pulled = fan.rays.iter().map(|b| dot_qi(rho, b)).collect();
    Ok(Linearization { rho: rho.to_vec(), rho_pulled, xi: cert.heights })
}

fn limit_system(rd: &RootDatum, fan: &StackyFan, s: &Stratum) -> LinearSystem {
    let n = fan.num_rays();
    let mut sys = LinearSystem::new(vec![VarKind::Free; n]);
    for &j in &s.h {
        let mut row = rational::zero_vec(n);
        row[j] = q(1);
        sys.add(row, Relation::Ge, q(0));
    }
    let face = vinberg_face(rd, &s.i, &s.j);
    let pulled = |g: &QVec| -> QVec { fan.rays.iter().map(|b| dot_qi(g, b)).collect() };
    for g in &face.first_factor_cone.generators {
        sys.add(pulled(g), Relation::Ge, q(0));
    }
    for l in &face.first_factor_cone.lineality {
        sys.add(pulled(l), Relation::Eq, q(0));
    }
    sys
}

/// Lexicographic Hilbert–Mumford test on the stratum `(H, J)`.
pub fn sgbeta_git_classify(rd: &RootDatum, fan: &StackyFan, s: &Stratum, lin: &Linearization) -> Result<CoxVerdict, Error> {
    if !s.valid {
        return Err(Error::NotEssential { i: s.i.clone(), j: s.j.clone() });
    }
    let n = fan.num_rays();
    let zero_set: Vec<usize> = (0..n).filter(|j| !s.h.contains(j)).collect();
    let admissible = fan.contains_cone(&zero_set);
    let base = limit_system(rd, fan, s);
    let in_kernel = |l: &QVec| -> bool {
        let mut v = rational::zero_vec(rd.rank);
        for (c, b) in l.iter().zip(&fan.rays) {
            v = rational::add(&v, &rational::scale(c, &qvec(b)));
        }
        rational::is_zero_vec(&v)
    };
    let unstable = |lambda: QVec| -> CoxVerdict {
        let witness = destabilizing_index(rd, fan, s)
            .map(|(index, ell)| GitWitness::Destabilizer { index, ell })
            .unwrap_or_else(|| GitWitness::Cocharacter { in_kernel: in_kernel(&lambda), lambda });
        CoxVerdict { stratum: s.clone(), admissible, status: GitStatus::Unstable, witness }
    };

    let mut sys = base.clone();
    sys.add(lin.rho_pulled.clone(), Relation::Eq, q(-1));
    if let Some(lambda) = sys.solve() {
        return Ok(unstable(lambda));
    }
    let mut sys = base.clone();
    sys.add(lin.rho_pulled.clone(), Relation::Eq, q(0));
    let mut with_xi = sys.clone();
    with_xi.add(lin.xi.clone(), Relation::Eq, q(-1));
    if let Some(lambda) = with_xi.solve() {
        return Ok(unstable(lambda));
    }
    sys.add(lin.xi.clone(), Relation::Eq, q(0));
    for k in 0..n {
        for sign in [1, -1] {
            let mut probe = sys.clone();
            let mut row = rational::zero_vec(n);
            row[k] = q(1);
            probe.add(row, Relation::Eq, q(sign));
            if let Some(lambda) = probe.solve() {
                let witness = GitWitness::Cocharacter { in_kernel: in_kernel(&lambda), lambda };
                return Ok(CoxVerdict { stratum: s.clone(), admissible, status: GitStatus::StrictlySemistable, witness });
            }
        }
    }
    Ok(CoxVerdict { stratum: s.clone(), admissible, status: GitStatus::Stable, witness: GitWitness::None })
}

/// The least `i ∉ I ∪ J` with a verified destabilizer, when `J ≠ Ω`.
fn destabilizing_index(rd: &RootDatum, fan: &StackyFan, s: &Stratum) -> Option<(usize, QVec)> {
    (0..rd.num_simple())
        .filter(|k| !s.i.contains(k) && !s.j.contains(k))
        .find_map(|k| match destabilizer(rd, fan, k, &s.h) {
            Ok(Destabilizer::Found { ell }) => Some((k, ell)),
            _ => None,
        })
}

/// Classifies every valid stratum `(H, J)`, ordered by `H` then `J`.
pub fn classify_all(rd: &RootDatum, fan: &StackyFan, rho: &[Q]) -> Result<Vec<CoxVerdict>, Error> {
    let lin = linearization(rd, fan, rho)?;
    let mut out = Vec::new();
    for h in subsets(fan.num_rays()) {
        for j in subsets(rd.num_simple()) {
            let s = stratum(rd, fan, &h, &j)?;
            if s.valid {
                out.push(sgbeta_git_classify(rd, fan, &s, &lin)?);
            }
        }
    }
    Ok(out)
}

/// The predicted stable set: `A⁰_β` membership and `J = Ω`.
pub fn predicted_stable(rd: &RootDatum, v: &CoxVerdict) -> bool {
    v.admissible && v.stratum.j.len() == rd.num_simple()
}

/// `ρ·β(λ)` and `ξ·λ` for a cocharacter of `G_β`.
pub fn weights_of(lin: &Linearization, lambda: &[Q]) -> (Q, Q) {
    (dot(&lin.rho_pulled, lambda), dot(&lin.xi, lambda))
}
