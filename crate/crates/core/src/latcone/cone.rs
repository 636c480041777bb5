use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lp::{feasible_nonneg, Feasibility};
use crate::rational::{self, dot, is_zero_vec, serde_qmat, QVec, Q};
use crate::Error;

/// `<generators> + span(lineality)` in `Q^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCone {
    pub ambient_dim: usize,
    #[serde(with = "serde_qmat")]
    pub generators: Vec<QVec>,
    #[serde(with = "serde_qmat")]
    pub lineality: Vec<QVec>,
}

impl RationalCone {
    pub fn new(ambient_dim: usize, generators: Vec<QVec>, lineality: Vec<QVec>) -> Result<Self, Error> {
        for v in generators.iter().chain(&lineality) {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
        }
        // Zero vectors add nothing to the span; drop them.
        let generators = generators.into_iter().filter(|g| !is_zero_vec(g)).collect();
        let lineality = lineality.into_iter().filter(|g| !is_zero_vec(g)).collect();
        Ok(RationalCone { ambient_dim, generators, lineality })
    }

    pub fn from_ints(ambient_dim: usize, generators: &[Vec<i64>]) -> Result<Self, Error> {
        Self::new(ambient_dim, generators.iter().map(|g| rational::qvec(g)).collect(), Vec::new())
    }

    pub fn zero(ambient_dim: usize) -> Self {
        RationalCone { ambient_dim, generators: Vec::new(), lineality: Vec::new() }
    }

    /// The whole space `Q^d`.
    pub fn full(ambient_dim: usize) -> Self {
        RationalCone { ambient_dim, generators: Vec::new(), lineality: unit_vectors(ambient_dim) }
    }

    pub fn orthant(ambient_dim: usize) -> Self {
        RationalCone { ambient_dim, generators: unit_vectors(ambient_dim), lineality: Vec::new() }
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        matches!(cone_member(self, x), Ok(Membership::Member { .. }))
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        let all: Vec<QVec> = self.generators.iter().chain(&self.lineality).cloned().collect();
        super::linalg::rank(&all)
    }
}

fn unit_vectors(d: usize) -> Vec<QVec> {
    (0..d)
        .map(|i| {
            let mut v = rational::zero_vec(d);
            v[i] = Q::from_integer(1.into());
            v
        })
        .collect()
}

/// Outcome of an exact cone membership query.
#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    /// `x = sum generator_coeffs[k] * g_k + sum lineality_coeffs[k] * l_k`, `generator_coeffs >= 0`.
    Member { generator_coeffs: QVec, lineality_coeffs: QVec },
    /// `separator·g >= 0`, `separator·l = 0`, `separator·x < 0`.
    NotMember { separator: QVec },
}

/// Exact membership test with a certificate either way.
pub fn cone_member(cone: &RationalCone, x: &[Q]) -> Result<Membership, Error> {
    let d = cone.ambient_dim;
    if x.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: x.len() });
    }
    let ng = cone.generators.len();
    let nl = cone.lineality.len();
    let ncols = ng + 2 * nl;
    let rows: Vec<QVec> = (0..d)
        .map(|i| {
            let mut row = Vec::with_capacity(ncols);
            row.extend(cone.generators.iter().map(|g| g[i].clone()));
            row.extend(cone.lineality.iter().map(|l| l[i].clone()));
            row.extend(cone.lineality.iter().map(|l| -l[i].clone()));
            row
        })
        .collect();
    Ok(match feasible_nonneg(&rows, x, ncols) {
        Feasibility::Feasible(c) => {
            let generator_coeffs = c[..ng].to_vec();
            let lineality_coeffs = (0..nl).map(|k| &c[ng + k] - &c[ng + nl + k]).collect();
            Membership::Member { generator_coeffs, lineality_coeffs }
        }
        Feasibility::Infeasible(separator) => Membership::NotMember { separator },
    })
}

/// Re-checks a membership certificate against the cone and the point.
pub fn verify_membership(cone: &RationalCone, x: &[Q], m: &Membership) -> bool {
    match m {
        Membership::Member { generator_coeffs, lineality_coeffs } => {
            if generator_coeffs.iter().any(Signed::is_negative) {
                return false;
            }
            let mut acc = rational::zero_vec(cone.ambient_dim);
            for (c, g) in generator_coeffs.iter().zip(&cone.generators) {
                acc = rational::add(&acc, &rational::scale(c, g));
            }
            for (c, l) in lineality_coeffs.iter().zip(&cone.lineality) {
                acc = rational::add(&acc, &rational::scale(c, l));
            }
            acc == x
        }
        Membership::NotMember { separator } => {
            dot(separator, x).is_negative()
                && cone.generators.iter().all(|g| !dot(separator, g).is_negative())
                && cone.lineality.iter().all(|l| dot(separator, l).is_zero())
        }
    }
}

/// Sign behaviour of a functional on a cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PositivityClass {
    /// `f(x) > 0` for every nonzero `x` in the cone (vacuous for `{0}`).
    Strict,
    /// `f >= 0` on the cone with a nonzero kernel direction.
    NonnegOnly,
    /// `f(x) < 0` somewhere on the cone.
    Fails,
}

/// Classifies `f` on `cone`. Decided on generators and lineality alone.
pub fn strict_positive_on_cone(cone: &RationalCone, f: &[Q]) -> PositivityClass {
    let mut any_zero = false;
    for l in &cone.lineality {
        if !dot(f, l).is_zero() {
            return PositivityClass::Fails;
        }
        any_zero = true;
    }
    for g in &cone.generators {
        let v = dot(f, g);
        if v.is_negative() {
            return PositivityClass::Fails;
        }
        if v.is_zero() {
            any_zero = true;
        }
    }
    if any_zero {
        PositivityClass::NonnegOnly
    } else {
        PositivityClass::Strict
    }
}

/// A direction of the cone on which `f` is negative (or zero, for
/// [`PositivityClass::NonnegOnly`]); `None` when the class is strict.
pub fn positivity_witness(cone: &RationalCone, f: &[Q]) -> Option<QVec> {
    for l in &cone.lineality {
        let v = dot(f, l);
        if v.is_positive() {
            return Some(rational::neg(l));
        }
        if v.is_negative() {
            return Some(l.clone());
        }
    }
    let mut zero_dir = cone.lineality.first().cloned();
    for g in &cone.generators {
        let v = dot(f, g);
        if v.is_negative() {
            return Some(g.clone());
        }
        if v.is_zero() && zero_dir.is_none() {
            zero_dir = Some(g.clone());
        }
    }
    zero_dir
}
