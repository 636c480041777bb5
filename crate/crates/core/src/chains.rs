//! Equivariant line bundles on the standard chain `C_n` and the invariants of
//! splitting types.
//!
//! Weights `(b_0, …, b_{n+1})` are read from `p_+` to `p_-`; `β_1` is the node
//! next to the `p_+` component.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};

use crate::latcone::{linalg, snf};
use crate::rational::{dot_i, qvec};
use crate::rootdata::{common_chamber, RootDatum};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EquivariantLineBundle {
    pub weights: Vec<i64>,
}

impl EquivariantLineBundle {
    pub fn new(weights: Vec<i64>) -> Result<Self, Error> {
        if weights.len() < 2 {
            return Err(Error::Precondition("a line bundle on C_n needs at least two weights".into()));
        }
        Ok(EquivariantLineBundle { weights })
    }

    /// Number of nodes `n`.
    pub fn nodes(&self) -> usize {
        self.weights.len() - 2
    }

    pub fn multidegree(&self) -> Vec<i64> {
        multidegree(&self.weights)
    }
}

/// `β = (β_1, …, β_n)`, cocharacters at the nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct SplittingType {
    pub entries: Vec<Vec<i64>>,
}

impl SplittingType {
    pub fn new(entries: Vec<Vec<i64>>) -> Self {
        SplittingType { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn check_rank(&self, rank: usize) -> Result<(), Error> {
        match self.entries.iter().find(|b| b.len() != rank) {
            Some(b) => Err(Error::DimensionMismatch { expected: rank, found: b.len() }),
            None => Ok(()),
        }
    }
}

/// `d_i = b_i - b_{i+1}`.
pub fn multidegree(weights: &[i64]) -> Vec<i64> {
    weights.windows(2).map(|w| w[0] - w[1]).collect()
}

/// `ω = O(-1|0|…|0|1)` on `C_n`.
pub fn dualizing_sheaf(n: usize) -> EquivariantLineBundle {
    let mut w = vec![0; n + 2];
    w[0] = -1;
    w[n + 1] = 1;
    EquivariantLineBundle { weights: w }
}

/// `dim H^0([C_n/G_m], L)` by counting maximal supports `i..=j`
/// (1-based components) of invariant sections.
pub fn invariant_h0(weights: &[i64]) -> usize {
    let b = weights;
    let n1 = b.len() - 1; // n + 1 components
    let mut count = 0;
    for i in 1..=n1 {
        let left_ok = b[i - 1] > 0 || (i == 1 && b[0] == 0);
        if !left_ok {
            continue;
        }
        for j in i..=n1 {
            if (i..j).any(|k| b[k] != 0) {
                break;
            }
            if b[j] < 0 || (j == n1 && b[j] == 0) {
                count += 1;
            }
        }
    }
    count
}

/// Weights of `ω ⊗ L^∨`.
pub fn serre_dual(weights: &[i64]) -> Vec<i64> {
    let last = weights.len() - 1;
    weights
        .iter()
        .enumerate()
        .map(|(k, &b)| {
            if k == 0 {
                -1 - b
            } else if k == last {
                1 - b
            } else {
                -b
            }
        })
        .collect()
}

/// `dim H^1`, via Serre duality.
pub fn invariant_h1(weights: &[i64]) -> usize {
    invariant_h0(&serre_dual(weights))
}

/// `L_α = O(0 | α·β_1 | … | α·β_n | 0)`.
pub fn ad_summand(beta: &SplittingType, alpha: &[i64]) -> EquivariantLineBundle {
    let mut w = Vec::with_capacity(beta.len() + 2);
    w.push(0);
    w.extend(beta.entries.iter().map(|b| dot_i(alpha, b)));
    w.push(0);
    EquivariantLineBundle { weights: w }
}

fn twisted(mut l: EquivariantLineBundle) -> EquivariantLineBundle {
    let last = l.weights.len() - 1;
    l.weights[0] -= 1;
    l.weights[last] += 1;
    l
}

/// `dim T^0_E = Σ_α h^0(L_α(-p))`.
pub fn t0_dim(rd: &RootDatum, beta: &SplittingType) -> Result<usize, Error> {
    beta.check_rank(rd.rank)?;
    Ok(rd.roots().iter().map(|a| invariant_h0(&twisted(ad_summand(beta, a)).weights)).sum())
}

/// `dim H^1(ad E)`; the trivial summand contributes nothing.
pub fn h1_ad_dim(rd: &RootDatum, beta: &SplittingType) -> Result<usize, Error> {
    beta.check_rank(rd.rank)?;
    Ok(rd.roots().iter().map(|a| invariant_h1(&ad_summand(beta, a).weights)).sum())
}

/// `dim H^0(ad E)`, including `rank` sections of the trivial summand.
pub fn h0_ad_dim(rd: &RootDatum, beta: &SplittingType) -> Result<usize, Error> {
    beta.check_rank(rd.rank)?;
    let roots: usize = rd.roots().iter().map(|a| invariant_h0(&ad_summand(beta, a).weights)).sum();
    Ok(roots + rd.rank)
}

/// `dim T^1_E = 2 dim g - h0(ad E) + t0 + h1(ad E)`.
pub fn t1_dim(rd: &RootDatum, beta: &SplittingType) -> Result<usize, Error> {
    let two_g = 2 * rd.dim_g();
    Ok(two_g + t0_dim(rd, beta)? + h1_ad_dim(rd, beta)? - h0_ad_dim(rd, beta)?)
}

/// Every dimension appearing in the deformation sequence at once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub dim_g: usize,
    pub t0: usize,
    pub h0_ad: usize,
    pub h1_ad: usize,
    pub t1: usize,
    pub common_chamber: bool,
}

pub fn cohomology_report(rd: &RootDatum, beta: &SplittingType) -> Result<CohomologyReport, Error> {
    Ok(CohomologyReport {
        dim_g: rd.dim_g(),
        t0: t0_dim(rd, beta)?,
        h0_ad: h0_ad_dim(rd, beta)?,
        h1_ad: h1_ad_dim(rd, beta)?,
        t1: t1_dim(rd, beta)?,
        common_chamber: common_chamber(rd, &beta.entries)?.is_some(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutGroupShape {
    pub levi_roots: Vec<Vec<i64>>,
    pub uplus_roots: Vec<Vec<i64>>,
    pub uminus_roots: Vec<Vec<i64>>,
    pub dimension: usize,
}

/// Root-space shape of the automorphism group of a framed-free chain.
pub fn aut_group_shape(rd: &RootDatum, beta: &SplittingType) -> Result<AutGroupShape, Error> {
    beta.check_rank(rd.rank)?;
    if common_chamber(rd, &beta.entries)?.is_none() {
        return Err(Error::NoCommonChamber);
    }
    let mut levi = Vec::new();
    let mut uplus = Vec::new();
    let mut uminus = Vec::new();
    for a in rd.roots() {
        let pairs: Vec<i64> = beta.entries.iter().map(|b| dot_i(a, b)).collect();
        if pairs.iter().all(|&p| p == 0) {
            levi.push(a.clone());
        } else if pairs.iter().any(|&p| p < 0) {
            uplus.push(a.clone());
        } else {
            uminus.push(a.clone());
        }
    }
    let dimension = rd.rank + levi.len() + uplus.len() + uminus.len();
    Ok(AutGroupShape { levi_roots: levi, uplus_roots: uplus, uminus_roots: uminus, dimension })
}

/// Order of `ker(G_m^n → T)` for the tuple `β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilizerOrder {
    Finite(BigInt),
    PositiveDimensional,
}

impl StabilizerOrder {
    pub fn as_u64(&self) -> Option<u64> {
        match self {
            StabilizerOrder::Finite(n) => n.to_u64(),
            StabilizerOrder::PositiveDimensional => None,
        }
    }
}

impl std::fmt::Display for StabilizerOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StabilizerOrder::Finite(n) => write!(f, "{n}"),
            StabilizerOrder::PositiveDimensional => f.write_str("positive-dimensional"),
        }
    }
}

impl Serialize for StabilizerOrder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.as_u64() {
            Some(n) => s.serialize_u64(n),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

pub fn stabilizer_order(rd: &RootDatum, beta: &SplittingType) -> Result<StabilizerOrder, Error> {
    beta.check_rank(rd.rank)?;
    stabilizer_order_of(&beta.entries)
}

/// Product of the invariant factors of the matrix with rows `β_i`, or
/// positive-dimensional when the rows are dependent.
pub fn stabilizer_order_of(rows: &[Vec<i64>]) -> Result<StabilizerOrder, Error> {
    let qrows: Vec<_> = rows.iter().map(|r| qvec(r)).collect();
    if linalg::rank(&qrows) < rows.len() {
        return Ok(StabilizerOrder::PositiveDimensional);
    }
    if rows.is_empty() {
        return Ok(StabilizerOrder::Finite(BigInt::from(1)));
    }
    let d = snf::smith_normal_form(&snf::from_i64(rows));
    Ok(StabilizerOrder::Finite(d.factor_product()))
}
