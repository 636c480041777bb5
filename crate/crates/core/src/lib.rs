//! Exact combinatorics of framed bundle chains over a split reductive group.
//!
//! The crate is organised bottom-up: [`latcone`] holds the exact polyhedral
//! kernels, [`rootdata`] the root data and Weyl groups, [`chains`] the line
//! bundle calculus on chains, [`fans`] stacky fans, [`vinberg`] and
//! [`coxvinberg`] the GIT classifications, and [`moduli`] the stability and
//! orbit-poset layer.

pub mod chains;
pub mod coxvinberg;
pub mod fans;
pub mod latcone;
pub mod moduli;
pub mod rational;
pub mod rootdata;
pub mod vinberg;

pub use chains::{AutGroupShape, EquivariantLineBundle, SplittingType, StabilizerOrder};
pub use coxvinberg::{CoxData, GitWitness, Stratum};
pub use fans::StackyFan;
pub use latcone::{PositivityClass, RationalCone, SmithDecomposition};
pub use moduli::{OrbitPoset, StabilityReason, StabilityVerdict};
pub use rational::{Q, QVec};
pub use rootdata::{RootDatum, WeylElement};
pub use vinberg::{EssentialPair, GitStatus, VinbergFace};

use serde::Serialize;

/// Every domain failure reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum Error {
    #[error("malformed rational: {0:?}")]
    MalformedRational(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension {dim} exceeds the double-description bound {max}")]
    DimensionBound { dim: usize, max: usize },
    #[error("Weyl group exceeds the cap of {cap} elements ({partial} enumerated)")]
    WeylCapExceeded { cap: usize, partial: usize },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("fan support is not convex: {0}")]
    NonConvexSupport(String),
    #[error("splitting type has no common Weyl chamber")]
    NoCommonChamber,
    #[error("pair (I={i:?}, J={j:?}) is not essential")]
    NotEssential { i: Vec<usize>, j: Vec<usize> },
    #[error("index {index} lies in the stratum image I(H)")]
    IndexInImage { index: usize },
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("no bundle label scheme for this root datum")]
    NoLabelScheme,
    #[error("component {0} of the chain carries no label")]
    EmptyComponent(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_error_serializes() {
        let all = [
            Error::MalformedRational("x".into()),
            Error::DimensionMismatch { expected: 2, found: 3 },
            Error::DimensionBound { dim: 9, max: 8 },
            Error::WeylCapExceeded { cap: 1, partial: 1 },
            Error::UnknownPreset("E8".into()),
            Error::InvalidRootDatum("x".into()),
            Error::InvalidFan("x".into()),
            Error::NonConvexSupport("x".into()),
            Error::NoCommonChamber,
            Error::NotEssential { i: vec![0], j: vec![] },
            Error::IndexInImage { index: 0 },
            Error::IndexOutOfRange { index: 3, size: 2 },
            Error::NoLabelScheme,
            Error::EmptyComponent(1),
            Error::Precondition("x".into()),
            Error::Parse("x".into()),
        ];
        for e in all {
            let v = serde_json::to_value(&e).unwrap();
            assert!(v["kind"].is_string(), "{e:?}");
        }
    }
}
