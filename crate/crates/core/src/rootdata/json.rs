//! JSON form of a root datum.

use serde::{Deserialize, Serialize};

use super::{LabelScheme, RootDatum};
use crate::rational::{serde_qmat, QVec};
use crate::Error;

/// `{rank, simple_roots, simple_coroots, fundamental_weights,
/// fundamental_coweights, edges, invariants}`; rationals as `"p/q"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootDatumJson {
    #[serde(default)]
    pub name: Option<String>,
    pub rank: usize,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    #[serde(with = "serde_qmat")]
    pub fundamental_weights: Vec<QVec>,
    #[serde(with = "serde_qmat")]
    pub fundamental_coweights: Vec<QVec>,
    #[serde(default)]
    pub edges: Option<Vec<(usize, usize)>>,
    #[serde(with = "serde_qmat", default)]
    pub invariants: Vec<QVec>,
}

impl RootDatumJson {
    pub fn into_root_datum(self) -> Result<RootDatum, Error> {
        let labels = self
            .labels
            .unwrap_or_else(|| (1..=self.rank).map(|i| format!("e{i}")).collect());
        let rd = RootDatum::new(
            self.name.unwrap_or_else(|| "custom".into()),
            self.rank,
            labels,
            self.simple_roots,
            self.simple_coroots,
            self.fundamental_weights,
            self.fundamental_coweights,
            self.invariants,
            LabelScheme::None,
        )?;
        if let Some(mut edges) = self.edges {
            for e in edges.iter_mut() {
                if e.0 > e.1 {
                    *e = (e.1, e.0);
                }
            }
            edges.sort_unstable();
            edges.dedup();
            if edges != rd.dynkin_edges {
                return Err(Error::InvalidRootDatum(
                    "edges do not match the Cartan matrix zero pattern".into(),
                ));
            }
        }
        Ok(rd)
    }
}

impl From<&RootDatum> for RootDatumJson {
    fn from(rd: &RootDatum) -> Self {
        RootDatumJson {
            name: Some(rd.name.clone()),
            rank: rd.rank,
            labels: Some(rd.character_basis_labels.clone()),
            simple_roots: rd.simple_roots.clone(),
            simple_coroots: rd.simple_coroots.clone(),
            fundamental_weights: rd.fundamental_weights.clone(),
            fundamental_coweights: rd.fundamental_coweights.clone(),
            edges: Some(rd.dynkin_edges.clone()),
            invariants: rd.weyl_invariant_characters.clone(),
        }
    }
}

impl RootDatum {
    pub fn from_json_str(s: &str) -> Result<RootDatum, Error> {
        let raw: RootDatumJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        raw.into_root_datum()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(RootDatumJson::from(self)).expect("root datum serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::preset;

    #[test]
    fn round_trip() {
        let rd = preset("B2-sc").unwrap();
        let s = rd.to_json_value().to_string();
        let back = RootDatum::from_json_str(&s).unwrap();
        assert_eq!(back, rd);
    }

    #[test]
    fn bad_edges() {
        let rd = preset("A2-adjoint").unwrap();
        let mut v = rd.to_json_value();
        v["edges"] = serde_json::json!([]);
        assert!(RootDatum::from_json_str(&v.to_string()).is_err());
    }
}
