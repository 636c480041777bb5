//! Σ-stability of splitting types, orbit posets, and the worked families
//! (canonical, KGL, Losev–Manin).

mod orbits;
mod worked;

use serde::Serialize;

use crate::chains::SplittingType;
use crate::fans::StackyFan;
use crate::rational;
use crate::rootdata::{common_chamber_by_roots, RootDatum, WeylElement};
use crate::Error;

pub use orbits::{node_id, orbit_poset, OrbitEdge, OrbitNode, OrbitPoset};
pub use worked::{
    bundle_label, canonical_fan, cone_type, coweight_to_diag, diag_to_coweight, kgl, kgl_fan, losev_manin_type,
    ordered_set_partitions, BundleLabel,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityReason {
    Ok,
    WrongOrder,
    NotACone,
    MixedChambers,
    TooLong,
    RayMismatch,
}

impl std::fmt::Display for StabilityReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StabilityReason::Ok => "ok",
            StabilityReason::WrongOrder => "wrong_order",
            StabilityReason::NotACone => "not_a_cone",
            StabilityReason::MixedChambers => "mixed_chambers",
            StabilityReason::TooLong => "too_long",
            StabilityReason::RayMismatch => "ray_mismatch",
        })
    }
}

/// `w` with `wβ'_k = β_{σ(k)}` for the increasing map `σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityWitness {
    pub weyl: WeylElement,
    pub cone: Vec<usize>,
    pub index_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub reason: StabilityReason,
    pub witness: Option<StabilityWitness>,
    /// The common dominant translate `wβ'`, when one exists.
    pub dominant_translate: Option<Vec<Vec<i64>>>,
}

impl StabilityVerdict {
    fn unstable(reason: StabilityReason, dominant_translate: Option<Vec<Vec<i64>>>) -> Self {
        StabilityVerdict { stable: false, reason, witness: None, dominant_translate }
    }
}

/// Decides Σ-stability of `β'` for a chamber-supported fan.
///
/// The reported `w` is the first Weyl element, in breadth-first order, that
/// moves every entry into the positive chamber. Since that translate is the
/// tuple of dominant representatives it does not depend on the choice of `w`.
pub fn sigma_stable(rd: &RootDatum, fan: &StackyFan, beta: &SplittingType) -> Result<StabilityVerdict, Error> {
    beta.check_rank(rd.rank)?;
    if fan.rank != rd.rank {
        return Err(Error::DimensionMismatch { expected: rd.rank, found: fan.rank });
    }
    let n = beta.len();
    if n > fan.dimension() || n > fan.num_rays() {
        return Ok(StabilityVerdict::unstable(StabilityReason::TooLong, None));
    }
    if !common_chamber_by_roots(rd, &beta.entries) {
        return Ok(StabilityVerdict::unstable(StabilityReason::MixedChambers, None));
    }
    let w = rd
        .weyl_group()?
        .iter()
        .find(|w| beta.entries.iter().all(|b| rd.is_dominant_i(&w.act(b))))
        .cloned()
        .ok_or_else(|| Error::Precondition("root scan and Weyl search disagree".into()))?;
    let t: Vec<Vec<i64>> = beta.entries.iter().map(|b| w.act(b)).collect();
    let translate = Some(t.clone());

    // Ray each entry lies on, and whether it is the marked generator.
    let mut rays = Vec::with_capacity(n);
    let mut exact = true;
    for v in &t {
        let on_ray = (0..fan.num_rays()).find(|&k| rational::positively_parallel(v, &fan.rays[k]));
        match on_ray {
            Some(k) => {
                exact &= fan.rays[k] == *v;
                rays.push(k);
            }
            None => return Ok(StabilityVerdict::unstable(StabilityReason::NotACone, translate)),
        }
    }
    let mut sorted = rays.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != n || !fan.contains_cone(&sorted) {
        return Ok(StabilityVerdict::unstable(StabilityReason::NotACone, translate));
    }
    if !exact {
        return Ok(StabilityVerdict::unstable(StabilityReason::RayMismatch, translate));
    }
    if sorted != rays {
        return Ok(StabilityVerdict::unstable(StabilityReason::WrongOrder, translate));
    }
    Ok(StabilityVerdict {
        stable: true,
        reason: StabilityReason::Ok,
        witness: Some(StabilityWitness { weyl: w, cone: sorted, index_map: rays }),
        dominant_translate: translate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::preset;

    fn figure() -> StackyFan {
        StackyFan::new(2, vec![vec![0, 2], vec![1, 2], vec![1, 0]], vec![vec![0, 1], vec![1, 2]]).unwrap()
    }

    fn verdict(t: &[[i64; 2]]) -> StabilityVerdict {
        let rd = preset("PGL3").unwrap();
        let st = SplittingType::new(t.iter().map(|v| v.to_vec()).collect());
        sigma_stable(&rd, &figure(), &st).unwrap()
    }

    #[test]
    fn figure_lists() {
        let (b1, b2, b3) = ([0, 2], [1, 2], [1, 0]);
        let (wb1, wb2, wb3) = ([-2, 0], [-2, -1], [0, -1]);
        for t in [&[][..], &[b1], &[wb3], &[b2, b3], &[wb1, wb2]] {
            let v = verdict(t);
            assert!(v.stable, "{t:?}: {v:?}");
        }
        assert_eq!(verdict(&[b2, b1]).reason, StabilityReason::WrongOrder);
        assert_eq!(verdict(&[b1, b3]).reason, StabilityReason::NotACone);
        assert_eq!(verdict(&[b2, wb3]).reason, StabilityReason::MixedChambers);
        assert_eq!(verdict(&[b1, b2, b3]).reason, StabilityReason::TooLong);
        assert_eq!(verdict(&[[0, 1]]).reason, StabilityReason::RayMismatch);
        assert_eq!(verdict(&[[1, 1]]).reason, StabilityReason::NotACone);
    }

    #[test]
    fn empty_type_uses_zero_cone() {
        let v = verdict(&[]);
        let w = v.witness.unwrap();
        assert!(w.weyl.is_identity());
        assert!(w.cone.is_empty());
    }
}
