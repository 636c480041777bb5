//! Support predicates: convexity, chamber coverage, projection closure.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{weyl_fan, StackyFan};
use crate::latcone::linalg;
use crate::rational::{self, q, QVec, Q};
use crate::rootdata::RootDatum;
use crate::Error;

/// Facets of maximal cones: facet -> [(maximal cone, opposite ray)].
pub(crate) fn facet_map(maximal: &[Vec<usize>]) -> BTreeMap<Vec<usize>, Vec<(usize, usize)>> {
    let mut map: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, c) in maximal.iter().enumerate() {
        for &u in c {
            let f: Vec<usize> = c.iter().copied().filter(|&k| k != u).collect();
            map.entry(f).or_default().push((ci, u));
        }
    }
    map
}

/// A functional vanishing on `facet` and equal to 1 on `opposite`.
pub(crate) fn facet_normal(fan: &StackyFan, facet: &[usize], opposite: usize) -> QVec {
    let mut rows: Vec<QVec> = facet.iter().map(|&k| fan.ray_q(k)).collect();
    let mut rhs: Vec<Q> = vec![Q::zero(); facet.len()];
    rows.push(fan.ray_q(opposite));
    rhs.push(q(1));
    linalg::solve(&rows, &rhs).expect("simplicial cone has a facet normal")
}

/// `Ok(())` when `|F|` is convex.
///
/// The fan must be pure of the dimension of its span, and the hyperplane of
/// every boundary facet must keep all ray generators on the inner side.
pub fn convex_support(fan: &StackyFan) -> Result<(), Error> {
    let maximal = fan.maximal_cones();
    let d = fan.span_dim();
    if let Some(c) = maximal.iter().find(|c| c.len() != d) {
        return Err(Error::NonConvexSupport(format!(
            "maximal cone {c:?} has dimension {} but the rays span dimension {d}",
            c.len()
        )));
    }
    for (facet, owners) in facet_map(&maximal) {
        if owners.len() != 1 {
            continue;
        }
        let n = facet_normal(fan, &facet, owners[0].1);
        if let Some(k) = (0..fan.num_rays()).find(|&k| rational::dot_qi(&n, &fan.rays[k]).is_negative()) {
            return Err(Error::NonConvexSupport(format!(
                "ray {k} lies beyond the boundary facet {facet:?} of cone {:?}",
                maximal[owners[0].0]
            )));
        }
    }
    Ok(())
}

/// Whether the maximal cones cover the whole positive chamber.
pub fn support_equals_chamber(rd: &RootDatum, fan: &StackyFan) -> bool {
    if !fan.is_chamber_supported(rd) {
        return false;
    }
    let full: Vec<Vec<usize>> = fan
        .maximal_cones()
        .into_iter()
        .filter(|c| c.len() == rd.rank && linalg::rank(&fan.cone_vectors(c)) == rd.rank)
        .collect();
    if full.is_empty() {
        return false;
    }
    facet_map(&full).iter().all(|(facet, owners)| {
        owners.len() == 2
            || (owners.len() == 1
                && rd
                    .simple_roots
                    .iter()
                    .any(|a| facet.iter().all(|&k| rational::dot_i(a, &fan.rays[k]) == 0)))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionViolation {
    pub wall: usize,
    #[serde(with = "rational::serde_qvec")]
    pub point: QVec,
    #[serde(with = "rational::serde_qvec")]
    pub projected: QVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub passed: bool,
    /// Whether the hypothesis (convex support of `WΣ`) holds.
    pub weyl_fan_convex: bool,
    pub points_checked: usize,
    pub violations: Vec<ProjectionViolation>,
}

const RANDOM_POINTS: usize = 100;
const SEED: u64 = 0x00c0_ffee;

/// Checks `P_i(x) ∈ |F|` for every ray generator and 100 seeded random points.
pub fn projection_closure_check(rd: &RootDatum, fan: &StackyFan) -> ProjectionReport {
    let weyl_fan_convex = matches!(weyl_fan(rd, fan).map(|w| convex_support(&w)), Ok(Ok(())));
    let mut points: Vec<QVec> = (0..fan.num_rays()).map(|k| fan.ray_q(k)).collect();
    let maximal: Vec<Vec<usize>> = fan.maximal_cones().into_iter().filter(|c| !c.is_empty()).collect();
    if !maximal.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..RANDOM_POINTS {
            let c = &maximal[rng.gen_range(0..maximal.len())];
            let mut x = rational::zero_vec(fan.rank);
            for &k in c {
                let coeff = Q::new(rng.gen_range(0..10).into(), rng.gen_range(1..5).into());
                x = rational::add(&x, &rational::scale(&coeff, &fan.ray_q(k)));
            }
            if rational::is_zero_vec(&x) {
                x = fan.ray_q(c[0]);
            }
            points.push(x);
        }
    }
    let mut violations = Vec::new();
    for x in &points {
        for i in 0..rd.num_simple() {
            let p = rd.wall_projection(i, x);
            if !fan.support_contains(&p) {
                violations.push(ProjectionViolation { wall: i, point: x.clone(), projected: p });
            }
        }
    }
    ProjectionReport { passed: violations.is_empty(), weyl_fan_convex, points_checked: points.len(), violations }
}
