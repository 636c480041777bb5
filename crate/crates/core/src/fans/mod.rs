//! Stacky fans in the cocharacter lattice.
//!
//! Rays are indexed from 0 in their given order; cones are sorted index sets
//! and the cone list is always closed under faces (the zero cone included).

mod normal;
mod support;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::latcone::{cone_member, linalg, lp, Membership, RationalCone};
use crate::rational::{self, qvec, QVec, Q};
use crate::rootdata::RootDatum;
use crate::Error;

pub use normal::{is_normal_fan, verify_certificate, NormalFanCertificate, Wall};
pub use support::{
    convex_support, projection_closure_check, support_equals_chamber, ProjectionReport,
    ProjectionViolation,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StackyFan {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    /// All cones, sorted by dimension and then lexicographically.
    pub cones: Vec<Vec<usize>>,
}

/// On-disk form: `{rays, cones, ordered: true}` with 0-based indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanJson {
    #[serde(default)]
    pub rank: Option<usize>,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
    #[serde(default = "yes")]
    pub ordered: bool,
}

fn yes() -> bool {
    true
}

fn all_subsets(c: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0u64..1 << c.len()).map(move |mask| {
        c.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &x)| x).collect()
    })
}

impl StackyFan {
    /// Builds a fan from rays and (not necessarily closed) cones.
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Self, Error> {
        if let Some(r) = rays.iter().find(|r| r.len() != rank) {
            return Err(Error::DimensionMismatch { expected: rank, found: r.len() });
        }
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        set.insert(Vec::new());
        for c in &cones {
            if let Some(&k) = c.iter().find(|&&k| k >= rays.len()) {
                return Err(Error::InvalidFan(format!("cone {c:?} uses ray {k}, but only {} rays exist", rays.len())));
            }
            let mut c = c.clone();
            c.sort_unstable();
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidFan(format!("cone {c:?} repeats a ray")));
            }
            if c.len() > 20 {
                return Err(Error::InvalidFan(format!("cone {c:?} is too large")));
            }
            set.extend(all_subsets(&c));
        }
        let mut cones: Vec<Vec<usize>> = set.into_iter().collect();
        cones.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(StackyFan { rank, rays, cones })
    }

    /// Face fan of one simplicial cone.
    pub fn single_cone(rank: usize, rays: Vec<Vec<i64>>) -> Result<Self, Error> {
        let all: Vec<usize> = (0..rays.len()).collect();
        StackyFan::new(rank, rays, vec![all])
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn maximal_cones(&self) -> Vec<Vec<usize>> {
        self.cones
            .iter()
            .filter(|c| !self.cones.iter().any(|d| d.len() > c.len() && c.iter().all(|x| d.contains(x))))
            .cloned()
            .collect()
    }

    pub fn contains_cone(&self, c: &[usize]) -> bool {
        let mut c = c.to_vec();
        c.sort_unstable();
        self.cones.binary_search_by(|d| d.len().cmp(&c.len()).then_with(|| d.as_slice().cmp(&c))).is_ok()
    }

    /// Largest cone dimension.
    pub fn dimension(&self) -> usize {
        self.cones.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn ray_q(&self, k: usize) -> QVec {
        qvec(&self.rays[k])
    }

    pub fn cone_vectors(&self, c: &[usize]) -> Vec<QVec> {
        c.iter().map(|&k| self.ray_q(k)).collect()
    }

    pub fn rational_cone(&self, c: &[usize]) -> RationalCone {
        RationalCone { ambient_dim: self.rank, generators: self.cone_vectors(c), lineality: Vec::new() }
    }

    /// Dimension of the span of all rays.
    pub fn span_dim(&self) -> usize {
        linalg::rank(&self.cone_vectors(&(0..self.num_rays()).collect::<Vec<_>>()))
    }

    /// A maximal cone containing `x`, with the coefficients of `x` in it.
    pub fn locate(&self, x: &[Q]) -> Option<(Vec<usize>, QVec)> {
        for c in self.maximal_cones() {
            if let Ok(Membership::Member { generator_coeffs, .. }) = cone_member(&self.rational_cone(&c), x) {
                return Some((c, generator_coeffs));
            }
        }
        None
    }

    pub fn support_contains(&self, x: &[Q]) -> bool {
        self.locate(x).is_some()
    }

    pub fn is_chamber_supported(&self, rd: &RootDatum) -> bool {
        self.rank == rd.rank && self.rays.iter().all(|r| rd.is_dominant_i(r))
    }

    /// Index of the ray whose generator equals `v`.
    pub fn ray_index(&self, v: &[i64]) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    pub fn to_json(&self) -> FanJson {
        FanJson { rank: Some(self.rank), rays: self.rays.clone(), cones: self.maximal_cones(), ordered: true }
    }

    pub fn from_json(raw: FanJson, rank: Option<usize>) -> Result<Self, Error> {
        let rank = raw
            .rank
            .or(rank)
            .or_else(|| raw.rays.first().map(Vec::len))
            .ok_or_else(|| Error::InvalidFan("cannot infer the rank of a fan without rays".into()))?;
        StackyFan::new(rank, raw.rays, raw.cones)
    }

    pub fn from_json_str(s: &str, rank: Option<usize>) -> Result<Self, Error> {
        let raw: FanJson = serde_json::from_str(s).map_err(|e| Error::InvalidFan(e.to_string()))?;
        StackyFan::from_json(raw, rank)
    }
}

/// One violated fan axiom, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ZeroRay { ray: usize },
    ParallelRays { first: usize, second: usize },
    NotSimplicial { cone: Vec<usize> },
    BadIntersection {
        first: Vec<usize>,
        second: Vec<usize>,
        #[serde(serialize_with = "ser_qvec")]
        point: QVec,
    },
}

fn ser_qvec<S: serde::Serializer>(v: &QVec, s: S) -> Result<S::Ok, S::Error> {
    rational::serde_qvec::serialize(v, s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// Only filled in when a root datum is supplied.
    pub chamber_supported: Option<bool>,
    pub violations: Vec<Violation>,
}

/// Checks every fan axiom; all violations are collected.
pub fn validate(fan: &StackyFan) -> ValidationReport {
    let mut violations = Vec::new();
    for (k, r) in fan.rays.iter().enumerate() {
        if r.iter().all(|&x| x == 0) {
            violations.push(Violation::ZeroRay { ray: k });
        }
    }
    for a in 0..fan.num_rays() {
        for b in a + 1..fan.num_rays() {
            if rational::positively_parallel(&fan.rays[a], &fan.rays[b]) {
                violations.push(Violation::ParallelRays { first: a, second: b });
            }
        }
    }
    let maximal = fan.maximal_cones();
    let mut simplicial = true;
    for c in &maximal {
        if linalg::rank(&fan.cone_vectors(c)) < c.len() {
            violations.push(Violation::NotSimplicial { cone: c.clone() });
            simplicial = false;
        }
    }
    if simplicial && violations.is_empty() {
        for (x, s) in maximal.iter().enumerate() {
            for t in &maximal[x + 1..] {
                if let Some(point) = bad_intersection(fan, s, t) {
                    violations.push(Violation::BadIntersection { first: s.clone(), second: t.clone(), point });
                }
            }
        }
    }
    ValidationReport { valid: violations.is_empty(), chamber_supported: None, violations }
}

/// [`validate`] plus the chamber-support flag.
pub fn validate_in(rd: &RootDatum, fan: &StackyFan) -> ValidationReport {
    let mut rep = validate(fan);
    rep.chamber_supported = Some(fan.is_chamber_supported(rd));
    rep
}

/// A point of `σ ∩ τ` outside the cone on their common rays, if any.
fn bad_intersection(fan: &StackyFan, s: &[usize], t: &[usize]) -> Option<QVec> {
    let only_s: Vec<usize> = s.iter().copied().filter(|k| !t.contains(k)).collect();
    if only_s.is_empty() {
        return None;
    }
    // Variables: a_k (k in s), b_k (k in t), all >= 0.
    let n = s.len() + t.len();
    let mut sys = lp::LinearSystem::new(vec![lp::VarKind::NonNeg; n]);
    for i in 0..fan.rank {
        let mut row = rational::zero_vec(n);
        for (p, &k) in s.iter().enumerate() {
            row[p] = rational::q(fan.rays[k][i]);
        }
        for (p, &k) in t.iter().enumerate() {
            row[s.len() + p] = rational::q(-fan.rays[k][i]);
        }
        sys.add(row, lp::Relation::Eq, rational::q(0));
    }
    let mut norm = rational::zero_vec(n);
    for (p, k) in s.iter().enumerate() {
        if only_s.contains(k) {
            norm[p] = rational::q(1);
        }
    }
    sys.add(norm, lp::Relation::Eq, rational::q(1));
    let sol = sys.solve()?;
    let mut x = rational::zero_vec(fan.rank);
    for (p, &k) in s.iter().enumerate() {
        x = rational::add(&x, &rational::scale(&sol[p], &fan.ray_q(k)));
    }
    Some(x)
}

/// `WΣ`: every Weyl translate of every cone.
///
/// New rays are ordered by source ray index, then by the lexicographic order
/// of the Λ-matrices of `w`.
pub fn weyl_fan(rd: &RootDatum, fan: &StackyFan) -> Result<StackyFan, Error> {
    let rep = validate(fan);
    if !rep.valid {
        return Err(Error::InvalidFan(format!("input fan fails validation: {:?}", rep.violations)));
    }
    // Inputs outside the chamber are accepted; the output is validated instead.
    let mut group = rd.weyl_group()?.to_vec();
    group.sort_by(|a, b| a.matrix.cmp(&b.matrix));
    let mut rays: Vec<Vec<i64>> = Vec::new();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    for r in &fan.rays {
        for w in &group {
            let v = w.act(r);
            if !index.contains_key(&v) {
                index.insert(v.clone(), rays.len());
                rays.push(v);
            }
        }
    }
    let mut cones = Vec::new();
    for c in fan.maximal_cones() {
        for w in &group {
            let mut img: Vec<usize> = c.iter().map(|&k| index[&w.act(&fan.rays[k])]).collect();
            img.sort_unstable();
            cones.push(img);
        }
    }
    cones.sort();
    cones.dedup();
    let out = StackyFan::new(fan.rank, rays, cones)?;
    let rep = validate(&out);
    if !rep.valid {
        return Err(Error::InvalidFan(format!("Weyl translates do not form a fan: {:?}", rep.violations)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::preset;

    pub(crate) fn figure_fan() -> StackyFan {
        StackyFan::new(2, vec![vec![0, 2], vec![1, 2], vec![1, 0]], vec![vec![0, 1], vec![1, 2]]).unwrap()
    }

    #[test]
    fn closure_and_maximal() {
        let f = figure_fan();
        assert_eq!(f.cones.len(), 6);
        assert_eq!(f.maximal_cones(), vec![vec![0, 1], vec![1, 2]]);
        assert!(f.contains_cone(&[2, 1]));
        assert!(!f.contains_cone(&[0, 2]));
    }

    #[test]
    fn figure_valid() {
        let rd = preset("PGL3").unwrap();
        let rep = validate_in(&rd, &figure_fan());
        assert!(rep.valid);
        assert_eq!(rep.chamber_supported, Some(true));
    }

    #[test]
    fn overlapping_cones_rejected() {
        // ⟨e1, e2⟩ and ⟨e1+e2, -e1⟩ overlap in ⟨e1+e2, e2⟩.
        let f = StackyFan::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 0]], vec![vec![0, 1], vec![2, 3]]).unwrap();
        let rep = validate(&f);
        assert!(!rep.valid);
        match &rep.violations[0] {
            Violation::BadIntersection { point, .. } => {
                assert!(f.rational_cone(&[0, 1]).contains(point));
                assert!(f.rational_cone(&[2, 3]).contains(point));
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn degenerate_rays() {
        let f = StackyFan::new(2, vec![vec![0, 0], vec![1, 1], vec![2, 2]], vec![vec![1], vec![2]]).unwrap();
        let rep = validate(&f);
        assert!(rep.violations.contains(&Violation::ZeroRay { ray: 0 }));
        assert!(rep.violations.contains(&Violation::ParallelRays { first: 1, second: 2 }));
        let g = StackyFan::new(2, vec![vec![1, 0], vec![2, 0]], vec![vec![0, 1]]).unwrap();
        assert!(!validate(&g).valid);
        assert!(StackyFan::new(2, vec![vec![1, 0]], vec![vec![3]]).is_err());
    }

    #[test]
    fn weyl_fans() {
        let a1 = preset("SL2").unwrap();
        let f = StackyFan::single_cone(1, vec![vec![1]]).unwrap();
        let w = weyl_fan(&a1, &f).unwrap();
        assert_eq!((w.num_rays(), w.cones.len()), (2, 3));

        let a2 = preset("A2-adjoint").unwrap();
        let f = StackyFan::single_cone(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let w = weyl_fan(&a2, &f).unwrap();
        assert_eq!((w.num_rays(), w.maximal_cones().len(), w.cones.len()), (6, 6, 13));
        let ww = weyl_fan(&a2, &w).unwrap();
        assert_eq!(cone_vector_sets(&w), cone_vector_sets(&ww));
    }

    fn cone_vector_sets(f: &StackyFan) -> BTreeSet<BTreeSet<Vec<i64>>> {
        f.cones.iter().map(|c| c.iter().map(|&k| f.rays[k].clone()).collect()).collect()
    }

    #[test]
    fn json_round_trip() {
        let f = figure_fan();
        let s = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(StackyFan::from_json_str(&s, None).unwrap(), f);
        assert!(StackyFan::from_json_str("{\"rays\": [], \"cones\": []}", None).is_err());
        assert!(StackyFan::from_json_str("{\"rays\": [], \"cones\": []}", Some(2)).is_ok());
    }
}
