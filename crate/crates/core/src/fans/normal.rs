//! Strictly convex piecewise-linear certificates for normal fans.

use serde::Serialize;

use super::support::{convex_support, facet_map};
use super::{validate, StackyFan};
use crate::latcone::{linalg, LinearSystem, Relation, VarKind};
use crate::rational::{self, q, QVec, Q};
use crate::Error;

/// An interior wall `σ ∩ τ` with `σ = facet ∪ {first_ray}`, `τ = facet ∪ {second_ray}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub first_ray: usize,
    pub second_ray: usize,
}

/// Heights `h_j` on the rays and one linear functional per maximal cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalFanCertificate {
    #[serde(with = "rational::serde_qvec")]
    pub heights: QVec,
    pub cones: Vec<Vec<usize>>,
    #[serde(with = "rational::serde_qmat")]
    pub functionals: Vec<QVec>,
    pub walls: Vec<Wall>,
}

fn walls(maximal: &[Vec<usize>]) -> Vec<Wall> {
    facet_map(maximal)
        .into_values()
        .filter(|o| o.len() == 2)
        .map(|o| Wall {
            first: maximal[o[0].0].clone(),
            second: maximal[o[1].0].clone(),
            first_ray: o[0].1,
            second_ray: o[1].1,
        })
        .collect()
}

/// A strictly convex support function for `F`, or `None` when none exists.
pub fn is_normal_fan(fan: &StackyFan) -> Result<Option<NormalFanCertificate>, Error> {
    let rep = validate(fan);
    if !rep.valid {
        return Err(Error::InvalidFan(format!("{:?}", rep.violations)));
    }
    convex_support(fan)?;
    let maximal = fan.maximal_cones();
    let walls = walls(&maximal);
    let n = fan.num_rays();
    let mut sys = LinearSystem::new(vec![VarKind::Free; n]);
    for w in &walls {
        // β_v = Σ_{k∈σ} c_k β_k; convexity across the wall: Σ c_k h_k <= h_v - 1.
        let coeffs = linalg::express_in(&fan.cone_vectors(&w.first), &fan.ray_q(w.second_ray))
            .expect("a wall's opposite ray lies in the span of the adjacent cone");
        let mut row = rational::zero_vec(n);
        for (c, &k) in coeffs.iter().zip(&w.first) {
            row[k] += c;
        }
        row[w.second_ray] -= q(1);
        sys.add(row, Relation::Le, q(-1));
    }
    let Some(heights) = sys.solve() else {
        return Ok(None);
    };
    let functionals = maximal.iter().map(|c| cone_functional(fan, c, &heights)).collect();
    let cert = NormalFanCertificate { heights, cones: maximal, functionals, walls };
    debug_assert!(verify_certificate(fan, &cert));
    Ok(Some(cert))
}

fn cone_functional(fan: &StackyFan, c: &[usize], h: &[Q]) -> QVec {
    if c.is_empty() {
        return rational::zero_vec(fan.rank);
    }
    let rows = fan.cone_vectors(c);
    let rhs: Vec<Q> = c.iter().map(|&k| h[k].clone()).collect();
    linalg::solve(&rows, &rhs).expect("simplicial cones interpolate any heights")
}

/// Re-evaluates every defining equation and strict wall inequality.
pub fn verify_certificate(fan: &StackyFan, cert: &NormalFanCertificate) -> bool {
    if cert.heights.len() != fan.num_rays() || cert.cones.len() != cert.functionals.len() {
        return false;
    }
    let m_of = |c: &Vec<usize>| cert.cones.iter().position(|d| d == c).map(|p| &cert.functionals[p]);
    let interpolates = cert
        .cones
        .iter()
        .zip(&cert.functionals)
        .all(|(c, m)| c.iter().all(|&k| rational::dot_qi(m, &fan.rays[k]) == cert.heights[k]));
    let strict = cert.walls.iter().all(|w| {
        let (Some(ms), Some(mt)) = (m_of(&w.first), m_of(&w.second)) else {
            return false;
        };
        let v = &fan.rays[w.second_ray];
        let u = &fan.rays[w.first_ray];
        rational::dot_qi(ms, v) < rational::dot_qi(mt, v) && rational::dot_qi(mt, u) < rational::dot_qi(ms, u)
    });
    let all_walls = walls(&fan.maximal_cones()).len() == cert.walls.len();
    interpolates && strict && all_walls
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fans::weyl_fan;
    use crate::rootdata::preset;

    #[test]
    fn single_cone() {
        let f = StackyFan::single_cone(3, vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let cert = is_normal_fan(&f).unwrap().unwrap();
        assert!(verify_certificate(&f, &cert));
        assert!(cert.walls.is_empty());
    }

    #[test]
    fn weyl_chamber_fans() {
        for name in ["A2-adjoint", "B2-adjoint", "G2"] {
            let rd = preset(name).unwrap();
            let gens = rd.fundamental_coweights.iter().map(|v| rational::primitive_on_ray(v).unwrap()).collect();
            let w = weyl_fan(&rd, &StackyFan::single_cone(2, gens).unwrap()).unwrap();
            let cert = is_normal_fan(&w).unwrap().expect(name);
            assert!(verify_certificate(&w, &cert));
            assert_eq!(cert.walls.len(), w.maximal_cones().len());
        }
    }

    #[test]
    fn non_regular_triangulation() {
        // Outer (1,0,0),(0,1,0),(0,0,1) and inner (2,1,1),(1,2,1),(1,1,2), twisted.
        let rays = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]];
        let cones = vec![
            vec![3, 4, 5],
            vec![0, 1, 4],
            vec![0, 3, 4],
            vec![1, 2, 5],
            vec![1, 4, 5],
            vec![2, 0, 3],
            vec![2, 5, 3],
        ];
        let f = StackyFan::new(3, rays, cones).unwrap();
        assert!(validate(&f).valid);
        assert!(is_normal_fan(&f).unwrap().is_none());
    }

    #[test]
    fn non_convex_reported() {
        let f = StackyFan::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(is_normal_fan(&f), Err(Error::NonConvexSupport(_))));
    }
}
