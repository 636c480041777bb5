//! Double description: generators of `{x : A x >= 0, E x = 0}`.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::cone::RationalCone;
use super::linalg::{self, nullspace};
use crate::rational::{self, dot, normalize_ray, QVec, Q};
use crate::Error;

/// Largest ambient dimension accepted by [`dual_cone`].
pub const DD_MAX_DIM: usize = 8;

/// `C^∨ = {λ : g·λ >= 0 for generators g, l·λ = 0 for lineality l}`.
///
/// Returned as minimal generators: extreme rays (primitive, orthogonal to
/// the lineality space, sorted) plus a reduced basis of the lineality space.
pub fn dual_cone(cone: &RationalCone) -> Result<RationalCone, Error> {
    let d = cone.ambient_dim;
    if d > DD_MAX_DIM {
        return Err(Error::DimensionBound { dim: d, max: DD_MAX_DIM });
    }
    polyhedral_cone_generators(d, &cone.generators, &cone.lineality)
}

/// V-representation of `{x : a·x >= 0 for a in ineqs, e·x = 0 for e in eqs}`.
pub fn polyhedral_cone_generators(d: usize, ineqs: &[QVec], eqs: &[QVec]) -> Result<RationalCone, Error> {
    let mut lin: Vec<QVec> = nullspace(eqs, d);
    let mut rays: Vec<QVec> = Vec::new();
    let mut processed: Vec<QVec> = Vec::new();

    for a in ineqs {
        if rational::is_zero_vec(a) {
            continue;
        }
        if let Some(p) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lin.swap_remove(p);
            if dot(a, &l0).is_negative() {
                l0 = rational::neg(&l0);
            }
            let al0 = dot(a, &l0);
            let project = |v: &QVec| -> QVec {
                let t = dot(a, v) / &al0;
                rational::sub(v, &rational::scale(&t, &l0))
            };
            lin = lin.iter().map(project).collect();
            rays = rays.iter().map(|r| normalize_ray(&project(r))).collect();
            rays.push(normalize_ray(&l0));
        } else {
            let vals: Vec<Q> = rays.iter().map(|r| dot(a, r)).collect();
            let zero_sets: Vec<BTreeSet<usize>> = rays
                .iter()
                .map(|r| (0..processed.len()).filter(|&k| dot(&processed[k], r).is_zero()).collect())
                .collect();
            let mut next: Vec<QVec> = Vec::new();
            for (r, v) in rays.iter().zip(&vals) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (pi, vp) in vals.iter().enumerate() {
                if !vp.is_positive() {
                    continue;
                }
                for (ni, vn) in vals.iter().enumerate() {
                    if !vn.is_negative() {
                        continue;
                    }
                    let common: BTreeSet<usize> =
                        zero_sets[pi].intersection(&zero_sets[ni]).copied().collect();
                    let adjacent = (0..rays.len())
                        .filter(|&k| k != pi && k != ni)
                        .all(|k| !common.is_subset(&zero_sets[k]));
                    if adjacent {
                        // vp * n - vn * p has a·(.) = 0 and lies on the edge.
                        let combo = rational::sub(
                            &rational::scale(vp, &rays[ni]),
                            &rational::scale(vn, &rays[pi]),
                        );
                        next.push(normalize_ray(&combo));
                    }
                }
            }
            rays = next;
        }
        processed.push(a.clone());
    }

    let lin = reduce_basis(lin);
    let mut out: Vec<QVec> = rays
        .iter()
        .map(|r| normalize_ray(&orthogonal_to(&lin, r)))
        .filter(|r| !rational::is_zero_vec(r))
        .collect();
    out.sort();
    out.dedup();
    Ok(RationalCone { ambient_dim: d, generators: out, lineality: lin })
}

fn reduce_basis(mut basis: Vec<QVec>) -> Vec<QVec> {
    if basis.is_empty() {
        return basis;
    }
    let pivots = linalg::rref(&mut basis);
    basis.truncate(pivots.len());
    basis.iter().map(|v| normalize_ray(v)).collect()
}

/// Component of `v` orthogonal (standard dot product) to `span(basis)`.
fn orthogonal_to(basis: &[QVec], v: &[Q]) -> QVec {
    if basis.is_empty() {
        return v.to_vec();
    }
    let gram: Vec<QVec> = basis.iter().map(|a| basis.iter().map(|b| dot(a, b)).collect()).collect();
    let rhs: Vec<Q> = basis.iter().map(|a| dot(a, v)).collect();
    let coeffs = linalg::solve(&gram, &rhs).expect("Gram matrix of a basis is invertible");
    let mut out = v.to_vec();
    for (c, b) in coeffs.iter().zip(basis) {
        out = rational::sub(&out, &rational::scale(c, b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    #[test]
    fn duals_of_basic_cones() {
        let full = RationalCone::full(3);
        let d = dual_cone(&full).unwrap();
        assert!(d.generators.is_empty() && d.lineality.is_empty());

        let orth = RationalCone::orthant(3);
        let d = dual_cone(&orth).unwrap();
        assert_eq!(d.generators, vec![qvec(&[0, 0, 1]), qvec(&[0, 1, 0]), qvec(&[1, 0, 0])]);
        assert!(d.lineality.is_empty());

        let zero = RationalCone::zero(2);
        let d = dual_cone(&zero).unwrap();
        assert_eq!(d.lineality.len(), 2);
    }

    #[test]
    fn half_plane() {
        let c = RationalCone::new(2, vec![qvec(&[1, 0])], vec![qvec(&[0, 1])]).unwrap();
        let d = dual_cone(&c).unwrap();
        assert_eq!(d.generators, vec![qvec(&[1, 0])]);
        assert!(d.lineality.is_empty());
    }

    #[test]
    fn dimension_bound() {
        assert!(matches!(
            dual_cone(&RationalCone::orthant(9)),
            Err(Error::DimensionBound { .. })
        ));
    }
}
