//! Exact phase-one simplex for feasibility of `A x = b, x >= 0`.
//!
//! Pivoting follows Bland's rule, so the method terminates on degenerate
//! instances. Infeasible systems come back with a Farkas certificate `y`
//! satisfying `y·A_j >= 0` for every column and `y·b < 0`; both outcomes
//! are re-verified before they leave this module.

use num_traits::{One, Signed, Zero};

use crate::rational::{dot, Q, QVec};

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    Feasible(QVec),
    /// Farkas certificate.
    Infeasible(QVec),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Decide `A x = b, x >= 0` where `a` is given row-wise (`m` rows, `n` cols).
pub fn feasible_nonneg(a: &[QVec], b: &[Q], n: usize) -> Feasibility {
    let m = a.len();
    assert_eq!(b.len(), m);
    if m == 0 {
        return Feasibility::Feasible(vec![Q::zero(); n]);
    }
    // Tableau columns: n originals, m artificials, rhs.
    let width = n + m + 1;
    let mut flip = vec![false; m];
    let mut t: Vec<QVec> = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(a[i].len(), n);
        flip[i] = b[i].is_negative();
        let s = if flip[i] { -Q::one() } else { Q::one() };
        let mut row = Vec::with_capacity(width);
        row.extend(a[i].iter().map(|x| x * &s));
        row.extend((0..m).map(|j| if i == j { Q::one() } else { Q::zero() }));
        row.push(&b[i] * &s);
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs for minimizing the sum of artificials.
    let mut cost = vec![Q::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }

    loop {
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a leaving row always exists.
        let (r, _) = leave.expect("phase-one simplex cannot be unbounded");
        pivot(&mut t, &mut cost, r, enter);
        basis[r] = enter;
    }

    let objective = -cost[width - 1].clone();
    if objective.is_zero() {
        let mut x = vec![Q::zero(); n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                x[bv] = t[i][width - 1].clone();
            }
        }
        debug_assert!(a.iter().zip(b).all(|(row, bi)| dot(row, &x) == *bi));
        Feasibility::Feasible(x)
    } else {
        // Simplex multipliers: y' = c_B B^{-1}; B^{-1} sits in the artificial block.
        let mut y = vec![Q::zero(); m];
        for (i, &bv) in basis.iter().enumerate() {
            if bv >= n {
                for k in 0..m {
                    y[k] += &t[i][n + k];
                }
            }
        }
        // Undo the row sign flips and negate to get y·A >= 0, y·b < 0.
        let cert: QVec = y
            .iter()
            .zip(&flip)
            .map(|(yi, &f)| if f { yi.clone() } else { -yi.clone() })
            .collect();
        debug_assert!(verify_farkas(a, b, n, &cert));
        Feasibility::Infeasible(cert)
    }
}

fn pivot(t: &mut [QVec], cost: &mut QVec, r: usize, c: usize) {
    let width = cost.len();
    let inv = Q::one() / &t[r][c];
    for x in t[r].iter_mut() {
        *x *= &inv;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for j in 0..width {
                if !prow[j].is_zero() {
                    row[j] -= &f * &prow[j];
                }
            }
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for j in 0..width {
            if !prow[j].is_zero() {
                cost[j] -= &f * &prow[j];
            }
        }
    }
}

pub fn verify_farkas(a: &[QVec], b: &[Q], n: usize, y: &[Q]) -> bool {
    let yb = dot(y, b);
    if !yb.is_negative() {
        return false;
    }
    (0..n).all(|j| {
        let s = a
            .iter()
            .zip(y)
            .fold(Q::zero(), |acc, (row, yi)| acc + &row[j] * yi);
        !s.is_negative()
    })
}

/// Sign of a variable in a [`LinearSystem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Free,
    NonNeg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Le,
}

/// A general linear feasibility problem, reduced to standard form on solve.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    kinds: Vec<VarKind>,
    rows: Vec<(QVec, Relation, Q)>,
}

impl LinearSystem {
    pub fn new(kinds: Vec<VarKind>) -> Self {
        LinearSystem { kinds, rows: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.kinds.len()
    }

    pub fn add(&mut self, coeffs: QVec, rel: Relation, rhs: Q) {
        assert_eq!(coeffs.len(), self.kinds.len());
        self.rows.push((coeffs, rel, rhs));
    }

    /// A feasible point, or `None`.
    pub fn solve(&self) -> Option<QVec> {
        let n = self.kinds.len();
        // Column layout: for each var either [x] or [x+, x-]; then one slack per inequality.
        let mut col_of = Vec::with_capacity(n);
        let mut ncols = 0;
        for k in &self.kinds {
            col_of.push(ncols);
            ncols += match k {
                VarKind::Free => 2,
                VarKind::NonNeg => 1,
            };
        }
        let n_slack = self.rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let total = ncols + n_slack;
        let mut a = Vec::with_capacity(self.rows.len());
        let mut b = Vec::with_capacity(self.rows.len());
        let mut slack = ncols;
        for (coeffs, rel, rhs) in &self.rows {
            let mut row = vec![Q::zero(); total];
            for (v, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                row[col_of[v]] = c.clone();
                if self.kinds[v] == VarKind::Free {
                    row[col_of[v] + 1] = -c.clone();
                }
            }
            match rel {
                Relation::Eq => {}
                Relation::Ge => {
                    row[slack] = -Q::one();
                    slack += 1;
                }
                Relation::Le => {
                    row[slack] = Q::one();
                    slack += 1;
                }
            }
            a.push(row);
            b.push(rhs.clone());
        }
        match feasible_nonneg(&a, &b, total) {
            Feasibility::Infeasible(_) => None,
            Feasibility::Feasible(z) => {
                let x: QVec = self
                    .kinds
                    .iter()
                    .enumerate()
                    .map(|(v, k)| match k {
                        VarKind::NonNeg => z[col_of[v]].clone(),
                        VarKind::Free => &z[col_of[v]] - &z[col_of[v] + 1],
                    })
                    .collect();
                debug_assert!(self.check(&x));
                Some(x)
            }
        }
    }

    pub fn check(&self, x: &[Q]) -> bool {
        let kinds_ok = self
            .kinds
            .iter()
            .zip(x)
            .all(|(k, xi)| *k == VarKind::Free || !xi.is_negative());
        kinds_ok
            && self.rows.iter().all(|(c, rel, rhs)| {
                let v = dot(c, x);
                match rel {
                    Relation::Eq => v == *rhs,
                    Relation::Ge => v >= *rhs,
                    Relation::Le => v <= *rhs,
                }
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qvec};

    #[test]
    fn feasible_simple() {
        let a = vec![qvec(&[1, 1]), qvec(&[1, -1])];
        let b = vec![q(3), q(1)];
        match feasible_nonneg(&a, &b, 2) {
            Feasibility::Feasible(x) => assert_eq!(x, vec![q(2), q(1)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_with_certificate() {
        // x1 + x2 = -1 has no nonnegative solution.
        let a = vec![qvec(&[1, 1])];
        let b = vec![q(-1)];
        match feasible_nonneg(&a, &b, 2) {
            Feasibility::Infeasible(y) => assert!(verify_farkas(&a, &b, 2, &y)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_instance_terminates() {
        // Beale-style degenerate system: many zero right-hand sides.
        let a = vec![
            vec![q(1) / q(4), q(-8), q(-1), q(9), q(1), q(0), q(0)],
            vec![q(1) / q(2), q(-12), q(-1) / q(2), q(3), q(0), q(1), q(0)],
            vec![q(0), q(0), q(1), q(0), q(0), q(0), q(1)],
        ];
        let b = vec![q(0), q(0), q(1)];
        assert!(feasible_nonneg(&a, &b, 7).is_feasible());
    }

    #[test]
    fn general_system() {
        let mut s = LinearSystem::new(vec![VarKind::Free, VarKind::NonNeg]);
        s.add(qvec(&[1, 1]), Relation::Eq, q(-2));
        s.add(qvec(&[0, 1]), Relation::Ge, q(1));
        let x = s.solve().unwrap();
        assert!(s.check(&x));
        assert!(x[0] <= q(-3));
        s.add(qvec(&[1, 0]), Relation::Ge, q(0));
        assert!(s.solve().is_none());
    }
}
