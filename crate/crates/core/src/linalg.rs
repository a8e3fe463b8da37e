//! Sparse Gaussian elimination over Q(ζₙ).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::scalar::{CyclotomicField, Scalar};

type Row = BTreeMap<usize, Scalar>;

/// An incrementally reduced linear system `A x = b`.
///
/// Rows are reduced against the existing pivots as they are pushed, so the
/// stored rows always form an echelon basis of the row space.
pub struct LinearSystem {
    field: Arc<CyclotomicField>,
    ncols: usize,
    // pivot column -> (row with leading 1 at that column, rhs)
    pivots: BTreeMap<usize, (Row, Scalar)>,
    inconsistent: bool,
}

impl LinearSystem {
    pub fn new(field: &Arc<CyclotomicField>, ncols: usize) -> Self {
        LinearSystem { field: field.clone(), ncols, pivots: BTreeMap::new(), inconsistent: false }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// Adds the equation Σ coeffs[j]·x_j = rhs. Returns true if it was independent.
    pub fn push(&mut self, coeffs: impl IntoIterator<Item = (usize, Scalar)>, rhs: Scalar) -> bool {
        let mut row: Row = BTreeMap::new();
        for (j, c) in coeffs {
            assert!(j < self.ncols, "column {j} out of range");
            crate::qalgebra::add_into(&mut row, j, &c);
        }
        let mut rhs = rhs;
        let mut cursor = 0usize;
        loop {
            let next = row.range(cursor..).map(|(j, _)| *j).find(|j| self.pivots.contains_key(j));
            let Some(j) = next else { break };
            let c = row[&j].clone();
            let (prow, prhs) = &self.pivots[&j];
            for (k, v) in prow {
                crate::qalgebra::add_into(&mut row, *k, &-(&c * v));
            }
            rhs = &rhs - &(&c * prhs);
            cursor = j + 1;
        }
        match row.keys().next().copied() {
            None => {
                if !rhs.is_zero() {
                    self.inconsistent = true;
                }
                false
            }
            Some(lead) => {
                let inv = row[&lead].inv().expect("nonzero pivot");
                let row: Row = row.into_iter().map(|(k, v)| (k, &v * &inv)).collect();
                let rhs = &rhs * &inv;
                self.pivots.insert(lead, (row, rhs));
                true
            }
        }
    }

    /// Back-substitution with every free variable set to `free(j)`.
    fn back_substitute(&self, free: impl Fn(usize) -> Scalar, homogeneous: bool) -> Vec<Scalar> {
        let mut x: Vec<Option<Scalar>> = vec![None; self.ncols];
        for j in 0..self.ncols {
            if !self.pivots.contains_key(&j) {
                x[j] = Some(free(j));
            }
        }
        for (&j, (row, rhs)) in self.pivots.iter().rev() {
            let mut v = if homogeneous { Scalar::zero(&self.field) } else { rhs.clone() };
            for (k, c) in row.range(j + 1..) {
                let xk = x[*k].as_ref().expect("later columns solved first");
                if !xk.is_zero() {
                    v = &v - &(c * xk);
                }
            }
            x[j] = Some(v);
        }
        x.into_iter().map(|v| v.expect("all columns assigned")).collect()
    }

    /// A particular solution (free variables zero), or None if inconsistent.
    pub fn solve(&self) -> Option<Vec<Scalar>> {
        if self.inconsistent {
            return None;
        }
        let zero = Scalar::zero(&self.field);
        Some(self.back_substitute(|_| zero.clone(), false))
    }

    /// The unique solution, or None if inconsistent or underdetermined.
    pub fn solve_unique(&self) -> Option<Vec<Scalar>> {
        if self.rank() == self.ncols {
            self.solve()
        } else {
            None
        }
    }

    /// A basis of the solution space of the homogeneous system.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let free: Vec<usize> = (0..self.ncols).filter(|j| !self.pivots.contains_key(j)).collect();
        free.iter()
            .map(|&f| {
                let one = Scalar::one(&self.field);
                let zero = Scalar::zero(&self.field);
                self.back_substitute(|j| if j == f { one.clone() } else { zero.clone() }, true)
            })
            .collect()
    }
}

/// Rank of a sparse matrix given by rows.
pub fn rank(field: &Arc<CyclotomicField>, ncols: usize, rows: impl IntoIterator<Item = Vec<(usize, Scalar)>>) -> usize {
    let mut sys = LinearSystem::new(field, ncols);
    for r in rows {
        sys.push(r, Scalar::zero(field));
    }
    sys.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(f: &Arc<CyclotomicField>, v: i64) -> Scalar {
        Scalar::from_int(f, v)
    }

    #[test]
    fn solves_small_systems() {
        let f = CyclotomicField::get(3);
        let z = Scalar::zeta_pow(&f, 1);
        let mut sys = LinearSystem::new(&f, 3);
        // x0 + z x1 = 1, x1 - x2 = 2, 2 x2 = z
        sys.push([(0, s(&f, 1)), (1, z.clone())], s(&f, 1));
        sys.push([(1, s(&f, 1)), (2, s(&f, -1))], s(&f, 2));
        sys.push([(2, s(&f, 2))], z.clone());
        let x = sys.solve_unique().unwrap();
        assert_eq!(&x[0] + &(&z * &x[1]), s(&f, 1));
        assert_eq!(&x[1] - &x[2], s(&f, 2));
        assert_eq!(&s(&f, 2) * &x[2], z);
        // dependent row is rejected, inconsistent row poisons the system
        assert!(!sys.push([(0, s(&f, 1)), (1, z.clone())], s(&f, 1)));
        assert!(sys.is_consistent());
        sys.push([(0, s(&f, 2)), (1, &z * &s(&f, 2))], s(&f, 3));
        assert!(!sys.is_consistent());
        assert!(sys.solve().is_none());
    }

    #[test]
    fn nullspace_dimension() {
        let f = CyclotomicField::get(5);
        let mut sys = LinearSystem::new(&f, 4);
        sys.push([(0, s(&f, 1)), (1, s(&f, 1))], s(&f, 0));
        sys.push([(2, s(&f, 1)), (3, Scalar::zeta_pow(&f, 2))], s(&f, 0));
        let ns = sys.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!((&v[0] + &v[1]).is_zero());
            assert!((&v[2] + &(&Scalar::zeta_pow(&f, 2) * &v[3])).is_zero());
        }
        assert_eq!(rank(&f, 4, vec![vec![(0, s(&f, 1))], vec![(0, s(&f, 3))]]), 1);
    }
}
