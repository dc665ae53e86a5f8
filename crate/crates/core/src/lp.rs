//! Exact-rational feasibility for small linear systems.
//!
//! Decides whether `{x ≥ 0 : A_ub·x ≤ b_ub, A_eq·x = b_eq}` is nonempty with
//! a phase-one simplex over arbitrary-precision rationals. Bland's rule
//! prevents cycling. Systems here have a handful of rows, so a dense tableau
//! is fine.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A feasibility problem in the form described in the module docs.
#[derive(Clone, Debug, Default)]
pub struct FeasibilityProblem {
    pub vars: usize,
    pub upper: Vec<(Vec<BigRational>, BigRational)>,
    pub equal: Vec<(Vec<BigRational>, BigRational)>,
}

impl FeasibilityProblem {
    pub fn new(vars: usize) -> Self {
        FeasibilityProblem {
            vars,
            ..Default::default()
        }
    }

    pub fn add_upper(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.vars);
        self.upper.push((coeffs, rhs));
    }

    pub fn add_equal(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.vars);
        self.equal.push((coeffs, rhs));
    }

    pub fn is_feasible(&self) -> bool {
        Tableau::build(self).phase_one()
    }
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    /// Reduced costs of the phase-one objective; last entry is −objective.
    cost: Vec<BigRational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    /// Columns: original vars, then one slack per `≤` row, then one
    /// artificial per row that lacks a usable slack.
    fn build(p: &FeasibilityProblem) -> Tableau {
        let n = p.vars;
        let mut specs: Vec<(Vec<BigRational>, BigRational, bool)> = Vec::new();
        for (a, b) in &p.upper {
            if b.is_negative() {
                // −a·x − s = −b needs an artificial
                specs.push((a.iter().map(|v| -v).collect(), -b, true));
            } else {
                specs.push((a.clone(), b.clone(), false));
            }
        }
        let n_slack = p.upper.len();
        let mut eq_specs = Vec::new();
        for (a, b) in &p.equal {
            if b.is_negative() {
                eq_specs.push((a.iter().map(|v| -v).collect::<Vec<_>>(), -b));
            } else {
                eq_specs.push((a.clone(), b.clone()));
            }
        }
        let n_art = specs.iter().filter(|s| s.2).count() + eq_specs.len();
        let width = n + n_slack + n_art;
        let mut rows = Vec::new();
        let mut basis = Vec::new();
        let mut artificial_rows = Vec::new();
        let mut next_art = n + n_slack;

        for (k, (a, b, flipped)) in specs.into_iter().enumerate() {
            let mut row = vec![BigRational::zero(); width + 1];
            row[..n].clone_from_slice(&a);
            if flipped {
                row[n + k] = -BigRational::one();
                row[next_art] = BigRational::one();
                basis.push(next_art);
                artificial_rows.push(rows.len());
                next_art += 1;
            } else {
                row[n + k] = BigRational::one();
                basis.push(n + k);
            }
            row[width] = b;
            rows.push(row);
        }
        for (a, b) in eq_specs {
            let mut row = vec![BigRational::zero(); width + 1];
            row[..n].clone_from_slice(&a);
            row[next_art] = BigRational::one();
            row[width] = b;
            basis.push(next_art);
            artificial_rows.push(rows.len());
            next_art += 1;
            rows.push(row);
        }

        let first_art = n + n_slack;
        let mut cost = vec![BigRational::zero(); width + 1];
        for c in &mut cost[first_art..width] {
            *c = BigRational::one();
        }
        for &r in &artificial_rows {
            for j in 0..=width {
                cost[j] -= &rows[r][j];
            }
        }
        Tableau {
            rows,
            cost,
            basis,
            width,
        }
    }

    fn phase_one(mut self) -> bool {
        loop {
            let entering = (0..self.width).find(|&j| self.cost[j].is_negative());
            let Some(col) = entering else {
                return self.cost[self.width].is_zero();
            };
            let mut best: Option<(usize, BigRational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if row[col].is_positive() {
                    let ratio = &row[self.width] / &row[col];
                    let better = match &best {
                        None => true,
                        Some((br, bv)) => {
                            ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                        }
                    };
                    if better {
                        best = Some((r, ratio));
                    }
                }
            }
            let Some((pivot_row, _)) = best else {
                // unbounded below cannot happen for a sum of nonnegative artificials
                return self.cost[self.width].is_zero();
            };
            self.pivot(pivot_row, col);
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }
}
