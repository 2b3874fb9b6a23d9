//! Exact rational LP solver for covering-type programs
//!
//! ```text
//! min c·x  s.t.  a_i·x >= b_i (i = 1..m),  x >= 0,   with c >= 0.
//! ```
//!
//! The solver runs the revised primal simplex method on the dual
//! `max b·y s.t. Aᵀy + s = c, y, s >= 0`. Because `c >= 0` the all-slack basis
//! is feasible, so no phase one is needed, and appending a primal row only
//! appends a nonbasic dual column: the current basis stays feasible and the
//! next solve warm-starts from it. Pivoting follows Bland's rule, which
//! guarantees termination. At optimality the simplex multipliers are a basic
//! optimal solution of the primal.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A sparse row `Σ coeff·x_var >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseRow {
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

impl SparseRow {
    pub fn activity(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, (j, a)| acc + a * &x[*j])
    }
}

/// Dual column index: slacks `0..n`, then row duals `n..n+m`.
type Col = usize;

#[derive(Debug, Clone)]
pub struct CoveringLp {
    cost: Vec<Rational>,
    rows: Vec<SparseRow>,
    basis: Vec<Col>,
    binv: Vec<Vec<Rational>>,
    values: Vec<Rational>,
    pivots: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub x: Vec<Rational>,
    pub objective: Rational,
    /// Row duals `y` (one per row, in insertion order).
    pub duals: Vec<Rational>,
}

impl CoveringLp {
    /// Panics if a cost is negative.
    pub fn new(cost: Vec<Rational>) -> Self {
        assert!(cost.iter().all(|c| !c.is_negative()), "covering LP needs c >= 0");
        let n = cost.len();
        let binv = (0..n)
            .map(|r| (0..n).map(|k| if r == k { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
            .collect();
        CoveringLp {
            values: cost.clone(),
            cost,
            rows: Vec::new(),
            basis: (0..n).collect(),
            binv,
            pivots: 0,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.cost.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivots(&self) -> usize {
        self.pivots
    }

    pub fn add_row(&mut self, row: SparseRow) {
        debug_assert!(row.coeffs.iter().all(|&(j, _)| j < self.num_vars()));
        self.rows.push(row);
    }

    fn objective_coeff(&self, col: Col) -> Rational {
        let n = self.num_vars();
        if col < n {
            Rational::zero()
        } else {
            self.rows[col - n].rhs.clone()
        }
    }

    fn multipliers(&self) -> Vec<Rational> {
        let n = self.num_vars();
        let mut pi = vec![Rational::zero(); n];
        for (r, &col) in self.basis.iter().enumerate() {
            let cb = self.objective_coeff(col);
            if cb.is_zero() {
                continue;
            }
            for (k, b) in self.binv[r].iter().enumerate() {
                if !b.is_zero() {
                    pi[k] += &cb * b;
                }
            }
        }
        pi
    }

    fn reduced_cost(&self, col: Col, pi: &[Rational]) -> Rational {
        let n = self.num_vars();
        if col < n {
            -pi[col].clone()
        } else {
            let row = &self.rows[col - n];
            &row.rhs - row.activity(pi)
        }
    }

    fn direction(&self, col: Col) -> Vec<Rational> {
        let n = self.num_vars();
        if col < n {
            self.binv.iter().map(|r| r[col].clone()).collect()
        } else {
            let row = &self.rows[col - n];
            self.binv
                .iter()
                .map(|r| {
                    row.coeffs
                        .iter()
                        .fold(Rational::zero(), |acc, (j, a)| acc + a * &r[*j])
                })
                .collect()
        }
    }

    fn pivot(&mut self, leave: usize, enter: Col, w: &[Rational]) {
        let pivot = w[leave].clone();
        for b in self.binv[leave].iter_mut() {
            *b /= &pivot;
        }
        self.values[leave] /= &pivot;
        let pivot_row = self.binv[leave].clone();
        let pivot_value = self.values[leave].clone();
        for (r, wr) in w.iter().enumerate() {
            if r == leave || wr.is_zero() {
                continue;
            }
            for (b, p) in self.binv[r].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *b -= wr * p;
                }
            }
            self.values[r] -= wr * &pivot_value;
        }
        self.basis[leave] = enter;
        self.pivots += 1;
    }

    /// Optimises from the current basis.
    ///
    /// Returns [`Error::Infeasible`] when the pooled primal rows admit no
    /// `x >= 0` (the dual is unbounded).
    pub fn solve(&mut self) -> Result<Optimum> {
        let n = self.num_vars();
        loop {
            let pi = self.multipliers();
            let total = n + self.rows.len();
            let in_basis = {
                let mut mark = vec![false; total];
                for &c in &self.basis {
                    mark[c] = true;
                }
                mark
            };
            // Bland: lowest-index improving column
            let enter = (0..total).find(|&c| !in_basis[c] && self.reduced_cost(c, &pi).is_positive());
            let Some(enter) = enter else {
                return self.finish(pi);
            };
            let w = self.direction(enter);
            let mut leave: Option<(usize, Rational)> = None;
            for (r, wr) in w.iter().enumerate() {
                if !wr.is_positive() {
                    continue;
                }
                let ratio = &self.values[r] / wr;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*l]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((leave, _)) = leave else {
                return Err(Error::Infeasible(format!(
                    "pooled row {} cannot be satisfied together with the others",
                    enter.saturating_sub(n)
                )));
            };
            self.pivot(leave, enter, &w);
        }
    }

    fn finish(&self, x: Vec<Rational>) -> Result<Optimum> {
        let n = self.num_vars();
        let mut duals = vec![Rational::zero(); self.rows.len()];
        for (r, &col) in self.basis.iter().enumerate() {
            if col >= n {
                duals[col - n] = self.values[r].clone();
            }
        }
        let objective = self
            .cost
            .iter()
            .zip(&x)
            .fold(Rational::zero(), |acc, (c, v)| acc + c * v);
        let dual_objective = self
            .rows
            .iter()
            .zip(&duals)
            .fold(Rational::zero(), |acc, (row, y)| acc + &row.rhs * y);
        // exact optimality certificate: primal feasible, dual feasible, equal objectives
        let primal_ok = x.iter().all(|v| !v.is_negative())
            && self.rows.iter().all(|row| row.activity(&x) >= row.rhs);
        let dual_ok = self.values.iter().all(|v| !v.is_negative());
        if !primal_ok || !dual_ok || objective != dual_objective {
            return Err(Error::Infeasible("internal: simplex terminated without an optimality certificate".into()));
        }
        Ok(Optimum { x, objective, duals })
    }
}
