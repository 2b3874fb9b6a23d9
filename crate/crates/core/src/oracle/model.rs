use std::fmt::Write;

use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::oracle::simplex::{CoveringLp, SparseRow};
use crate::rational::{self, Rational};

/// A labelled covering row `Σ coeff·x >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub label: String,
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

impl Row {
    pub fn activity(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, (j, a)| acc + a * &x[*j])
    }

    /// `rhs - activity`; positive when the row is violated.
    pub fn violation(&self, x: &[Rational]) -> Rational {
        &self.rhs - self.activity(x)
    }

    fn sparse(&self) -> SparseRow {
        SparseRow {
            coeffs: self.coeffs.clone(),
            rhs: self.rhs.clone(),
        }
    }
}

/// Objective, variable names, pooled rows and optional `x <= 1` bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpModel {
    pub name: String,
    pub var_names: Vec<String>,
    pub objective: Vec<Rational>,
    pub rows: Vec<Row>,
    pub upper_bound_one: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub x: Vec<Rational>,
    pub objective: Rational,
    /// Set when `x` is a basic solution of the pooled model.
    pub is_vertex: bool,
    /// Separation rounds until no violated row remained.
    pub rounds: usize,
}

impl LpModel {
    pub fn new(name: impl Into<String>, var_names: Vec<String>, objective: Vec<Rational>, upper_bound_one: bool) -> Self {
        LpModel {
            name: name.into(),
            var_names,
            objective,
            rows: Vec::new(),
            upper_bound_one,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Objective value of `x`.
    pub fn value(&self, x: &[Rational]) -> Rational {
        self.objective
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (c, v)| acc + c * v)
    }

    /// Solver seeded with the bound rows and every pooled row.
    pub(crate) fn solver(&self) -> CoveringLp {
        let mut lp = CoveringLp::new(self.objective.clone());
        if self.upper_bound_one {
            for j in 0..self.num_vars() {
                lp.add_row(SparseRow {
                    coeffs: vec![(j, -Rational::one())],
                    rhs: -Rational::one(),
                });
            }
        }
        for row in &self.rows {
            lp.add_row(row.sparse());
        }
        lp
    }

    pub(crate) fn push_row(&mut self, lp: &mut CoveringLp, row: Row) {
        lp.add_row(row.sparse());
        self.rows.push(row);
    }

    /// Solves the pooled model as it stands.
    pub fn solve_pooled(&self) -> Result<LpSolution> {
        let opt = self.solver().solve()?;
        Ok(LpSolution {
            objective: opt.objective,
            x: opt.x,
            is_vertex: true,
            rounds: 0,
        })
    }

    /// Writes the model in the CPLEX LP text format. Non-integral
    /// coefficients are written as decimals.
    pub fn to_lp_format(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "\\ {}", self.name);
        let _ = writeln!(out, "\\ {} variables, {} rows", self.num_vars(), self.rows.len());
        out.push_str("Minimize\n obj:");
        let terms: Vec<(usize, Rational)> = self
            .objective
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, c.clone()))
            .collect();
        if terms.is_empty() {
            out.push_str(" 0 ");
            out.push_str(self.var_names.first().map_or("x", String::as_str));
        } else {
            self.write_terms(&mut out, &terms);
        }
        out.push_str("\nSubject To\n");
        for row in &self.rows {
            let _ = write!(out, " {}:", row.label);
            if row.coeffs.is_empty() {
                out.push_str(" 0 ");
                out.push_str(self.var_names.first().map_or("x", String::as_str));
            } else {
                self.write_terms(&mut out, &row.coeffs);
            }
            let _ = writeln!(out, " >= {}", number(&row.rhs));
        }
        out.push_str("Bounds\n");
        for name in &self.var_names {
            if self.upper_bound_one {
                let _ = writeln!(out, " 0 <= {name} <= 1");
            } else {
                let _ = writeln!(out, " {name} >= 0");
            }
        }
        out.push_str("End\n");
        out
    }

    fn write_terms(&self, out: &mut String, terms: &[(usize, Rational)]) {
        for (i, (j, c)) in terms.iter().enumerate() {
            if i > 0 && i % 8 == 0 {
                out.push_str("\n   ");
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 && !c.is_negative() {
                out.push(' ');
            } else {
                let _ = write!(out, " {sign} ");
            }
            let mag = c.abs();
            if !mag.is_one() {
                let _ = write!(out, "{} ", number(&mag));
            }
            out.push_str(&self.var_names[*j]);
        }
    }
}

fn number(r: &Rational) -> String {
    if r.is_integer() {
        rational::format(r)
    } else {
        format!("{:.12}", rational::to_f64(r))
    }
}
