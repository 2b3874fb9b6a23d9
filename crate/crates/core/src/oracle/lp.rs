//! Lazy row generation for the partition LP of TAP, the cut LP and the
//! general partition LP on costed graphs.
//!
//! The graph models keep one variable per positive-cost edge. Zero-cost
//! edges sit at 1: every row is a covering row, so raising them never hurts
//! and costs nothing. Rows are projected accordingly.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::instance::{CostedGraph, NcssInstance, TapInstance};
use crate::oracle::coarsen::enumerate_coarsenings;
use crate::oracle::model::{LpModel, LpSolution, Row};
use crate::oracle::separation::{
    cut_row, ncss_partition_row, separate_ncss_all, separate_cut, separate_tap_all, tap_row, zero_cost_components,
    CUT_ENUM_CAP,
};
use crate::rational::Rational;

/// Safety net against a separation routine that keeps returning rows.
const MAX_ROUNDS: usize = 10_000;

/// Alternates exact solves of the pooled model with separation until no
/// violated row remains.
fn lazy_solve(model: &mut LpModel, mut separate: impl FnMut(&[Rational]) -> Result<Vec<Row>>) -> Result<LpSolution> {
    let mut lp = model.solver();
    for round in 1..=MAX_ROUNDS {
        let opt = lp.solve()?;
        let rows = separate(&opt.x)?;
        if rows.is_empty() {
            return Ok(LpSolution {
                objective: opt.objective,
                x: opt.x,
                is_vertex: true,
                rounds: round,
            });
        }
        for row in rows {
            if !row.violation(&opt.x).is_positive() {
                return Err(Error::CheckFailed(format!("separation returned a satisfied row {}", row.label)));
            }
            model.push_row(&mut lp, row);
        }
    }
    Err(Error::CheckFailed(format!("no convergence after {MAX_ROUNDS} rounds")))
}

fn label_rows(model: &mut LpModel) {
    for (i, row) in model.rows.iter_mut().enumerate() {
        row.label = format!("{}_r{i}", row.label);
    }
}

/// A solved model together with its final row pool.
#[derive(Debug, Clone)]
pub struct Solved {
    pub model: LpModel,
    pub solution: LpSolution,
}

fn tap_model(instance: &TapInstance) -> LpModel {
    LpModel::new(
        "partition LP for tree augmentation",
        instance.links.iter().map(|l| format!("x_l{}", l.id)).collect(),
        instance.links.iter().map(|l| l.cost.clone()).collect(),
        false,
    )
}

/// Partition LP of a TAP instance. The pool starts with the point-partition
/// row of every non-leaf node; there are no upper bounds.
pub fn solve_tap_lp(instance: &TapInstance) -> Result<Solved> {
    let mut model = tap_model(instance);
    for u in instance.nonleaf_nodes() {
        let base = instance.components_partition(u)?;
        model.rows.push(tap_row(instance, u, &base));
    }
    let solution = lazy_solve(&mut model, |x| separate_tap_all(instance, x))?;
    label_rows(&mut model);
    Ok(Solved { model, solution })
}

/// Every partition row of a TAP instance with positive right-hand side.
pub fn full_tap_model(instance: &TapInstance) -> Result<LpModel> {
    let mut model = tap_model(instance);
    for u in instance.nonleaf_nodes() {
        let base = instance.components_partition(u)?;
        for p in enumerate_coarsenings(&base)? {
            if p.len() > 1 {
                model.rows.push(tap_row(instance, u, &p));
            }
        }
    }
    label_rows(&mut model);
    Ok(model)
}

/// Independent re-scan: evaluates every partition row of every non-leaf
/// node directly on `x`.
pub fn satisfies_all_tap_rows(instance: &TapInstance, x: &[Rational]) -> Result<bool> {
    for u in instance.nonleaf_nodes() {
        let base = instance.components_partition(u)?;
        for p in enumerate_coarsenings(&base)? {
            let crossing = instance
                .links
                .iter()
                .filter(|l| !l.touches(u) && p.crosses(l.u, l.v))
                .fold(Rational::zero(), |acc, l| acc + &x[l.id]);
            if crossing < Rational::from_integer((p.len() as i64 - 1).into()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Maps between edge vectors and the positive-cost variables of a graph
/// model.
#[derive(Debug, Clone)]
pub struct EdgeVars {
    /// Edge index of each variable.
    pub edges: Vec<usize>,
    var_of: Vec<Option<usize>>,
}

impl EdgeVars {
    pub fn new(graph: &CostedGraph) -> Self {
        let edges: Vec<usize> = (0..graph.edges.len()).filter(|&i| !graph.edges[i].cost.is_zero()).collect();
        let mut var_of = vec![None; graph.edges.len()];
        for (j, &i) in edges.iter().enumerate() {
            var_of[i] = Some(j);
        }
        EdgeVars { edges, var_of }
    }

    /// Full edge vector with zero-cost edges at 1.
    pub fn expand(&self, x: &[Rational]) -> Vec<Rational> {
        self.var_of
            .iter()
            .map(|v| v.map_or_else(Rational::one, |j| x[j].clone()))
            .collect()
    }

    /// Projects a row over edge indices onto the variables; `None` if the
    /// fixed edges already satisfy it.
    pub fn project(&self, row: Row) -> Option<Row> {
        let mut rhs = row.rhs;
        let mut coeffs = Vec::new();
        for (i, a) in row.coeffs {
            match self.var_of[i] {
                Some(j) => coeffs.push((j, a)),
                None => rhs -= a,
            }
        }
        rhs.is_positive().then_some(Row {
            label: row.label,
            coeffs,
            rhs,
        })
    }
}

fn graph_model(graph: &CostedGraph, vars: &EdgeVars, name: &str) -> LpModel {
    let names = vars
        .edges
        .iter()
        .map(|&i| format!("x_e{i}"))
        .collect();
    let cost = vars.edges.iter().map(|&i| graph.edges[i].cost.clone()).collect();
    LpModel::new(name, names, cost, true)
}

/// A solved graph model with the solution expanded to all edges.
#[derive(Debug, Clone)]
pub struct SolvedGraph {
    pub model: LpModel,
    pub solution: LpSolution,
    pub vars: EdgeVars,
    /// One value per edge of the graph.
    pub x: Vec<Rational>,
}

fn solve_graph(graph: &CostedGraph, name: &str, partitions: bool) -> Result<SolvedGraph> {
    let vars = EdgeVars::new(graph);
    let mut model = graph_model(graph, &vars, name);
    for v in 0..graph.n {
        if let Some(row) = vars.project(cut_row(graph, &[v])) {
            model.rows.push(row);
        }
    }
    let solution = lazy_solve(&mut model, |x| {
        let full = vars.expand(x);
        let rows = if partitions {
            separate_ncss_all(graph, &full)?
        } else {
            separate_cut(graph, &full)?.into_iter().collect()
        };
        Ok(rows.into_iter().filter_map(|r| vars.project(r)).collect())
    })?;
    label_rows(&mut model);
    let x = vars.expand(&solution.x);
    Ok(SolvedGraph {
        model,
        solution,
        vars,
        x,
    })
}

/// Cut LP `x(δ(S)) >= 2, 0 <= x <= 1` of a costed graph.
pub fn solve_cut_lp(graph: &CostedGraph) -> Result<SolvedGraph> {
    solve_graph(graph, "cut LP for 2-edge connectivity", false)
}

/// Cut LP strengthened by the partition rows over zero-cost components.
pub fn solve_ncss_lp(instance: &NcssInstance) -> Result<SolvedGraph> {
    solve_graph(instance.graph(), "partition LP for 2-node connectivity", true)
}

/// Every cut row (and partition row, if requested) of a graph model.
pub fn full_graph_model(graph: &CostedGraph, partitions: bool) -> Result<LpModel> {
    let n = graph.n;
    if n > CUT_ENUM_CAP {
        return Err(Error::InstanceTooLarge(format!(
            "{n} nodes, cut enumeration is capped at {CUT_ENUM_CAP}"
        )));
    }
    let vars = EdgeVars::new(graph);
    let name = if partitions {
        "partition LP for 2-node connectivity"
    } else {
        "cut LP for 2-edge connectivity"
    };
    let mut model = graph_model(graph, &vars, name);
    for mask in 1u64..(1u64 << (n - 1)) {
        let side: Vec<usize> = (0..n - 1).filter(|&v| mask >> v & 1 == 1).collect();
        model.rows.extend(vars.project(cut_row(graph, &side)));
    }
    if partitions {
        for w in 0..n {
            let base = zero_cost_components(graph, w);
            for p in enumerate_coarsenings(&base)? {
                if p.len() > 1 {
                    model.rows.extend(vars.project(ncss_partition_row(graph, w, &p)));
                }
            }
        }
    }
    label_rows(&mut model);
    Ok(model)
}
