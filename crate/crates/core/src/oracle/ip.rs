//! Integer optima by cost-ordered subset search, plus plain exhaustive
//! enumeration used as an independent cross-check.

use num_traits::Zero;

use crate::connectivity::{is_2ec, is_2ec_fast, is_2nc, is_2nc_fast, EdgeSubgraph};
use crate::error::{Error, Result};
use crate::instance::{CostedGraph, NcssInstance, NodeId, TapInstance};
use crate::rational::Rational;

/// Largest number of binary variables the subset search accepts.
pub const IP_CAP: usize = 26;
/// Largest number of binary variables for the exhaustive cross-check.
pub const EXHAUSTIVE_CAP: usize = 20;

/// An optimal choice of optional edges (link ids or edge indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpSolution {
    pub chosen: Vec<usize>,
    pub cost: Rational,
}

/// Optional edges `(id, u, v, cost)` on top of always-present `fixed` edges.
struct SubsetProblem {
    n: usize,
    fixed: Vec<(NodeId, NodeId)>,
    optional: Vec<(usize, NodeId, NodeId, Rational)>,
}

impl SubsetProblem {
    fn graph(&self, picked: impl Iterator<Item = usize>) -> EdgeSubgraph {
        let mut edges = self.fixed.clone();
        edges.extend(picked.map(|i| (self.optional[i].1, self.optional[i].2)));
        EdgeSubgraph::new(self.n, edges)
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.optional.len() > cap {
            return Err(Error::InstanceTooLarge(format!(
                "{} binary variables, capped at {cap}",
                self.optional.len()
            )));
        }
        Ok(())
    }

    /// Depth-first search over edges in (cost, id) order, trying inclusion
    /// first. Branches die when their cost reaches the incumbent or when
    /// adding every remaining edge still leaves the graph infeasible.
    fn branch_and_bound(&self, feasible: fn(&EdgeSubgraph) -> bool) -> Result<IpSolution> {
        self.check_cap(IP_CAP)?;
        let mut order: Vec<usize> = (0..self.optional.len()).collect();
        order.sort_by(|&a, &b| {
            let (ea, eb) = (&self.optional[a], &self.optional[b]);
            ea.3.cmp(&eb.3).then(ea.0.cmp(&eb.0))
        });

        struct Search<'a> {
            problem: &'a SubsetProblem,
            order: Vec<usize>,
            feasible: fn(&EdgeSubgraph) -> bool,
            chosen: Vec<usize>,
            best: Option<(Rational, Vec<usize>)>,
        }

        impl Search<'_> {
            fn visit(&mut self, depth: usize, cost: Rational) {
                if self.best.as_ref().is_some_and(|(b, _)| cost >= *b) {
                    return;
                }
                let rest = self.order[depth..].iter().copied();
                let graph = self.problem.graph(self.chosen.iter().copied().chain(rest));
                if !(self.feasible)(&graph) {
                    return;
                }
                if (self.feasible)(&self.problem.graph(self.chosen.iter().copied())) {
                    self.best = Some((cost, self.chosen.clone()));
                    return;
                }
                if depth == self.order.len() {
                    return;
                }
                let e = self.order[depth];
                self.chosen.push(e);
                let with = cost.clone() + &self.problem.optional[e].3;
                self.visit(depth + 1, with);
                self.chosen.pop();
                self.visit(depth + 1, cost);
            }
        }

        let mut search = Search {
            problem: self,
            order,
            feasible,
            chosen: Vec::new(),
            best: None,
        };
        search.visit(0, Rational::zero());
        let (cost, picked) = search
            .best
            .ok_or_else(|| Error::Infeasible("no feasible subset exists".into()))?;
        Ok(self.solution(picked, cost))
    }

    /// Every subset, checked with the definitional predicate. Among optimal
    /// subsets the one with the smallest bitmask is returned.
    fn exhaustive(&self, feasible: fn(&EdgeSubgraph) -> bool) -> Result<IpSolution> {
        self.check_cap(EXHAUSTIVE_CAP)?;
        let m = self.optional.len();
        let mut best: Option<(Rational, u32)> = None;
        for mask in 0u32..(1u32 << m) {
            let picked = (0..m).filter(|&i| mask >> i & 1 == 1);
            let cost = picked
                .clone()
                .fold(Rational::zero(), |acc, i| acc + &self.optional[i].3);
            if best.as_ref().is_some_and(|(b, _)| cost >= *b) {
                continue;
            }
            if feasible(&self.graph(picked)) {
                best = Some((cost, mask));
            }
        }
        let (cost, mask) = best.ok_or_else(|| Error::Infeasible("no feasible subset exists".into()))?;
        Ok(self.solution((0..m).filter(|&i| mask >> i & 1 == 1).collect(), cost))
    }

    fn solution(&self, picked: Vec<usize>, cost: Rational) -> IpSolution {
        let mut chosen: Vec<usize> = picked.into_iter().map(|i| self.optional[i].0).collect();
        chosen.sort_unstable();
        IpSolution { chosen, cost }
    }
}

fn tap_problem(instance: &TapInstance) -> SubsetProblem {
    SubsetProblem {
        n: instance.n,
        fixed: instance.tree_edges.clone(),
        optional: instance.links.iter().map(|l| (l.id, l.u, l.v, l.cost.clone())).collect(),
    }
}

/// Zero-cost edges are always taken; the rest are binary.
fn graph_problem(graph: &CostedGraph) -> SubsetProblem {
    let (zero, positive): (Vec<_>, Vec<_>) = graph.edges.iter().enumerate().partition(|(_, e)| e.cost.is_zero());
    SubsetProblem {
        n: graph.n,
        fixed: zero.into_iter().map(|(_, e)| (e.u, e.v)).collect(),
        optional: positive.into_iter().map(|(i, e)| (i, e.u, e.v, e.cost.clone())).collect(),
    }
}

/// Cheapest link set making `T ∪ F` 2-node connected.
pub fn solve_ip_tap(instance: &TapInstance) -> Result<IpSolution> {
    tap_problem(instance).branch_and_bound(is_2nc_fast)
}

/// Same optimum by enumerating every link subset with the definitional test.
pub fn solve_ip_tap_exhaustive(instance: &TapInstance) -> Result<IpSolution> {
    tap_problem(instance).exhaustive(is_2nc)
}

/// Cheapest 2-edge-connected augmentation of a TAP instance.
pub fn solve_ip_tap_2ec(instance: &TapInstance) -> Result<IpSolution> {
    tap_problem(instance).branch_and_bound(is_2ec_fast)
}

/// Cheapest 2-node-connected spanning subgraph. `chosen` lists the
/// positive-cost edges; zero-cost edges are always included.
pub fn solve_ip_ncss(instance: &NcssInstance) -> Result<IpSolution> {
    graph_problem(instance.graph()).branch_and_bound(is_2nc_fast)
}

pub fn solve_ip_ncss_exhaustive(instance: &NcssInstance) -> Result<IpSolution> {
    graph_problem(instance.graph()).exhaustive(is_2nc)
}

/// Cheapest 2-edge-connected spanning subgraph, zero-cost edges included.
pub fn solve_ip_2ec(graph: &CostedGraph) -> Result<IpSolution> {
    graph_problem(graph).branch_and_bound(is_2ec_fast)
}

pub fn solve_ip_2ec_exhaustive(graph: &CostedGraph) -> Result<IpSolution> {
    graph_problem(graph).exhaustive(is_2ec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn fig1() -> TapInstance {
        TapInstance::new(
            5,
            vec![(0, 1), (1, 2), (2, 3), (3, 4)],
            vec![(0, 2, int(6)), (1, 3, int(3)), (2, 4, int(2)), (0, 4, int(6) + frac(1, 100))],
        )
        .unwrap()
    }

    #[test]
    fn long_link_alone_is_optimal() {
        let sol = solve_ip_tap(&fig1()).unwrap();
        assert_eq!(sol.chosen, vec![3]);
        assert_eq!(sol.cost, int(6) + frac(1, 100));
        assert_eq!(solve_ip_tap_exhaustive(&fig1()).unwrap(), sol);
    }

    #[test]
    fn star_needs_n_minus_two_links() {
        for n in 4..=7 {
            let tree = (1..n).map(|i| (0, i)).collect();
            let links = (1..n).map(|i| (i, if i + 1 < n { i + 1 } else { 1 }, int(1))).collect();
            let inst = TapInstance::new(n, tree, links).unwrap();
            assert_eq!(solve_ip_tap(&inst).unwrap().cost, int(n as i64 - 2));
        }
    }

    #[test]
    fn infeasible_and_too_large() {
        let inst = TapInstance::new(4, vec![(0, 1), (1, 2), (2, 3)], vec![(0, 2, int(1))]).unwrap();
        assert!(matches!(solve_ip_tap(&inst), Err(Error::Infeasible(_))));
        assert!(matches!(solve_ip_tap_exhaustive(&inst), Err(Error::Infeasible(_))));
        let n = 30;
        let tree: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let links = (2..n).map(|i| (i - 2, i, int(1))).collect();
        let inst = TapInstance::new(n, tree, links).unwrap();
        assert!(matches!(solve_ip_tap(&inst), Err(Error::InstanceTooLarge(_))));
    }

    #[test]
    fn path_needs_2ec_but_not_2nc_link() {
        // path 0-1-2-3 with the single link {0,3}: a cycle, so both hold
        let inst = TapInstance::new(4, vec![(0, 1), (1, 2), (2, 3)], vec![(0, 3, int(2)), (0, 2, int(1))]).unwrap();
        assert_eq!(solve_ip_tap(&inst).unwrap().chosen, vec![0]);
        assert_eq!(solve_ip_tap_2ec(&inst).unwrap().chosen, vec![0]);
    }
}
