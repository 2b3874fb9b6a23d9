//! Structural properties of the partition LP checked on concrete instances.

use num_traits::One;

use crate::error::Result;
use crate::instance::TapInstance;
use crate::oracle::lp::solve_tap_lp;
use crate::oracle::separation::min_cut_exhaustive;
use crate::rational::{int, Rational};

/// Solves the partition LP and reports whether the optimal vertex found
/// stays inside the unit cube. The model has no upper bounds.
pub fn check_extreme_point_bounds(instance: &TapInstance) -> Result<bool> {
    let solved = solve_tap_lp(instance)?;
    Ok(solved.solution.x.iter().all(|v| *v <= Rational::one()))
}

/// Extends `x` by 1 on tree edges and checks `x(δ(S)) >= 2` on every cut.
pub fn check_cut_remark(instance: &TapInstance, x: &[Rational]) -> Result<bool> {
    let graph = instance.to_graph();
    let mut full = vec![Rational::one(); instance.tree_edges.len()];
    full.extend_from_slice(x);
    let cut = min_cut_exhaustive(graph.n, &graph.pairs(), &full)?;
    Ok(cut.value >= int(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn triangle_and_half_star() {
        let tri = TapInstance::new(3, vec![(0, 1), (1, 2)], vec![(0, 2, int(5))]).unwrap();
        assert!(check_extreme_point_bounds(&tri).unwrap());
        assert!(check_cut_remark(&tri, &[int(1)]).unwrap());
        assert!(!check_cut_remark(&tri, &[frac(1, 2)]).unwrap());
    }
}
