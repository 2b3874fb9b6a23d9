//! Inflation of a 2-edge-connectivity instance into a 2-node-connectivity
//! instance: node `u` becomes a zero-cost clique with one node per incident
//! edge, and each edge joins the clique nodes reserved for it.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{CostedGraph, Edge, NcssInstance, NodeId};
use crate::oracle::separation::{min_cut, separate_ncss};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InflationMap {
    /// New node ids of each original node's clique.
    pub cliques: Vec<Vec<NodeId>>,
    /// Index in the inflated graph of each original edge's image.
    pub edge_image: Vec<usize>,
    /// Number of edges in the inflated graph.
    pub inflated_edges: usize,
}

/// Builds the inflated instance. Original edges keep their indices and
/// costs; clique edges follow at cost zero. Clique nodes are numbered by
/// original node, then by incident edge index.
pub fn inflate(graph: &CostedGraph) -> Result<(NcssInstance, InflationMap)> {
    graph.validate()?;
    let degrees = graph.degrees();
    if let Some((node, &degree)) = degrees.iter().enumerate().find(|(_, &d)| d < 2) {
        return Err(Error::DegreeTooSmall { node, degree });
    }
    let mut cliques: Vec<Vec<NodeId>> = vec![Vec::new(); graph.n];
    let mut next = 0;
    let mut ends = vec![(0, 0); graph.edges.len()];
    for (u, clique) in cliques.iter_mut().enumerate() {
        for (i, e) in graph.edges.iter().enumerate() {
            if e.u == u {
                ends[i].0 = next;
            } else if e.v == u {
                ends[i].1 = next;
            } else {
                continue;
            }
            clique.push(next);
            next += 1;
        }
    }
    let mut edges: Vec<Edge> = graph
        .edges
        .iter()
        .zip(&ends)
        .map(|(e, &(a, b))| Edge::new(a, b, e.cost.clone()))
        .collect();
    for clique in &cliques {
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                edges.push(Edge::new(a, b, Rational::zero()));
            }
        }
    }
    let map = InflationMap {
        cliques,
        edge_image: (0..graph.edges.len()).collect(),
        inflated_edges: edges.len(),
    };
    Ok((NcssInstance::new(next, edges)?, map))
}

fn in_unit_box(x: &[Rational]) -> bool {
    x.iter().all(|v| !v.is_negative() && *v <= Rational::one())
}

/// Extends a point of the cut LP of `graph` to the inflated graph: original
/// values on edge images, 1 on clique edges.
pub fn inflate_solution(graph: &CostedGraph, map: &InflationMap, x: &[Rational]) -> Result<Vec<Rational>> {
    if x.len() != graph.edges.len() || map.edge_image.len() != graph.edges.len() {
        return Err(Error::InfeasibleInput("vector length does not match the edges".into()));
    }
    if !in_unit_box(x) {
        return Err(Error::InfeasibleInput("values must lie in [0, 1]".into()));
    }
    let cut = min_cut(graph.n, &graph.pairs(), x)?;
    if cut.value < int(2) {
        return Err(Error::InfeasibleInput(format!(
            "cut around {:?} has value {}",
            cut.side, cut.value
        )));
    }
    let mut out = vec![Rational::one(); map.inflated_edges];
    for (v, &img) in x.iter().zip(&map.edge_image) {
        out[img] = v.clone();
    }
    Ok(out)
}

/// Restricts a point of the partition LP of the inflated graph to the
/// original edges.
pub fn deflate_solution(inflated: &NcssInstance, map: &InflationMap, x: &[Rational]) -> Result<Vec<Rational>> {
    if x.len() != inflated.edges.len() {
        return Err(Error::InfeasibleInput("vector length does not match the edges".into()));
    }
    if !in_unit_box(x) {
        return Err(Error::InfeasibleInput("values must lie in [0, 1]".into()));
    }
    if let Some(row) = separate_ncss(inflated.graph(), x)? {
        return Err(Error::InfeasibleInput(format!("violated row {}", row.label)));
    }
    Ok(map.edge_image.iter().map(|&i| x[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn triangle() -> CostedGraph {
        CostedGraph::new(3, (0..3).map(|i| Edge::new(i, (i + 1) % 3, int(1))).collect()).unwrap()
    }

    #[test]
    fn triangle_becomes_six_cycle() {
        let (g, map) = inflate(&triangle()).unwrap();
        assert_eq!(g.n, 6);
        assert_eq!(g.edges.len(), 6);
        assert!(g.degrees().iter().all(|&d| d == 2));
        assert_eq!(map.cliques, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        let zero = g.edges.iter().filter(|e| e.cost.is_zero()).count();
        assert_eq!(zero, 3);
    }

    #[test]
    fn round_trip_all_ones() {
        let g = triangle();
        let (big, map) = inflate(&g).unwrap();
        let x = vec![int(1); 3];
        let up = inflate_solution(&g, &map, &x).unwrap();
        assert_eq!(big.cost_of(&up), g.cost_of(&x));
        assert_eq!(deflate_solution(&big, &map, &up).unwrap(), x);
    }

    #[test]
    fn infeasible_inputs_are_rejected() {
        let g = triangle();
        let (big, map) = inflate(&g).unwrap();
        let half = vec![frac(1, 2); 3];
        assert!(matches!(inflate_solution(&g, &map, &half), Err(Error::InfeasibleInput(_))));
        let mut up = vec![int(1); 6];
        up[0] = frac(1, 2);
        assert!(matches!(deflate_solution(&big, &map, &up), Err(Error::InfeasibleInput(_))));
    }

    #[test]
    fn degree_one_is_rejected() {
        let g = CostedGraph::new(
            4,
            vec![
                Edge::new(0, 1, int(1)),
                Edge::new(1, 2, int(1)),
                Edge::new(0, 2, int(1)),
                Edge::new(2, 3, int(1)),
            ],
        )
        .unwrap();
        assert!(matches!(inflate(&g), Err(Error::DegreeTooSmall { node: 3, degree: 1 })));
    }
}
