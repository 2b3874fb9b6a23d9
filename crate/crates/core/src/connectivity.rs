//! Connectivity predicates. The definitional checks are authoritative; the
//! linear-time lowpoint routines are cross-checked against them in tests.

use std::collections::VecDeque;

use crate::instance::{NodeId, TapInstance};

/// An unweighted simple graph on `0..n` given by its edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSubgraph {
    pub n: usize,
    pub edges: Vec<(NodeId, NodeId)>,
}

impl EdgeSubgraph {
    pub fn new(n: usize, edges: Vec<(NodeId, NodeId)>) -> Self {
        EdgeSubgraph { n, edges }
    }

    fn adjacency(&self) -> Vec<Vec<NodeId>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }
}

fn connected_skipping(n: usize, adj: &[Vec<NodeId>], removed: Option<NodeId>, skip_edge: Option<usize>, edges: &[(NodeId, NodeId)]) -> bool {
    let start = match (0..n).find(|&v| Some(v) != removed) {
        Some(s) => s,
        None => return true,
    };
    let mut seen = vec![false; n];
    if let Some(r) = removed {
        seen[r] = true;
    }
    let banned = skip_edge.map(|i| edges[i]);
    seen[start] = true;
    let mut reached = 1;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if seen[w] {
                continue;
            }
            if let Some((a, b)) = banned {
                if (a == u && b == w) || (a == w && b == u) {
                    continue;
                }
            }
            seen[w] = true;
            reached += 1;
            queue.push_back(w);
        }
    }
    let expected = n - usize::from(removed.is_some());
    reached == expected
}

pub fn is_connected(g: &EdgeSubgraph) -> bool {
    connected_skipping(g.n, &g.adjacency(), None, None, &g.edges)
}

/// Whether `g - v` is connected.
pub fn is_connected_without(g: &EdgeSubgraph, v: NodeId) -> bool {
    connected_skipping(g.n, &g.adjacency(), Some(v), None, &g.edges)
}

/// 2-node connectivity by definition: at least 3 nodes, connected, and
/// connected after deleting any single node.
pub fn is_2nc(g: &EdgeSubgraph) -> bool {
    if g.n < 3 {
        return false;
    }
    let adj = g.adjacency();
    connected_skipping(g.n, &adj, None, None, &g.edges)
        && (0..g.n).all(|v| connected_skipping(g.n, &adj, Some(v), None, &g.edges))
}

/// 2-edge connectivity by definition: at least 2 nodes, connected, and
/// connected after deleting any single edge.
pub fn is_2ec(g: &EdgeSubgraph) -> bool {
    if g.n < 2 {
        return false;
    }
    let adj = g.adjacency();
    connected_skipping(g.n, &adj, None, None, &g.edges)
        && (0..g.edges.len()).all(|i| connected_skipping(g.n, &adj, None, Some(i), &g.edges))
}

/// Cut vertices and bridges via DFS lowpoints (iterative).
pub fn articulation_points_and_bridges(g: &EdgeSubgraph) -> (Vec<NodeId>, Vec<usize>) {
    let n = g.n;
    let mut adj: Vec<Vec<(NodeId, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut bridges = Vec::new();
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (node, parent edge, next adjacency index)
        let mut stack: Vec<(NodeId, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (u, pe) = (top.0, top.1);
            if top.2 < adj[u].len() {
                let (w, ei) = adj[u][top.2];
                top.2 += 1;
                if ei == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((w, ei, 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] > disc[p] {
                        bridges.push(pe);
                    }
                    if p != root && low[u] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    bridges.sort_unstable();
    let cuts = (0..n).filter(|&v| is_cut[v]).collect();
    (cuts, bridges)
}

/// Lowpoint-based 2NC test; agrees with [`is_2nc`].
pub fn is_2nc_fast(g: &EdgeSubgraph) -> bool {
    g.n >= 3 && is_connected(g) && articulation_points_and_bridges(g).0.is_empty()
}

/// Lowpoint-based 2EC test; agrees with [`is_2ec`].
pub fn is_2ec_fast(g: &EdgeSubgraph) -> bool {
    g.n >= 2 && is_connected(g) && articulation_points_and_bridges(g).1.is_empty()
}

/// The subgraph `T ∪ F` for a set of link ids.
pub fn augmented_subgraph(instance: &TapInstance, links: &[usize]) -> EdgeSubgraph {
    let mut edges = instance.tree_edges.clone();
    edges.extend(links.iter().map(|&id| instance.links[id].endpoints()));
    EdgeSubgraph::new(instance.n, edges)
}

/// Whether `T ∪ F` is 2-node connected.
pub fn is_feasible_augmentation(instance: &TapInstance, links: &[usize]) -> bool {
    is_2nc(&augmented_subgraph(instance, links))
}
