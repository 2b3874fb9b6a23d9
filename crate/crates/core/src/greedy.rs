//! The partition-covering greedy algorithm.
//!
//! For every non-leaf tree node `u` the solver keeps the current partition of
//! `V - u` into the components of `(T ∪ F) - u`. A link *covers* the partition
//! of `u` when its endpoints differ from `u` and lie in different blocks. Each
//! iteration picks the link minimising `cost / coverage`, assigns that ratio as
//! the weight of every partition it covers, and merges the endpoint blocks.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::instance::{Cost, Link, NodeId, Partition, TapInstance};
use crate::rational::{serde_rational, Rational};

#[derive(Debug, Clone)]
struct NodePartition {
    node: NodeId,
    sets: DisjointSets,
    blocks: usize,
    /// Least node of each component of `T - node`, ascending.
    anchors: Vec<NodeId>,
    merges: usize,
}

/// Current partitions `P^i_u` for every non-leaf node `u`.
#[derive(Debug, Clone)]
pub struct PartitionState {
    n: usize,
    nodes: Vec<NodePartition>,
}

impl PartitionState {
    /// Starts every non-leaf node at the components of `T - u`.
    pub fn new(instance: &TapInstance) -> Self {
        let nodes = instance
            .nonleaf_nodes()
            .into_iter()
            .map(|u| {
                let mut sets = DisjointSets::new(instance.n);
                for &(a, b) in &instance.tree_edges {
                    if a != u && b != u {
                        sets.union(a, b);
                    }
                }
                let base = instance.components_partition(u).expect("non-leaf");
                NodePartition {
                    node: u,
                    sets,
                    blocks: base.len(),
                    anchors: base.blocks().iter().map(|b| b[0]).collect(),
                    merges: 0,
                }
            })
            .collect();
        PartitionState { n: instance.n, nodes }
    }

    pub fn nodes(&self) -> Vec<NodeId> {
        self.nodes.iter().map(|p| p.node).collect()
    }

    fn slot(&self, u: NodeId) -> usize {
        self.nodes
            .iter()
            .position(|p| p.node == u)
            .unwrap_or_else(|| panic!("node {u} is not a non-leaf node"))
    }

    /// Whether `link` crosses the current partition of `u`.
    pub fn crosses(&mut self, u: NodeId, link: &Link) -> bool {
        let slot = self.slot(u);
        crosses(&mut self.nodes[slot], link)
    }

    /// Number of current partitions crossed by `link`.
    pub fn coverage(&mut self, link: &Link) -> usize {
        self.nodes.iter_mut().map(|p| crosses(p, link)).filter(|&c| c).count()
    }

    pub fn block_count(&self, u: NodeId) -> usize {
        self.nodes[self.slot(u)].blocks
    }

    /// `Σ_u (|P_u| - 1)`; zero exactly when `T ∪ F` is 2-node connected.
    pub fn excess(&self) -> usize {
        self.nodes.iter().map(|p| p.blocks - 1).sum()
    }

    /// Current partition of `u` as representative labels over the base
    /// components of `T - u`: entry `k` is the least node of the block that
    /// contains the `k`-th component.
    pub fn snapshot(&mut self, u: NodeId) -> Vec<NodeId> {
        let slot = self.slot(u);
        snapshot(&mut self.nodes[slot])
    }

    /// Current partition of `u`, fully expanded.
    pub fn partition(&mut self, u: NodeId) -> Partition {
        let n = self.n;
        let slot = self.slot(u);
        let p = &mut self.nodes[slot];
        let mut blocks: Vec<Vec<NodeId>> = Vec::new();
        let mut index = vec![usize::MAX; n];
        for v in (0..n).filter(|&v| v != p.node) {
            let r = p.sets.find(v);
            if index[r] == usize::MAX {
                index[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index[r]].push(v);
        }
        Partition::from_blocks(blocks).expect("components are disjoint")
    }
}

fn crosses(p: &mut NodePartition, link: &Link) -> bool {
    !link.touches(p.node) && !p.sets.same(link.u, link.v)
}

fn snapshot(p: &mut NodePartition) -> Vec<NodeId> {
    let roots: Vec<usize> = p.anchors.clone().into_iter().map(|a| p.sets.find(a)).collect();
    roots
        .iter()
        .map(|r| {
            // anchors are ascending, so the first anchor sharing the root is the least node
            let k = roots.iter().position(|x| x == r).expect("present");
            p.anchors[k]
        })
        .collect()
}

/// A partition that received a weight in some iteration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveredPartition {
    pub node: NodeId,
    /// Position of this partition among the weighted partitions of `node`.
    pub index: usize,
    /// Number of blocks before the merge.
    pub blocks: usize,
    /// Representative labels, see [`PartitionState::snapshot`].
    pub reps: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Iteration {
    pub link: usize,
    /// `cost / coverage` of the picked link; the weight given to each covered partition.
    #[serde(with = "serde_rational")]
    pub ratio: Rational,
    pub covered: Vec<CoveredPartition>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyTrace {
    pub iterations: Vec<Iteration>,
}

impl GreedyTrace {
    pub fn picked(&self) -> Vec<usize> {
        self.iterations.iter().map(|it| it.link).collect()
    }

    /// Sum of all weights handed out.
    pub fn total_weight(&self) -> Rational {
        self.iterations.iter().fold(Rational::zero(), |acc, it| {
            acc + &it.ratio * Rational::from_integer(it.covered.len().into())
        })
    }
}

#[derive(Debug, Clone)]
pub struct GreedySolution {
    pub picked: Vec<usize>,
    pub cost: Cost,
    pub trace: GreedyTrace,
}

/// Among candidates, the lowest `(cost, id)`.
pub fn tie_break<'a>(candidates: &[&'a Link]) -> Option<&'a Link> {
    candidates
        .iter()
        .copied()
        .min_by(|a, b| a.cost.cmp(&b.cost).then(a.id.cmp(&b.id)))
}

fn better(a: (&Rational, &Link), b: (&Rational, &Link)) -> Ordering {
    a.0.cmp(b.0)
        .then_with(|| a.1.cost.cmp(&b.1.cost))
        .then_with(|| a.1.id.cmp(&b.1.id))
}

/// Runs the greedy algorithm to completion.
pub fn greedy_solve(instance: &TapInstance) -> Result<GreedySolution> {
    let mut state = PartitionState::new(instance);
    let mut trace = GreedyTrace::default();
    while state.excess() > 0 {
        let mut best: Option<(Rational, &Link)> = None;
        for link in &instance.links {
            let c = state.coverage(link);
            if c == 0 {
                continue;
            }
            let ratio = &link.cost / Rational::from_integer(c.into());
            let replace = match &best {
                None => true,
                Some((r, l)) => better((&ratio, link), (r, l)) == Ordering::Less,
            };
            if replace {
                best = Some((ratio, link));
            }
        }
        let (ratio, link) = best.ok_or_else(|| {
            Error::Infeasible(format!(
                "{} partition merges outstanding but no link crosses a current partition",
                state.excess()
            ))
        })?;
        let mut covered = Vec::new();
        for p in state.nodes.iter_mut() {
            if crosses(p, link) {
                covered.push(CoveredPartition {
                    node: p.node,
                    index: p.merges,
                    blocks: p.blocks,
                    reps: snapshot(p),
                });
                p.sets.union(link.u, link.v);
                p.blocks -= 1;
                p.merges += 1;
            }
        }
        trace.iterations.push(Iteration {
            link: link.id,
            ratio,
            covered,
        });
    }
    let picked = trace.picked();
    let cost = instance.total_cost(&picked);
    Ok(GreedySolution { picked, cost, trace })
}
