//! Problem instances, partitions and tree-path machinery.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result, ValidationError};
use crate::rational::Rational;

/// Dense 0-based node index.
pub type NodeId = usize;

/// Exact nonnegative edge cost.
pub type Cost = Rational;

fn ordered(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A costed edge of `G` outside the tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Link {
    pub id: usize,
    pub u: NodeId,
    pub v: NodeId,
    pub cost: Cost,
}

impl Link {
    pub fn endpoints(&self) -> (NodeId, NodeId) {
        ordered(self.u, self.v)
    }

    pub fn touches(&self, node: NodeId) -> bool {
        self.u == node || self.v == node
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub cost: Cost,
}

impl Edge {
    pub fn new(u: NodeId, v: NodeId, cost: Cost) -> Self {
        let (u, v) = ordered(u, v);
        Edge { u, v, cost }
    }

    pub fn endpoints(&self) -> (NodeId, NodeId) {
        ordered(self.u, self.v)
    }
}

/// Spanning tree of cost zero plus costed links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TapInstance {
    pub n: usize,
    pub tree_edges: Vec<(NodeId, NodeId)>,
    pub links: Vec<Link>,
}

impl TapInstance {
    /// Builds and validates an instance; link ids are assigned by position.
    pub fn new(
        n: usize,
        tree_edges: Vec<(NodeId, NodeId)>,
        links: Vec<(NodeId, NodeId, Cost)>,
    ) -> Result<Self> {
        let links = links
            .into_iter()
            .enumerate()
            .map(|(id, (u, v, cost))| Link { id, u, v, cost })
            .collect();
        let inst = TapInstance {
            n,
            tree_edges,
            links,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Checks every structural invariant, reporting the first violation.
    pub fn validate(&self) -> Result<(), ValidationError> {
        if self.n < 3 {
            return Err(ValidationError::TooFewNodes(self.n));
        }
        let mut seen = HashSet::new();
        for &(u, v) in &self.tree_edges {
            check_pair(self.n, u, v)?;
            if !seen.insert(ordered(u, v)) {
                return Err(ValidationError::DuplicateEdge(u, v));
            }
        }
        if self.tree_edges.len() != self.n - 1 {
            return Err(ValidationError::NotATree(format!(
                "{} edges for {} nodes",
                self.tree_edges.len(),
                self.n
            )));
        }
        let mut dsu = DisjointSets::new(self.n);
        for &(u, v) in &self.tree_edges {
            if !dsu.union(u, v) {
                return Err(ValidationError::NotATree(format!("edge {{{u}, {v}}} closes a cycle")));
            }
        }
        for (position, link) in self.links.iter().enumerate() {
            if link.id != position {
                return Err(ValidationError::BadLinkId {
                    position,
                    id: link.id,
                });
            }
            check_pair(self.n, link.u, link.v)?;
            if link.cost.is_negative() {
                return Err(ValidationError::NegativeCost(link.u, link.v));
            }
            if !seen.insert(link.endpoints()) {
                return Err(ValidationError::DuplicateEdge(link.u, link.v));
            }
        }
        Ok(())
    }

    pub fn tree(&self) -> RootedTree {
        RootedTree::new(self.n, &self.tree_edges)
    }

    pub fn tree_degree(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.tree_edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// The tree path `T(ℓ)` as consecutive edges from `link.u` to `link.v`.
    pub fn tree_path(&self, link: &Link) -> Vec<(NodeId, NodeId)> {
        self.tree().path_edges(link.u, link.v)
    }

    /// Maximum tree-path length over all links.
    pub fn lambda(&self) -> Result<usize> {
        let tree = self.tree();
        self.links
            .iter()
            .map(|l| tree.distance(l.u, l.v))
            .max()
            .ok_or(Error::NoLinks)
    }

    /// Nodes of tree degree at least two, ascending.
    pub fn nonleaf_nodes(&self) -> Vec<NodeId> {
        self.tree_degree()
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d >= 2)
            .map(|(u, _)| u)
            .collect()
    }

    /// The partition of `V - u` induced by the components of `T - u`.
    pub fn components_partition(&self, u: NodeId) -> Result<Partition> {
        if u >= self.n || self.tree_degree()[u] < 2 {
            return Err(Error::LeafNode(u));
        }
        let edges: Vec<_> = self
            .tree_edges
            .iter()
            .copied()
            .filter(|&(a, b)| a != u && b != u)
            .collect();
        Ok(components_without(self.n, &edges, Some(u)))
    }

    pub fn total_cost<'a>(&'a self, links: impl IntoIterator<Item = &'a usize>) -> Cost {
        links
            .into_iter()
            .fold(Cost::zero(), |acc, &id| acc + &self.links[id].cost)
    }

    /// The whole graph `T ∪ L` with tree edges at cost zero, tree edges first.
    pub fn to_graph(&self) -> CostedGraph {
        let mut edges: Vec<Edge> = self
            .tree_edges
            .iter()
            .map(|&(u, v)| Edge::new(u, v, Cost::zero()))
            .collect();
        edges.extend(self.links.iter().map(|l| Edge::new(l.u, l.v, l.cost.clone())));
        CostedGraph { n: self.n, edges }
    }
}

fn check_pair(n: usize, u: NodeId, v: NodeId) -> Result<(), ValidationError> {
    for node in [u, v] {
        if node >= n {
            return Err(ValidationError::NodeOutOfRange { node, n });
        }
    }
    if u == v {
        return Err(ValidationError::LoopEdge(u));
    }
    Ok(())
}

/// Partition of `0..n` (minus `skip`) into the components of the given edges.
pub(crate) fn components_without(n: usize, edges: &[(NodeId, NodeId)], skip: Option<NodeId>) -> Partition {
    let mut dsu = DisjointSets::new(n);
    for &(a, b) in edges {
        dsu.union(a, b);
    }
    let mut blocks: Vec<Vec<NodeId>> = Vec::new();
    let mut block_of_root = vec![usize::MAX; n];
    for v in (0..n).filter(|&v| Some(v) != skip) {
        let r = dsu.find(v);
        if block_of_root[r] == usize::MAX {
            block_of_root[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of_root[r]].push(v);
    }
    Partition::from_blocks(blocks).expect("components are disjoint and nonempty")
}

/// The tree rooted at node 0 with parent pointers and depths.
#[derive(Debug, Clone)]
pub struct RootedTree {
    pub parent: Vec<Option<NodeId>>,
    pub depth: Vec<usize>,
    pub adjacency: Vec<Vec<NodeId>>,
}

impl RootedTree {
    pub fn new(n: usize, edges: &[(NodeId, NodeId)]) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        RootedTree {
            parent,
            depth,
            adjacency,
        }
    }

    /// Nodes of the unique path from `a` to `b`, both ends included.
    pub fn path_nodes(&self, a: NodeId, b: NodeId) -> Vec<NodeId> {
        let (mut x, mut y) = (a, b);
        let mut front = Vec::new();
        let mut back = Vec::new();
        while x != y {
            if self.depth[x] >= self.depth[y] {
                front.push(x);
                x = self.parent[x].expect("non-root has a parent");
            } else {
                back.push(y);
                y = self.parent[y].expect("non-root has a parent");
            }
        }
        front.push(x);
        front.extend(back.into_iter().rev());
        front
    }

    pub fn path_edges(&self, a: NodeId, b: NodeId) -> Vec<(NodeId, NodeId)> {
        self.path_nodes(a, b).windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Internal nodes of the path from `a` to `b`.
    pub fn internal_nodes(&self, a: NodeId, b: NodeId) -> Vec<NodeId> {
        let nodes = self.path_nodes(a, b);
        nodes[1..nodes.len().saturating_sub(1).max(1)].to_vec()
    }

    pub fn distance(&self, a: NodeId, b: NodeId) -> usize {
        self.path_nodes(a, b).len() - 1
    }

    /// Number of edges on a longest path.
    pub fn diameter(&self) -> usize {
        let n = self.depth.len();
        let far = |src: NodeId| -> (NodeId, usize) {
            let mut dist = vec![usize::MAX; n];
            dist[src] = 0;
            let mut queue = VecDeque::from([src]);
            let mut best = (src, 0);
            while let Some(u) = queue.pop_front() {
                if dist[u] > best.1 {
                    best = (u, dist[u]);
                }
                for &w in &self.adjacency[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            best
        };
        let (end, _) = far(0);
        far(end).1
    }
}

/// A simple costed graph; the input of the 2ECSS cut LP and of inflation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostedGraph {
    pub n: usize,
    pub edges: Vec<Edge>,
}

impl CostedGraph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let g = CostedGraph { n, edges };
        g.validate()?;
        Ok(g)
    }

    /// Range, loop, duplicate and sign checks; connectivity is not required.
    pub fn validate(&self) -> Result<(), ValidationError> {
        let mut seen = HashSet::new();
        for e in &self.edges {
            check_pair(self.n, e.u, e.v)?;
            if e.cost.is_negative() {
                return Err(ValidationError::NegativeCost(e.u, e.v));
            }
            if !seen.insert(e.endpoints()) {
                return Err(ValidationError::DuplicateEdge(e.u, e.v));
            }
        }
        Ok(())
    }

    pub fn pairs(&self) -> Vec<(NodeId, NodeId)> {
        self.edges.iter().map(Edge::endpoints).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    pub fn cost_of(&self, x: &[Rational]) -> Rational {
        self.edges
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (e, xe)| acc + &e.cost * xe)
    }
}

/// A 2-node-connected costed graph: an instance of min-cost 2NCSS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcssInstance(CostedGraph);

impl NcssInstance {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        Self::from_graph(CostedGraph { n, edges })
    }

    pub fn from_graph(graph: CostedGraph) -> Result<Self> {
        if graph.n < 3 {
            return Err(ValidationError::TooFewNodes(graph.n).into());
        }
        graph.validate()?;
        let sub = crate::connectivity::EdgeSubgraph::new(graph.n, graph.pairs());
        if !crate::connectivity::is_2nc(&sub) {
            return Err(ValidationError::Not2NC.into());
        }
        Ok(NcssInstance(graph))
    }

    pub fn graph(&self) -> &CostedGraph {
        &self.0
    }

    pub fn into_graph(self) -> CostedGraph {
        self.0
    }
}

impl std::ops::Deref for NcssInstance {
    type Target = CostedGraph;

    fn deref(&self) -> &CostedGraph {
        &self.0
    }
}

/// A proper partition; blocks are sorted and ordered by their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<NodeId>>,
}

impl Partition {
    pub fn from_blocks(blocks: Vec<Vec<NodeId>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::BadParams("empty block in partition".into()));
            }
            block.sort_unstable();
            for &v in block.iter() {
                if !seen.insert(v) {
                    return Err(Error::BadParams(format!("node {v} appears in two blocks")));
                }
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<NodeId>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn ground_set(&self) -> Vec<NodeId> {
        let mut all: Vec<_> = self.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    pub fn block_of(&self, v: NodeId) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&v).is_ok())
    }

    /// Dense lookup table `node -> block index`, `None` outside the ground set.
    pub fn block_table(&self, n: usize) -> Vec<Option<usize>> {
        let mut table = vec![None; n];
        for (i, block) in self.blocks.iter().enumerate() {
            for &v in block {
                table[v] = Some(i);
            }
        }
        table
    }

    /// True iff both ends are in the ground set and in different blocks.
    pub fn crosses(&self, a: NodeId, b: NodeId) -> bool {
        match (self.block_of(a), self.block_of(b)) {
            (Some(x), Some(y)) => x != y,
            _ => false,
        }
    }
}
