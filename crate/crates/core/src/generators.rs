//! Instance families, seeded random instances and cost scaling.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connectivity::{is_2nc_fast, EdgeSubgraph};
use crate::error::{Error, Result};
use crate::instance::{CostedGraph, Edge, NodeId, RootedTree, TapInstance};
use crate::rational::{frac, int, Rational};

/// Family names understood by the command line.
pub const FAMILIES: &[&str] = &[
    "tight-path",
    "chained",
    "star-cycle",
    "fig3-gap",
    "ckkk",
    "triangle",
    "random",
];

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParams(msg.into())
}

/// Path `0 - 1 - ... - lam`, short links `{k-1, k+1}` of cost `1/k` for
/// `k = 1..lam-1` and the long link `{0, lam}` of cost `1 + eps`.
///
/// For `lam = 2` the long link and the only short link join the same pair;
/// parallel links are not allowed, so only the cheaper one (cost 1) is kept.
pub fn gen_tight_path(lam: usize, eps: &Rational) -> Result<TapInstance> {
    if lam < 2 {
        return Err(bad("lambda must be at least 2"));
    }
    if *eps <= Rational::zero() {
        return Err(bad("eps must be positive"));
    }
    let tree = (0..lam).map(|i| (i, i + 1)).collect();
    let mut links: Vec<(NodeId, NodeId, Rational)> = (1..lam).map(|k| (k - 1, k + 1, frac(1, k as i64))).collect();
    if lam > 2 {
        links.push((0, lam, Rational::one() + eps));
    }
    TapInstance::new(lam + 1, tree, links)
}

/// `k` copies of the tight path, copy `i` on nodes `i(lam+1)..`, joined by
/// tree edges between consecutive first nodes and zero-cost links between
/// consecutive second nodes.
pub fn gen_chained(lam: usize, k: usize, eps: &Rational) -> Result<TapInstance> {
    if lam < 3 {
        return Err(bad("lambda must be at least 3"));
    }
    if k < 1 {
        return Err(bad("k must be at least 1"));
    }
    let single = gen_tight_path(lam, eps)?;
    let width = lam + 1;
    let mut tree = Vec::new();
    let mut links = Vec::new();
    for i in 0..k {
        let off = i * width;
        tree.extend(single.tree_edges.iter().map(|&(a, b)| (a + off, b + off)));
        links.extend(single.links.iter().map(|l| (l.u + off, l.v + off, l.cost.clone())));
        if i > 0 {
            tree.push((off - width, off));
            links.push((off - width + 1, off + 1, Rational::zero()));
        }
    }
    TapInstance::new(k * width, tree, links)
}

/// Star centred at 0 with a unit-cost cycle `1, 2, ..., n-1, 1` on the leaves.
pub fn gen_star_cycle(n: usize) -> Result<TapInstance> {
    if n < 4 {
        return Err(bad("star-cycle needs n >= 4"));
    }
    let tree = (1..n).map(|i| (0, i)).collect();
    let links = (1..n).map(|i| (i, if i + 1 < n { i + 1 } else { 1 }, int(1))).collect();
    TapInstance::new(n, tree, links)
}

/// Root 0 with children 1..3; child `i` has leaves `3+i` and `6+i`. Unit
/// links form a triangle on 4, 5, 6 and one on 7, 8, 9.
pub fn gen_fig3_gap() -> TapInstance {
    let mut tree = Vec::new();
    for i in 1..=3 {
        tree.extend([(0, i), (i, 3 + i), (i, 6 + i)]);
    }
    let mut links = Vec::new();
    for base in [4, 7] {
        links.extend([(base, base + 1, int(1)), (base, base + 2, int(1)), (base + 1, base + 2, int(1))]);
    }
    TapInstance::new(10, tree, links).expect("fixed instance is valid")
}

/// Tree path a0..a4 (nodes 0..4) with pendant leaves b1, b2, b3 (nodes 5..7)
/// at a1, a2, a3, and seven unit links. Meant for 2-edge-connectivity.
pub fn gen_ckkk_tap() -> TapInstance {
    let tree = vec![(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (2, 6), (3, 7)];
    let links = [(0, 5), (5, 6), (6, 7), (7, 4), (5, 3), (6, 4), (0, 2)]
        .into_iter()
        .map(|(u, v)| (u, v, int(1)))
        .collect();
    TapInstance::new(8, tree, links).expect("fixed instance is valid")
}

/// A cut-feasible fractional point of cost 3 on the ckkk instance, in link order.
pub fn ckkk_fractional_x() -> Vec<Rational> {
    let (a, b) = (frac(1, 3), frac(2, 3));
    vec![a.clone(), a.clone(), a.clone(), b.clone(), a.clone(), a, b]
}

/// Path 0 - 1 - 2 with the link {0, 2} of cost 5.
pub fn gen_triangle_tap() -> TapInstance {
    TapInstance::new(3, vec![(0, 1), (1, 2)], vec![(0, 2, int(5))]).expect("fixed instance is valid")
}

/// The unit-cost triangle as a graph.
pub fn triangle_graph() -> CostedGraph {
    CostedGraph::new(3, (0..3).map(|i| Edge::new(i, (i + 1) % 3, int(1))).collect()).expect("fixed graph is valid")
}

/// Link costs are `k / denom` with `k` uniform in `lo·denom ..= hi·denom`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostRange {
    pub lo: u32,
    pub hi: u32,
    pub denom: u32,
}

impl Default for CostRange {
    fn default() -> Self {
        CostRange { lo: 1, hi: 10, denom: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomParams {
    pub n: usize,
    pub max_lambda: usize,
    pub density: f64,
    pub costs: CostRange,
    pub seed: u64,
}

/// Attempts before giving up on a 2-node-connected sample.
pub const RANDOM_ATTEMPTS: usize = 200;

/// Uniform spanning tree of the complete graph by the Aldous-Broder walk.
fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Vec<(NodeId, NodeId)> {
    let mut seen = vec![false; n];
    let mut at = rng.gen_range(0..n);
    seen[at] = true;
    let mut edges = Vec::with_capacity(n - 1);
    while edges.len() + 1 < n {
        let mut next = rng.gen_range(0..n - 1);
        if next >= at {
            next += 1;
        }
        if !seen[next] {
            seen[next] = true;
            edges.push((at.min(next), at.max(next)));
        }
        at = next;
    }
    edges
}

/// Seeded random instance: a uniform spanning tree plus each non-tree pair
/// at tree distance at most `max_lambda` kept with probability `density`.
/// Samples are redrawn until `T ∪ L` is 2-node connected.
pub fn gen_random_tap(p: &RandomParams) -> Result<TapInstance> {
    if p.n < 3 {
        return Err(bad("random instances need n >= 3"));
    }
    if !(0.0..=1.0).contains(&p.density) {
        return Err(bad("density must lie in [0, 1]"));
    }
    let CostRange { lo, hi, denom } = p.costs;
    if denom == 0 || lo > hi {
        return Err(bad("cost range must satisfy lo <= hi and denom > 0"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for _ in 0..RANDOM_ATTEMPTS {
        let tree = random_tree(p.n, &mut rng);
        let rooted = RootedTree::new(p.n, &tree);
        let mut links = Vec::new();
        for u in 0..p.n {
            for v in u + 1..p.n {
                let d = rooted.distance(u, v);
                if d < 2 || d > p.max_lambda || !rng.gen_bool(p.density) {
                    continue;
                }
                let k = rng.gen_range(u64::from(lo) * u64::from(denom)..=u64::from(hi) * u64::from(denom));
                links.push((u, v, Rational::new((k as i64).into(), i64::from(denom).into())));
            }
        }
        let mut edges = tree.clone();
        edges.extend(links.iter().map(|&(u, v, _)| (u, v)));
        if is_2nc_fast(&EdgeSubgraph::new(p.n, edges)) {
            return TapInstance::new(p.n, tree, links);
        }
    }
    Err(Error::Infeasible(format!(
        "no 2-node-connected sample in {RANDOM_ATTEMPTS} attempts"
    )))
}

/// Multiplies every link cost by `factor`.
pub fn scale_tap(instance: &TapInstance, factor: &Rational) -> TapInstance {
    let mut out = instance.clone();
    for l in &mut out.links {
        l.cost = &l.cost * factor;
    }
    out
}

/// Multiplies every edge cost by `factor`.
pub fn scale_graph(graph: &CostedGraph, factor: &Rational) -> CostedGraph {
    let mut out = graph.clone();
    for e in &mut out.edges {
        e.cost = &e.cost * factor;
    }
    out
}
