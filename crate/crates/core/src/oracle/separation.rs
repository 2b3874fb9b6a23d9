//! Exhaustive separation for partition rows and cut rows.
//!
//! Rows come back in the variable space of the point being separated: link
//! ids for TAP, edge indices for general graphs. Among equally violated rows
//! the first one in scan order wins, so results are deterministic.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::instance::{components_without, CostedGraph, NodeId, Partition, TapInstance};
use crate::oracle::coarsen::{coarsen, MAX_BLOCKS};
use crate::oracle::model::Row;
use crate::rational::{int, Rational};

/// Largest graph whose cuts are enumerated one by one.
pub const CUT_ENUM_CAP: usize = 18;
/// Largest graph handed to the exact minimum-cut routine.
pub const MIN_CUT_CAP: usize = 64;

/// Arithmetic used by the scans: scaled `i128` when the point allows it,
/// exact rationals otherwise.
pub(crate) trait Weight: Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> {}
impl<T: Clone + Ord + Zero + Add<Output = T> + Sub<Output = T>> Weight for T {}

/// `x·d` as integers for the least common denominator `d`, if everything
/// stays comfortably inside `i128`.
pub(crate) fn scale(x: &[Rational]) -> Option<(Vec<i128>, i128)> {
    let d = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let d64 = d.to_i64()?;
    let nums = x
        .iter()
        .map(|v| (v.numer() * (&d / v.denom())).to_i64().map(i128::from))
        .collect::<Option<Vec<_>>>()?;
    Some((nums, i128::from(d64)))
}

/// Scans the set partitions of `0..k` in restricted-growth order and returns
/// the labels maximising `units[groups - 1] - crossing`, where `crossing` is
/// the total pair weight between different groups. `pair[i][j]` is read for
/// `j < i`.
pub(crate) fn best_grouping<T: Weight>(pair: &[Vec<T>], units: &[T]) -> (T, Vec<usize>) {
    struct Scan<'a, T> {
        pair: &'a [Vec<T>],
        units: &'a [T],
        total: T,
        labels: Vec<usize>,
        best: Option<(T, Vec<usize>)>,
    }

    impl<T: Weight> Scan<'_, T> {
        fn visit(&mut self, i: usize, groups: usize, internal: T) {
            let k = self.labels.len();
            if i == k {
                let value = self.units[groups.max(1) - 1].clone() + internal - self.total.clone();
                if self.best.as_ref().is_none_or(|(b, _)| value > *b) {
                    self.best = Some((value, self.labels.clone()));
                }
                return;
            }
            for g in 0..=groups {
                if i == 0 && g > 0 {
                    break;
                }
                self.labels[i] = g;
                let mut inner = internal.clone();
                for j in 0..i {
                    if self.labels[j] == g {
                        inner = inner + self.pair[i][j].clone();
                    }
                }
                self.visit(i + 1, groups.max(g + 1), inner);
            }
        }
    }

    let k = pair.len();
    let mut total = T::zero();
    for (i, row) in pair.iter().enumerate() {
        for w in &row[..i] {
            total = total + w.clone();
        }
    }
    let mut scan = Scan {
        pair,
        units,
        total,
        labels: vec![0; k],
        best: None,
    };
    scan.visit(0, 0, T::zero());
    scan.best.expect("at least one grouping")
}

/// Finds the most violated partition row over coarsenings of `base`.
/// `weighted` lists `(a, b, x)` with `a, b` endpoints already mapped to
/// block indices. Returns the labels and the violation.
fn best_coarsening(k: usize, weighted: &[(usize, usize, Rational)]) -> (Rational, Vec<usize>) {
    let xs: Vec<Rational> = weighted.iter().map(|(_, _, x)| x.clone()).collect();
    if let Some((nums, d)) = scale(&xs) {
        let mut pair = vec![vec![0i128; k]; k];
        for ((a, b, _), v) in weighted.iter().zip(&nums) {
            let (hi, lo) = if a > b { (*a, *b) } else { (*b, *a) };
            pair[hi][lo] += v;
        }
        let units: Vec<i128> = (0..k.max(1)).map(|g| g as i128 * d).collect();
        let (value, labels) = best_grouping(&pair, &units);
        (Rational::new(value.into(), d.into()), labels)
    } else {
        let mut pair = vec![vec![Rational::zero(); k]; k];
        for (a, b, x) in weighted {
            let (hi, lo) = if a > b { (*a, *b) } else { (*b, *a) };
            pair[hi][lo] += x;
        }
        let units: Vec<Rational> = (0..k.max(1)).map(|g| int(g as i64)).collect();
        best_grouping(&pair, &units)
    }
}

/// The partition row of TAP node `u` for the coarsening `p`: every link not
/// touching `u` whose ends lie in different blocks, right-hand side
/// `|p| - 1`.
pub fn tap_row(instance: &TapInstance, u: NodeId, p: &Partition) -> Row {
    let table = p.block_table(instance.n);
    let coeffs = instance
        .links
        .iter()
        .filter(|l| !l.touches(u))
        .filter(|l| table[l.u] != table[l.v])
        .map(|l| (l.id, Rational::one()))
        .collect();
    Row {
        label: format!("part_u{u}"),
        coeffs,
        rhs: int(p.len() as i64 - 1),
    }
}

fn check_blocks(base: &Partition) -> Result<()> {
    if base.len() > MAX_BLOCKS {
        return Err(Error::TooManyBlocks {
            blocks: base.len(),
            cap: MAX_BLOCKS,
        });
    }
    Ok(())
}

/// Most violated partition row of node `u` with its violation.
fn separate_tap_node(instance: &TapInstance, u: NodeId, x: &[Rational]) -> Result<(Rational, Row)> {
    let base = instance.components_partition(u)?;
    check_blocks(&base)?;
    let table = base.block_table(instance.n);
    let weighted: Vec<(usize, usize, Rational)> = instance
        .links
        .iter()
        .filter(|l| !l.touches(u) && !x[l.id].is_zero())
        .filter_map(|l| {
            let (a, b) = (table[l.u]?, table[l.v]?);
            (a != b).then(|| (a, b, x[l.id].clone()))
        })
        .collect();
    let (violation, labels) = best_coarsening(base.len(), &weighted);
    Ok((violation, tap_row(instance, u, &coarsen(&base, &labels))))
}

/// Scans every non-leaf node and every coarsening of its tree components
/// and returns a most violated row, or `None` if `x` satisfies them all.
pub fn separate_tap(instance: &TapInstance, x: &[Rational]) -> Result<Option<Row>> {
    let mut best: Option<(Rational, Row)> = None;
    for u in instance.nonleaf_nodes() {
        let (v, row) = separate_tap_node(instance, u, x)?;
        if v.is_positive() && best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, row));
        }
    }
    Ok(best.map(|(_, r)| r))
}

/// One most violated row per node that has one, in node order.
pub fn separate_tap_all(instance: &TapInstance, x: &[Rational]) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for u in instance.nonleaf_nodes() {
        let (v, row) = separate_tap_node(instance, u, x)?;
        if v.is_positive() {
            rows.push(row);
        }
    }
    Ok(rows)
}

/// A cut `δ(S)` with `S` never containing node `n - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub side: Vec<NodeId>,
    pub value: Rational,
}

/// Minimum cut by enumerating all `2^(n-1) - 1` sides in Gray-code order.
pub fn min_cut_exhaustive(n: usize, edges: &[(NodeId, NodeId)], x: &[Rational]) -> Result<Cut> {
    if n > CUT_ENUM_CAP {
        return Err(Error::InstanceTooLarge(format!(
            "{n} nodes, cut enumeration is capped at {CUT_ENUM_CAP}"
        )));
    }
    if n < 2 {
        return Err(Error::BadParams("a cut needs two nodes".into()));
    }
    fn scan<T: Weight>(n: usize, edges: &[(NodeId, NodeId)], w: &[T]) -> (T, u64) {
        let mut adj: Vec<Vec<(NodeId, usize)>> = vec![Vec::new(); n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        let mut mask = 0u64;
        let mut value = T::zero();
        let mut best: Option<(T, u64)> = None;
        for step in 1u64..(1u64 << (n - 1)) {
            let v = step.trailing_zeros() as usize;
            let inside = mask >> v & 1 == 1;
            for &(other, e) in &adj[v] {
                let other_inside = other < n - 1 && mask >> other & 1 == 1;
                if other_inside == inside {
                    value = value + w[e].clone();
                } else {
                    value = value - w[e].clone();
                }
            }
            mask ^= 1 << v;
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                best = Some((value.clone(), mask));
            }
        }
        best.expect("n >= 2 gives a cut")
    }
    let (value, mask) = match scale(x) {
        Some((w, d)) => {
            let (v, m) = scan(n, edges, &w);
            (Rational::new(v.into(), d.into()), m)
        }
        None => scan(n, edges, x),
    };
    let side = (0..n - 1).filter(|&v| mask >> v & 1 == 1).collect();
    Ok(Cut { side, value })
}

/// Exact Stoer-Wagner minimum cut.
pub fn min_cut_stoer_wagner(n: usize, edges: &[(NodeId, NodeId)], x: &[Rational]) -> Result<Cut> {
    if n > MIN_CUT_CAP {
        return Err(Error::InstanceTooLarge(format!(
            "{n} nodes, minimum cut is capped at {MIN_CUT_CAP}"
        )));
    }
    if n < 2 {
        return Err(Error::BadParams("a cut needs two nodes".into()));
    }
    fn run<T: Weight>(n: usize, edges: &[(NodeId, NodeId)], x: &[T]) -> (T, Vec<NodeId>) {
        let mut w = vec![vec![T::zero(); n]; n];
        for (&(a, b), v) in edges.iter().zip(x) {
            w[a][b] = w[a][b].clone() + v.clone();
            w[b][a] = w[b][a].clone() + v.clone();
        }
        let mut groups: Vec<Vec<NodeId>> = (0..n).map(|v| vec![v]).collect();
        let mut active: Vec<NodeId> = (0..n).collect();
        let mut best: Option<(T, Vec<NodeId>)> = None;
        while active.len() > 1 {
            let mut added = vec![false; n];
            let mut key = vec![T::zero(); n];
            let (mut prev, mut last) = (active[0], active[0]);
            for step in 0..active.len() {
                let v = active
                    .iter()
                    .copied()
                    .filter(|&v| !added[v])
                    .reduce(|a, b| if key[b] > key[a] { b } else { a })
                    .expect("unadded node remains");
                added[v] = true;
                if step > 0 {
                    prev = last;
                }
                last = v;
                for &u in &active {
                    if !added[u] {
                        key[u] = key[u].clone() + w[v][u].clone();
                    }
                }
            }
            let (s, t) = (prev, last);
            if best.as_ref().is_none_or(|(b, _)| key[t] < *b) {
                best = Some((key[t].clone(), groups[t].clone()));
            }
            let moved = std::mem::take(&mut groups[t]);
            groups[s].extend(moved);
            for &u in &active {
                let add = w[t][u].clone();
                w[s][u] = w[s][u].clone() + add;
                w[u][s] = w[s][u].clone();
            }
            w[s][s] = T::zero();
            active.retain(|&v| v != t);
        }
        best.expect("n >= 2 gives a phase")
    }
    let (value, side) = match scale(x) {
        Some((w, d)) => {
            let (v, s) = run(n, edges, &w);
            (Rational::new(v.into(), d.into()), s)
        }
        None => run(n, edges, x),
    };
    let mut side = if side.contains(&(n - 1)) {
        (0..n).filter(|v| !side.contains(v)).collect()
    } else {
        side
    };
    side.sort_unstable();
    Ok(Cut { side, value })
}

/// Minimum cut, by enumeration up to [`CUT_ENUM_CAP`] nodes and by
/// Stoer-Wagner above.
pub fn min_cut(n: usize, edges: &[(NodeId, NodeId)], x: &[Rational]) -> Result<Cut> {
    if n <= CUT_ENUM_CAP {
        min_cut_exhaustive(n, edges, x)
    } else {
        min_cut_stoer_wagner(n, edges, x)
    }
}

/// The row `x(δ(S)) >= 2` over edge indices.
pub fn cut_row(graph: &CostedGraph, side: &[NodeId]) -> Row {
    let mut inside = vec![false; graph.n];
    for &v in side {
        inside[v] = true;
    }
    let coeffs = graph
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| inside[e.u] != inside[e.v])
        .map(|(i, _)| (i, Rational::one()))
        .collect();
    Row {
        label: "cut".into(),
        coeffs,
        rhs: int(2),
    }
}

/// Most violated cut row for an edge vector `x`, if any.
pub fn separate_cut(graph: &CostedGraph, x: &[Rational]) -> Result<Option<Row>> {
    Ok(violated_cut(graph, x)?.map(|(_, row)| row))
}

fn violated_cut(graph: &CostedGraph, x: &[Rational]) -> Result<Option<(Rational, Row)>> {
    let cut = min_cut(graph.n, &graph.pairs(), x)?;
    let violation = int(2) - &cut.value;
    Ok(violation
        .is_positive()
        .then(|| (violation, cut_row(graph, &cut.side))))
}

/// Components of the zero-cost subgraph with `w` deleted.
pub fn zero_cost_components(graph: &CostedGraph, w: NodeId) -> Partition {
    let zero: Vec<_> = graph
        .edges
        .iter()
        .filter(|e| e.cost.is_zero() && e.u != w && e.v != w)
        .map(|e| (e.u, e.v))
        .collect();
    components_without(graph.n, &zero, Some(w))
}

/// The partition row of node `w` for a coarsening `p` of the zero-cost
/// components of `G - w`, over edge indices.
pub fn ncss_partition_row(graph: &CostedGraph, w: NodeId, p: &Partition) -> Row {
    let table = p.block_table(graph.n);
    let coeffs = graph
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.u != w && e.v != w && table[e.u] != table[e.v])
        .map(|(i, _)| (i, Rational::one()))
        .collect();
    Row {
        label: format!("part_w{w}"),
        coeffs,
        rhs: int(p.len() as i64 - 1),
    }
}

fn separate_ncss_node(graph: &CostedGraph, w: NodeId, x: &[Rational]) -> Result<(Rational, Row)> {
    let base = zero_cost_components(graph, w);
    check_blocks(&base)?;
    let table = base.block_table(graph.n);
    let weighted: Vec<(usize, usize, Rational)> = graph
        .edges
        .iter()
        .zip(x)
        .filter(|(e, v)| e.u != w && e.v != w && !v.is_zero())
        .filter_map(|(e, v)| {
            let (a, b) = (table[e.u]?, table[e.v]?);
            (a != b).then(|| (a, b, v.clone()))
        })
        .collect();
    let (violation, labels) = best_coarsening(base.len(), &weighted);
    Ok((violation, ncss_partition_row(graph, w, &coarsen(&base, &labels))))
}

/// Checks all cuts and, for every node `w`, all coarsenings of the
/// zero-cost components of `G - w`. A cut wins ties against partition rows,
/// and earlier nodes win ties among partition rows.
pub fn separate_ncss(graph: &CostedGraph, x: &[Rational]) -> Result<Option<Row>> {
    let mut best = violated_cut(graph, x)?;
    for w in 0..graph.n {
        let (v, row) = separate_ncss_node(graph, w, x)?;
        if v.is_positive() && best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, row));
        }
    }
    Ok(best.map(|(_, r)| r))
}

/// The violated cut, if any, followed by one most violated partition row per
/// node that has one.
pub fn separate_ncss_all(graph: &CostedGraph, x: &[Rational]) -> Result<Vec<Row>> {
    let mut rows: Vec<Row> = violated_cut(graph, x)?.into_iter().map(|(_, r)| r).collect();
    for w in 0..graph.n {
        let (v, row) = separate_ncss_node(graph, w, x)?;
        if v.is_positive() {
            rows.push(row);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Edge;
    use crate::rational::frac;

    fn star(n: usize) -> TapInstance {
        let tree = (1..n).map(|i| (0, i)).collect();
        let links = (1..n).map(|i| (i, if i + 1 < n { i + 1 } else { 1 }, int(1))).collect();
        TapInstance::new(n, tree, links).unwrap()
    }

    #[test]
    fn star_half_point_violates_center_row() {
        let inst = star(5);
        let x = vec![frac(1, 2); 4];
        let row = separate_tap(&inst, &x).unwrap().unwrap();
        assert_eq!(row.rhs, int(3));
        assert_eq!(row.activity(&x), int(2));
        assert_eq!(row.coeffs.len(), 4);
    }

    #[test]
    fn feasible_points_pass() {
        let inst = star(5);
        assert!(separate_tap(&inst, &vec![int(1); 4]).unwrap().is_none());
        assert!(separate_tap(&inst, &[int(1), int(1), int(1), int(0)]).unwrap().is_none());
        assert!(separate_tap(&inst, &[int(1), int(1), int(0), int(0)]).unwrap().is_some());
    }

    #[test]
    fn scaled_and_exact_grouping_agree() {
        let pair = vec![vec![0, 0, 0], vec![3, 0, 0], vec![1, 2, 0]];
        let units = vec![0, 4, 8];
        let (v, labels) = best_grouping(&pair, &units);
        let pr: Vec<Vec<Rational>> = pair.iter().map(|r| r.iter().map(|&a| int(a)).collect()).collect();
        let ur: Vec<Rational> = units.iter().map(|&a| int(a)).collect();
        let (vr, lr) = best_grouping(&pr, &ur);
        assert_eq!(int(v), vr);
        assert_eq!(labels, lr);
        // three singletons: 8 - 6 = 2
        assert_eq!(v, 2);
        assert_eq!(labels, vec![0, 1, 2]);
    }

    #[test]
    fn scale_uses_common_denominator() {
        let (nums, d) = scale(&[frac(1, 2), frac(2, 3), int(4)]).unwrap();
        assert_eq!(d, 6);
        assert_eq!(nums, vec![3, 4, 24]);
    }

    fn cycle_graph(n: usize) -> CostedGraph {
        CostedGraph::new(n, (0..n).map(|i| Edge::new(i, (i + 1) % n, int(1))).collect()).unwrap()
    }

    #[test]
    fn min_cut_on_cycle() {
        let g = cycle_graph(6);
        let x = vec![int(1); 6];
        let a = min_cut_exhaustive(6, &g.pairs(), &x).unwrap();
        let b = min_cut_stoer_wagner(6, &g.pairs(), &x).unwrap();
        assert_eq!(a.value, int(2));
        assert_eq!(b.value, int(2));
        assert!(!b.side.contains(&5));
        assert!(separate_cut(&g, &x).unwrap().is_none());
        let half = vec![frac(1, 2); 6];
        let row = separate_cut(&g, &half).unwrap().unwrap();
        assert_eq!(row.activity(&half), int(1));
    }

    #[test]
    fn enumeration_cap() {
        let g = cycle_graph(19);
        assert!(matches!(
            min_cut_exhaustive(19, &g.pairs(), &vec![int(1); 19]),
            Err(Error::InstanceTooLarge(_))
        ));
        assert_eq!(min_cut(19, &g.pairs(), &vec![int(1); 19]).unwrap().value, int(2));
    }

    #[test]
    fn inflated_triangle_cut_is_violated() {
        // 6-cycle: clique edges 0-1, 2-3, 4-5 at zero cost
        let edges = vec![
            Edge::new(1, 2, int(1)),
            Edge::new(3, 4, int(1)),
            Edge::new(5, 0, int(1)),
            Edge::new(0, 1, int(0)),
            Edge::new(2, 3, int(0)),
            Edge::new(4, 5, int(0)),
        ];
        let g = CostedGraph::new(6, edges).unwrap();
        assert!(separate_ncss(&g, &vec![int(1); 6]).unwrap().is_none());
        let x = vec![frac(1, 2), frac(1, 2), frac(1, 2), int(1), int(1), int(1)];
        let row = separate_ncss(&g, &x).unwrap().unwrap();
        assert_eq!(row.label, "cut");
        assert_eq!(row.activity(&x), int(1));
    }
}
