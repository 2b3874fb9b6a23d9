//! Dual fitting for greedy runs.
//!
//! For each non-leaf node `u`, the partitions that received weights during the
//! run form a chain of coarsenings `P^1_u, ..., P^k_u`. The dual values are the
//! first weight and then the successive weight differences. Scaled by
//! `1 / H(λ-1)` they form a feasible solution of the dual partition LP whose
//! objective is `cost(F̂) / H(λ-1)`, which certifies the approximation bound
//! for that particular run.
//!
//! Certificates are self-contained: a snapshot is stored as a list of block
//! representatives over the components of `T - u`, and [`verify`] re-expands
//! everything against the instance.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::connectivity::is_feasible_augmentation;
use crate::error::{Error, Result};
use crate::greedy::{greedy_solve, GreedyTrace};
use crate::instance::{Cost, Link, NodeId, TapInstance};
use crate::io::tap_digest;
use crate::rational::{harmonic, serde_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSnapshot {
    /// Entry `k` is the least node of the block containing the `k`-th
    /// component of `T - u` (components ordered by least node).
    pub reps: Vec<NodeId>,
    pub blocks: usize,
    #[serde(with = "serde_rational")]
    pub weight: Rational,
    #[serde(with = "serde_rational")]
    pub y: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDual {
    pub node: NodeId,
    /// `ν(u)`, the number of components of `T - u`.
    pub base_blocks: usize,
    pub snapshots: Vec<WeightedSnapshot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCertificate {
    pub instance_digest: String,
    pub lambda: usize,
    /// `H(λ-1)`.
    #[serde(with = "serde_rational")]
    pub harmonic: Rational,
    #[serde(with = "serde_rational")]
    pub greedy_cost: Cost,
    pub picked: Vec<usize>,
    pub nodes: Vec<NodeDual>,
}

/// Node-to-component lookup for `T - u`.
struct BaseComponents {
    component: Vec<Option<usize>>,
    anchors: Vec<NodeId>,
}

impl BaseComponents {
    fn new(instance: &TapInstance, u: NodeId) -> Result<Self> {
        let base = instance.components_partition(u)?;
        Ok(BaseComponents {
            component: base.block_table(instance.n),
            anchors: base.blocks().iter().map(|b| b[0]).collect(),
        })
    }

    fn crosses(&self, snapshot: &WeightedSnapshot, link: &Link) -> bool {
        match (self.component[link.u], self.component[link.v]) {
            (Some(a), Some(b)) => snapshot.reps[a] != snapshot.reps[b],
            _ => false,
        }
    }
}

/// Turns a greedy trace into the fitted dual solution.
pub fn build_dual(trace: &GreedyTrace, instance: &TapInstance) -> Result<DualCertificate> {
    for pair in trace.iterations.windows(2) {
        if pair[1].ratio < pair[0].ratio {
            return Err(Error::MalformedTrace(format!(
                "weights out of order: {} after {}",
                pair[1].ratio, pair[0].ratio
            )));
        }
    }
    let lambda = instance.lambda()?;
    let degree = instance.tree_degree();
    let mut nodes: Vec<NodeDual> = instance
        .nonleaf_nodes()
        .into_iter()
        .map(|u| NodeDual {
            node: u,
            base_blocks: degree[u],
            snapshots: Vec::new(),
        })
        .collect();
    for it in &trace.iterations {
        if it.link >= instance.links.len() {
            return Err(Error::MalformedTrace(format!("unknown link {}", it.link)));
        }
        for cp in &it.covered {
            let nd = nodes
                .iter_mut()
                .find(|nd| nd.node == cp.node)
                .ok_or_else(|| Error::MalformedTrace(format!("node {} is not a non-leaf node", cp.node)))?;
            if cp.index != nd.snapshots.len() {
                return Err(Error::MalformedTrace(format!(
                    "duplicate or missing snapshot {} of node {}",
                    cp.index, cp.node
                )));
            }
            if cp.blocks + cp.index != nd.base_blocks || cp.reps.len() != nd.base_blocks {
                return Err(Error::MalformedTrace(format!(
                    "snapshot {} of node {} has the wrong shape",
                    cp.index, cp.node
                )));
            }
            let y = match nd.snapshots.last() {
                Some(prev) => &it.ratio - &prev.weight,
                None => it.ratio.clone(),
            };
            nd.snapshots.push(WeightedSnapshot {
                reps: cp.reps.clone(),
                blocks: cp.blocks,
                weight: it.ratio.clone(),
                y,
            });
        }
    }
    let picked = trace.picked();
    Ok(DualCertificate {
        instance_digest: tap_digest(instance),
        lambda,
        harmonic: harmonic(lambda - 1),
        greedy_cost: instance.total_cost(&picked),
        picked,
        nodes,
    })
}

pub fn check_nonnegative(cert: &DualCertificate) -> bool {
    cert.nodes
        .iter()
        .flat_map(|nd| &nd.snapshots)
        .all(|s| !s.y.is_negative())
}

/// Total dual value over partitions crossed by `link`.
pub fn link_load(cert: &DualCertificate, instance: &TapInstance, link: &Link) -> Result<Rational> {
    let mut load = Rational::zero();
    for nd in &cert.nodes {
        let base = BaseComponents::new(instance, nd.node)?;
        for s in nd.snapshots.iter().filter(|s| base.crosses(s, link)) {
            load += &s.y;
        }
    }
    Ok(load)
}

/// The same load computed by telescoping: the weight of the last crossed
/// snapshot of each node, summed.
pub fn link_load_telescoped(cert: &DualCertificate, instance: &TapInstance, link: &Link) -> Result<Rational> {
    let mut load = Rational::zero();
    for nd in &cert.nodes {
        let base = BaseComponents::new(instance, nd.node)?;
        if let Some(s) = nd.snapshots.iter().rev().find(|s| base.crosses(s, link)) {
            load += &s.weight;
        }
    }
    Ok(load)
}

/// Every link load is at most `H(λ-1) · cost`, i.e. `y / H(λ-1)` is dual feasible.
pub fn check_dual_feasible(cert: &DualCertificate, instance: &TapInstance) -> Result<bool> {
    for link in &instance.links {
        if link_load(cert, instance, link)? > &cert.harmonic * &link.cost {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ_u Σ_j (|P^j_u| - 1) · y^j_u`.
pub fn dual_objective(cert: &DualCertificate) -> Rational {
    cert.nodes
        .iter()
        .flat_map(|nd| &nd.snapshots)
        .fold(Rational::zero(), |acc, s| {
            acc + Rational::from_integer((s.blocks - 1).into()) * &s.y
        })
}

/// Dual objective scaled by `1 / H(λ-1)`: a lower bound on the LP optimum.
pub fn lower_bound(cert: &DualCertificate) -> Rational {
    dual_objective(cert) / &cert.harmonic
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioReport {
    pub lambda: usize,
    #[serde(with = "serde_rational")]
    pub harmonic: Rational,
    #[serde(with = "serde_rational")]
    pub greedy_cost: Cost,
    #[serde(with = "serde_rational")]
    pub lower_bound: Rational,
    /// `greedy_cost / lower_bound`; absent when the lower bound is zero.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub certified_ratio: Option<Rational>,
}

mod opt_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        r.as_ref().map(crate::rational::format).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        let raw = Option::<String>::deserialize(d)?;
        raw.map(|s| crate::rational::parse(&s).ok_or_else(|| serde::de::Error::custom("bad rational")))
            .transpose()
    }
}

/// Summary of a successful verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verified {
    pub report: RatioReport,
    pub dual_objective: Rational,
}

fn fail(name: &str) -> Error {
    Error::CheckFailed(name.to_string())
}

fn report_for(cert: &DualCertificate) -> RatioReport {
    let lb = lower_bound(cert);
    RatioReport {
        lambda: cert.lambda,
        harmonic: cert.harmonic.clone(),
        greedy_cost: cert.greedy_cost.clone(),
        certified_ratio: (!lb.is_zero()).then(|| &cert.greedy_cost / &lb),
        lower_bound: lb,
    }
}

/// Re-checks a certificate from scratch against its instance.
///
/// Checks run in a fixed order and the first failure is reported by name:
/// `digest`, `structure`, `nonnegativity`, `differences`, `lambda`,
/// `feasibility`, `accounting`, `dual-feasibility`.
pub fn verify(instance: &TapInstance, cert: &DualCertificate) -> Result<Verified> {
    let expected = tap_digest(instance);
    if cert.instance_digest != expected {
        return Err(Error::MismatchedDigest {
            expected,
            found: cert.instance_digest.clone(),
        });
    }
    check_structure(instance, cert)?;
    if !check_nonnegative(cert) {
        return Err(fail("nonnegativity"));
    }
    for nd in &cert.nodes {
        let mut prev = Rational::zero();
        for s in &nd.snapshots {
            if s.y != &s.weight - &prev {
                return Err(fail("differences"));
            }
            prev = s.weight.clone();
        }
    }
    let lambda = instance.lambda()?;
    if cert.lambda != lambda || cert.harmonic != harmonic(lambda - 1) {
        return Err(fail("lambda"));
    }
    if cert.picked.iter().any(|&id| id >= instance.links.len())
        || !is_feasible_augmentation(instance, &cert.picked)
    {
        return Err(fail("feasibility"));
    }
    let objective = dual_objective(cert);
    if instance.total_cost(&cert.picked) != cert.greedy_cost || objective != cert.greedy_cost {
        return Err(fail("accounting"));
    }
    if !check_dual_feasible(cert, instance)? {
        return Err(fail("dual-feasibility"));
    }
    Ok(Verified {
        report: report_for(cert),
        dual_objective: objective,
    })
}

fn check_structure(instance: &TapInstance, cert: &DualCertificate) -> Result<()> {
    let nonleaf = instance.nonleaf_nodes();
    let listed: Vec<NodeId> = cert.nodes.iter().map(|nd| nd.node).collect();
    if listed.iter().any(|u| !nonleaf.contains(u)) || {
        let mut sorted = listed.clone();
        sorted.dedup();
        sorted.len() != listed.len()
    } {
        return Err(fail("structure"));
    }
    for nd in &cert.nodes {
        let base = BaseComponents::new(instance, nd.node)?;
        let nu = base.anchors.len();
        if nd.base_blocks != nu || nd.snapshots.len() >= nu.max(1) {
            return Err(fail("structure"));
        }
        let mut prev: Option<&Vec<NodeId>> = None;
        for (j, s) in nd.snapshots.iter().enumerate() {
            if s.reps.len() != nu || s.blocks != nu - j {
                return Err(fail("structure"));
            }
            let mut distinct = 0;
            for (k, &r) in s.reps.iter().enumerate() {
                // a representative is the anchor of a component that labels itself
                let m = match base.anchors.iter().position(|&a| a == r) {
                    Some(m) => m,
                    None => return Err(fail("structure")),
                };
                if s.reps[m] != r || r > base.anchors[k] {
                    return Err(fail("structure"));
                }
                if m == k {
                    distinct += 1;
                }
            }
            if distinct != s.blocks {
                return Err(fail("structure"));
            }
            if let Some(p) = prev {
                for k in 0..nu {
                    for m in 0..nu {
                        if p[k] == p[m] && s.reps[k] != s.reps[m] {
                            return Err(fail("structure"));
                        }
                    }
                }
            }
            prev = Some(&s.reps);
        }
    }
    Ok(())
}

/// Solves, builds the certificate and verifies it.
pub fn certify(instance: &TapInstance) -> Result<(DualCertificate, Verified)> {
    let solution = greedy_solve(instance)?;
    let cert = build_dual(&solution.trace, instance)?;
    let verified = verify(instance, &cert)?;
    Ok((cert, verified))
}

pub fn ratio_certificate(instance: &TapInstance) -> Result<RatioReport> {
    certify(instance).map(|(_, v)| v.report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn triangle() -> TapInstance {
        TapInstance::new(3, vec![(0, 1), (1, 2)], vec![(0, 2, int(5))]).unwrap()
    }

    fn fig1() -> TapInstance {
        TapInstance::new(
            5,
            vec![(0, 1), (1, 2), (2, 3), (3, 4)],
            vec![(0, 2, int(6)), (1, 3, int(3)), (2, 4, int(2)), (0, 4, int(6) + frac(1, 100))],
        )
        .unwrap()
    }

    fn star_cycle(n: usize) -> TapInstance {
        let tree = (1..n).map(|i| (0, i)).collect();
        let links = (1..n).map(|i| (i, if i + 1 < n { i + 1 } else { 1 }, int(1))).collect();
        TapInstance::new(n, tree, links).unwrap()
    }

    fn ys(cert: &DualCertificate, u: NodeId) -> Vec<Rational> {
        cert.nodes.iter().find(|nd| nd.node == u).unwrap().snapshots.iter().map(|s| s.y.clone()).collect()
    }

    #[test]
    fn triangle_certificate() {
        let (cert, v) = certify(&triangle()).unwrap();
        assert_eq!(ys(&cert, 1), vec![int(5)]);
        assert_eq!(v.dual_objective, int(5));
        assert_eq!(v.report.lower_bound, int(5));
        assert_eq!(v.report.certified_ratio, Some(int(1)));
        let t = triangle();
        assert_eq!(link_load(&cert, &t, &t.links[0]).unwrap(), int(5));
        assert!(check_dual_feasible(&cert, &t).unwrap());
    }

    #[test]
    fn fig1_certificate() {
        let inst = fig1();
        let (cert, v) = certify(&inst).unwrap();
        // one weighted partition per path node: weights 6, 3, 2 at v2, v3, v4
        assert_eq!(ys(&cert, 1), vec![int(6)]);
        assert_eq!(ys(&cert, 2), vec![int(3)]);
        assert_eq!(ys(&cert, 3), vec![int(2)]);
        let tilde = &inst.links[3];
        assert_eq!(link_load(&cert, &inst, tilde).unwrap(), int(11));
        assert_eq!(link_load_telescoped(&cert, &inst, tilde).unwrap(), int(11));
        assert!(int(11) <= frac(11, 6) * frac(601, 100));
        assert_eq!(v.dual_objective, int(11));
        assert_eq!(v.report.lower_bound, int(6));
        assert_eq!(v.report.certified_ratio, Some(frac(11, 6)));
        assert_eq!(v.report.harmonic, frac(11, 6));
    }

    #[test]
    fn star_certificate() {
        let inst = star_cycle(5);
        let (cert, v) = certify(&inst).unwrap();
        assert_eq!(ys(&cert, 0), vec![int(1), int(0), int(0)]);
        assert_eq!(v.dual_objective, int(3));
        assert_eq!(v.report.lower_bound, int(3));
        assert_eq!(v.report.certified_ratio, Some(int(1)));
    }

    #[test]
    fn load_of_link_crossing_nothing_is_zero() {
        let inst = TapInstance::new(
            4,
            vec![(0, 1), (1, 2), (2, 3)],
            vec![(0, 2, int(1)), (1, 3, int(1)), (0, 3, int(1))],
        )
        .unwrap();
        let (cert, _) = certify(&inst).unwrap();
        let outsider = Link { id: 99, u: 0, v: 1, cost: int(1) };
        assert_eq!(link_load(&cert, &inst, &outsider).unwrap(), int(0));
    }

    #[test]
    fn nonnegativity_detects_decreasing_weights() {
        let (mut cert, _) = certify(&star_cycle(5)).unwrap();
        assert!(check_nonnegative(&cert));
        let snaps = &mut cert.nodes[0].snapshots;
        snaps[1].weight = frac(1, 2);
        snaps[1].y = frac(-1, 2);
        assert!(!check_nonnegative(&cert));
        let empty = DualCertificate {
            instance_digest: String::new(),
            lambda: 2,
            harmonic: int(1),
            greedy_cost: int(0),
            picked: vec![],
            nodes: vec![],
        };
        assert!(check_nonnegative(&empty));
    }

    #[test]
    fn verify_names_failed_checks() {
        let inst = fig1();
        let (cert, _) = certify(&inst).unwrap();

        let mut neg = cert.clone();
        neg.nodes[0].snapshots[0].y = -neg.nodes[0].snapshots[0].y.clone();
        assert!(matches!(verify(&inst, &neg), Err(Error::CheckFailed(c)) if c == "nonnegativity"));

        let mut cost = cert.clone();
        cost.greedy_cost = int(10);
        assert!(matches!(verify(&inst, &cost), Err(Error::CheckFailed(c)) if c == "accounting"));

        let mut digest = cert.clone();
        digest.instance_digest = "00".into();
        assert!(matches!(verify(&inst, &digest), Err(Error::MismatchedDigest { .. })));

        let mut inflated = cert.clone();
        for s in inflated.nodes.iter_mut().flat_map(|nd| nd.snapshots.iter_mut()) {
            s.weight *= int(2);
            s.y *= int(2);
        }
        inflated.greedy_cost = int(22);
        assert!(matches!(verify(&inst, &inflated), Err(Error::CheckFailed(_))));

        let mut shape = cert.clone();
        shape.nodes[0].snapshots[0].reps = vec![0, 0];
        assert!(matches!(verify(&inst, &shape), Err(Error::CheckFailed(c)) if c == "structure"));

        let mut dropped = cert;
        dropped.picked.pop();
        assert!(matches!(verify(&inst, &dropped), Err(Error::CheckFailed(c)) if c == "feasibility"));
    }

    #[test]
    fn overloaded_link_fails_dual_feasibility() {
        // duals that recover the cost but overload the cheap long link
        let inst = fig1();
        let (mut cert, _) = certify(&inst).unwrap();
        let mut cheap = inst.clone();
        cheap.links[3].cost = int(1);
        cert.instance_digest = tap_digest(&cheap);
        assert!(matches!(verify(&cheap, &cert), Err(Error::CheckFailed(c)) if c == "dual-feasibility"));
    }

    #[test]
    fn malformed_traces_are_rejected() {
        let inst = fig1();
        let sol = greedy_solve(&inst).unwrap();
        let mut swapped = sol.trace.clone();
        swapped.iterations.swap(0, 2);
        assert!(matches!(build_dual(&swapped, &inst), Err(Error::MalformedTrace(_))));
        let mut dup = sol.trace.clone();
        let first = dup.iterations[0].clone();
        dup.iterations.insert(1, first);
        assert!(matches!(build_dual(&dup, &inst), Err(Error::MalformedTrace(_))));
    }
}
