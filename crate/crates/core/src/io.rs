//! JSON instance files.
//!
//! ```json
//! {"kind":"tap","n":3,"tree_edges":[[0,1],[1,2]],"links":[{"u":0,"v":2,"cost":"5"}]}
//! {"kind":"ncss","n":3,"edges":[{"u":0,"v":1,"cost":1}, ...]}
//! ```
//!
//! Costs are `"p/q"` strings or JSON integers.

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::instance::{Edge, NcssInstance, NodeId, TapInstance};
use crate::rational::{serde_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Tap(TapInstance),
    Ncss(NcssInstance),
}

impl Instance {
    pub fn as_tap(&self) -> Option<&TapInstance> {
        match self {
            Instance::Tap(t) => Some(t),
            Instance::Ncss(_) => None,
        }
    }

    pub fn as_ncss(&self) -> Option<&NcssInstance> {
        match self {
            Instance::Ncss(g) => Some(g),
            Instance::Tap(_) => None,
        }
    }
}

impl From<TapInstance> for Instance {
    fn from(t: TapInstance) -> Self {
        Instance::Tap(t)
    }
}

impl From<NcssInstance> for Instance {
    fn from(g: NcssInstance) -> Self {
        Instance::Ncss(g)
    }
}

#[derive(Serialize, Deserialize)]
struct RawEdge {
    u: NodeId,
    v: NodeId,
    #[serde(with = "serde_rational")]
    cost: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawInstance {
    Tap {
        n: usize,
        tree_edges: Vec<[NodeId; 2]>,
        links: Vec<RawEdge>,
    },
    Ncss {
        n: usize,
        edges: Vec<RawEdge>,
    },
}

fn check_costs(field: &str, edges: &[RawEdge]) -> Result<()> {
    for (i, e) in edges.iter().enumerate() {
        if e.cost.is_negative() {
            return Err(Error::Schema {
                context: format!("{field}[{i}].cost"),
                reason: "NegativeCost".into(),
            });
        }
    }
    Ok(())
}

/// Parses and validates an instance file.
pub fn parse_instance(bytes: &[u8]) -> Result<Instance> {
    let raw: RawInstance = serde_json::from_slice(bytes).map_err(|e| Error::Schema {
        context: format!("line {} column {}", e.line(), e.column()),
        reason: e.to_string(),
    })?;
    match raw {
        RawInstance::Tap { n, tree_edges, links } => {
            check_costs("links", &links)?;
            let tree = tree_edges.into_iter().map(|[u, v]| (u, v)).collect();
            let links = links.into_iter().map(|e| (e.u, e.v, e.cost)).collect();
            Ok(Instance::Tap(TapInstance::new(n, tree, links)?))
        }
        RawInstance::Ncss { n, edges } => {
            check_costs("edges", &edges)?;
            let edges = edges.into_iter().map(|e| Edge::new(e.u, e.v, e.cost)).collect();
            Ok(Instance::Ncss(NcssInstance::new(n, edges)?))
        }
    }
}

fn to_raw(instance: &Instance) -> RawInstance {
    match instance {
        Instance::Tap(t) => RawInstance::Tap {
            n: t.n,
            tree_edges: t.tree_edges.iter().map(|&(u, v)| [u, v]).collect(),
            links: t
                .links
                .iter()
                .map(|l| RawEdge {
                    u: l.u,
                    v: l.v,
                    cost: l.cost.clone(),
                })
                .collect(),
        },
        Instance::Ncss(g) => RawInstance::Ncss {
            n: g.n,
            edges: g
                .edges
                .iter()
                .map(|e| RawEdge {
                    u: e.u,
                    v: e.v,
                    cost: e.cost.clone(),
                })
                .collect(),
        },
    }
}

/// Pretty-printed JSON, the on-disk form.
pub fn serialize_instance(instance: &Instance) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&to_raw(instance)).expect("instance serializes");
    out.push(b'\n');
    out
}

/// SHA-256 over the compact canonical serialization, hex encoded.
pub fn digest(instance: &Instance) -> String {
    let bytes = serde_json::to_vec(&to_raw(instance)).expect("instance serializes");
    hex::encode(Sha256::digest(&bytes))
}

pub fn tap_digest(instance: &TapInstance) -> String {
    digest(&Instance::Tap(instance.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ValidationError;
    use crate::rational::{frac, int};

    #[test]
    fn round_trip_triangle() {
        let t = TapInstance::new(3, vec![(0, 1), (1, 2)], vec![(0, 2, frac(5, 2))]).unwrap();
        let inst = Instance::Tap(t);
        let bytes = serialize_instance(&inst);
        assert_eq!(parse_instance(&bytes).unwrap(), inst);
        assert!(String::from_utf8(bytes).unwrap().contains("\"5/2\""));
    }

    #[test]
    fn fields_in_any_order_and_integer_costs() {
        let text = r#"{"links":[{"cost":5,"v":2,"u":0}],"n":3,"tree_edges":[[0,1],[1,2]],"kind":"tap"}"#;
        let inst = parse_instance(text.as_bytes()).unwrap();
        assert_eq!(inst.as_tap().unwrap().links[0].cost, int(5));
    }

    #[test]
    fn negative_cost_is_schema_error() {
        let text = r#"{"kind":"tap","n":3,"tree_edges":[[0,1],[1,2]],"links":[{"u":0,"v":2,"cost":"-1"}]}"#;
        match parse_instance(text.as_bytes()) {
            Err(Error::Schema { context, reason }) => {
                assert_eq!(context, "links[0].cost");
                assert_eq!(reason, "NegativeCost");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_instance(b"{\"kind\":\"tap\",\n\"n\":}").unwrap_err();
        assert!(matches!(err, Error::Schema { ref context, .. } if context.starts_with("line 2")));
    }

    #[test]
    fn ncss_with_cut_vertex_is_rejected() {
        // two triangles sharing node 2
        let text = r#"{"kind":"ncss","n":5,"edges":[
            {"u":0,"v":1,"cost":1},{"u":1,"v":2,"cost":1},{"u":0,"v":2,"cost":1},
            {"u":2,"v":3,"cost":1},{"u":3,"v":4,"cost":1},{"u":2,"v":4,"cost":1}]}"#;
        assert!(matches!(
            parse_instance(text.as_bytes()),
            Err(Error::Validation(ValidationError::Not2NC))
        ));
    }

    #[test]
    fn digest_ignores_layout() {
        let a = parse_instance(br#"{"kind":"tap","n":3,"tree_edges":[[0,1],[1,2]],"links":[{"u":0,"v":2,"cost":"10/2"}]}"#).unwrap();
        let b = parse_instance(b"{ \"n\": 3, \"kind\": \"tap\", \"tree_edges\": [[0,1], [1,2]], \"links\": [{\"u\":0,\"v\":2,\"cost\":5}] }").unwrap();
        assert_eq!(digest(&a), digest(&b));
        assert_eq!(digest(&a).len(), 64);
    }
}
