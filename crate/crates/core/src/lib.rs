//! Greedy approximation, dual-fitting certificates and exact oracles for the
//! 2-node-connectivity tree augmentation problem (2NC-TAP).
//!
//! An instance is a spanning tree `T` of cost zero plus a set of costed
//! links. The goal is a cheapest link set `F` such that `T ∪ F` stays
//! connected after deleting any single node. The crate provides:
//!
//! * [`greedy`]: the partition-covering greedy algorithm with a full trace,
//! * [`certificate`]: the dual solution fitted to a trace, certifying that the
//!   greedy cost is within `H(λ-1)` of the partition LP optimum,
//! * [`oracle`]: exact-rational LP solving with lazy separation, plus
//!   brute-force integer optima for desk-scale instances,
//! * [`generators`] and [`inflation`]: the canonical instance families and the
//!   2ECSS-to-2NCSS inflation transform.

pub mod certificate;
pub mod connectivity;
pub mod dsu;
pub mod error;
pub mod generators;
pub mod greedy;
pub mod inflation;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod rational;

pub use error::{Error, Result, ValidationError};
pub use instance::{CostedGraph, Edge, Link, NcssInstance, NodeId, Partition, TapInstance};
pub use rational::Rational;
