//! Exact oracles: partition and cut LPs solved with lazy row generation,
//! separation by exhaustive search, and small integer programs.

pub mod checks;
pub mod coarsen;
pub mod ip;
pub mod lp;
pub mod model;
pub mod separation;
pub mod simplex;
