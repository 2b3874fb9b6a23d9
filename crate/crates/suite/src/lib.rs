//! Holds the `acceptance` test target. Run it alone with
//! `cargo test -p nctap-suite --test acceptance`.
