//! Enumeration engine for colored higher-order Motzkin paths.
//!
//! The crate builds the Riordan-array triangles that count colored Motzkin
//! paths of any order, checks them against closed formulas and a brute-force
//! oracle, and implements explicit bijections onto k-Dyck paths, Fine paths,
//! peak-parity-restricted paths, and k-ary trees.

pub mod bijections;
pub mod cli;
pub mod closedform;
pub mod oeis;
pub mod oracle;
pub mod paths;
pub mod riordan;
pub mod series;
