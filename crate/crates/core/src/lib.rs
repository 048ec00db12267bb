//! Strongly regular graph constructions, exact spectral bounds, a certified
//! maximum clique solver, and a separation classifier.

pub mod bounds;
pub mod catalog;
pub mod classify;
pub mod designs;
pub mod families;
pub mod gf;
pub mod graph;
pub mod solver;
