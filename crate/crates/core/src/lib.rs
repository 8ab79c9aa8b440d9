//! Solvers and verification tools for Y_{k,b}-tilings of k-uniform
//! hypergraphs, centered on Y = Y_{3,2}: exact and heuristic maximum
//! tilings, the fractional hom(Y)-tiling relaxation, a sampled regularity
//! reduction pipeline, and brute-force checkers for the small combinatorial
//! facts the theory leans on.

pub mod bipartite;
pub mod digraph;
pub mod facts;
pub mod fractional;
pub mod hypergraph;
pub mod io;
pub mod ordered;
pub mod procedures;
pub mod regularity;
pub mod simplex;
pub mod solver;
pub mod tiling;

pub use hypergraph::{Hypergraph, Pattern};
pub use tiling::{MixedTiling, PatternCopy, Tiling};
