//! Exact Roman domination and domination numbers.

pub mod brute;
pub mod domination;
pub mod rdf;
pub mod tree_dp;

pub use brute::{
    enumerate_gamma_r_functions, gamma_bruteforce, gamma_r_bruteforce, value_sets_bruteforce,
};
pub use domination::{gamma_forest, gamma_tree};
pub use rdf::{is_rdf, RdFunction};
pub use tree_dp::{
    gamma_r_constrained, gamma_r_forest, gamma_r_forest_plus_edge, gamma_r_tree, optimal_rdf_tree,
    VertexRule,
};

use crate::config::Caps;
use crate::error::Result;
use crate::graph::Graph;

/// γ_R of any graph: the forest DP when possible, exhaustive search otherwise.
pub fn gamma_r(g: &Graph) -> Result<usize> {
    gamma_r_with(g, &Caps::DEFAULT)
}

pub fn gamma_r_with(g: &Graph, caps: &Caps) -> Result<usize> {
    if g.is_forest() {
        gamma_r_forest(g)
    } else {
        brute::gamma_r_bruteforce_with(g, caps)
    }
}

/// γ of any graph, by the same dispatch as [`gamma_r`].
pub fn gamma(g: &Graph) -> Result<usize> {
    gamma_with(g, &Caps::DEFAULT)
}

pub fn gamma_with(g: &Graph, caps: &Caps) -> Result<usize> {
    if g.is_forest() {
        gamma_forest(g)
    } else {
        brute::gamma_bruteforce_with(g, caps)
    }
}

/// γ_R(G + xy) for a non-edge `xy`.
pub fn gamma_r_plus_edge(g: &Graph, x: usize, y: usize) -> Result<usize> {
    if g.is_forest() {
        gamma_r_forest_plus_edge(g, x, y)
    } else {
        gamma_r(&g.with_edge(x, y)?)
    }
}
