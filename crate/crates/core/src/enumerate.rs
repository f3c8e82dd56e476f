//! One representative per isomorphism class of free trees and of small
//! connected graphs, grown one vertex at a time and sorted by code.

use std::collections::BTreeSet;

use crate::canon::{self, CanonicalCode, GraphCode};
use crate::config::{check_cap, Caps};
use crate::error::{Error, Result};
use crate::graph::{Graph, Tree};

/// All free trees of order `n`, sorted by canonical code. Each tree is the
/// decoded form of its code, so the vertex numbering is reproducible.
pub fn enumerate_trees(n: usize) -> Result<Vec<Tree>> {
    enumerate_trees_with(n, &Caps::DEFAULT)
}

pub fn enumerate_trees_with(n: usize, caps: &Caps) -> Result<Vec<Tree>> {
    Ok(tree_census(n, caps)?.pop().unwrap_or_default())
}

/// `census[k]` holds the trees of order `k` for `k <= max_n` (index 0 empty).
pub fn tree_census(max_n: usize, caps: &Caps) -> Result<Vec<Vec<Tree>>> {
    if max_n == 0 {
        return Err(Error::OrderTooSmall { what: "tree enumeration", order: 0, min: 1 });
    }
    check_cap("tree enumeration", max_n, caps.max_tree_order)?;
    let mut census = vec![Vec::new(), vec![Tree::single()]];
    for _ in 2..=max_n {
        let prev = census.last().expect("seeded");
        let mut codes = BTreeSet::new();
        for t in prev {
            for v in 0..t.order() {
                let grown = crate::graph::attach_edge(t, v, &Tree::single(), 0)?;
                codes.insert(canon::canonical_code(&grown));
            }
        }
        let trees = codes
            .iter()
            .map(canon::tree_from_code)
            .collect::<Result<Vec<_>>>()?;
        census.push(trees);
    }
    Ok(census)
}

/// Codes of all trees of order `n`, sorted.
pub fn tree_codes(n: usize) -> Result<Vec<CanonicalCode>> {
    Ok(enumerate_trees(n)?.iter().map(canon::canonical_code).collect())
}

/// All connected simple graphs of order `n`, one per isomorphism class,
/// sorted by [`GraphCode`].
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    enumerate_connected_graphs_with(n, &Caps::DEFAULT)
}

pub fn enumerate_connected_graphs_with(n: usize, caps: &Caps) -> Result<Vec<Graph>> {
    Ok(connected_graph_census(n, caps)?.pop().unwrap_or_default())
}

pub fn connected_graph_census(max_n: usize, caps: &Caps) -> Result<Vec<Vec<Graph>>> {
    if max_n == 0 {
        return Err(Error::OrderTooSmall { what: "graph enumeration", order: 0, min: 1 });
    }
    check_cap("connected graph enumeration", max_n, caps.max_graph_order)?;
    let mut census = vec![Vec::new(), vec![Graph::empty(1)]];
    for m in 1..max_n {
        let mut codes: BTreeSet<GraphCode> = BTreeSet::new();
        for g in &census[m] {
            // a connected graph always has a non-cut vertex, so every
            // connected graph on m+1 vertices arises this way
            for mask in 1u32..(1 << m) {
                let mut edges: Vec<_> = g.edges().collect();
                edges.extend((0..m).filter(|&i| mask >> i & 1 == 1).map(|i| (i, m)));
                let h = Graph::from_edges(m + 1, &edges)?;
                codes.insert(canon::graph_canonical_form(&h)?);
            }
        }
        census.push(codes.into_iter().map(canon::graph_from_code).collect());
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| enumerate_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn order_four_is_path_and_star() {
        let trees = enumerate_trees(4).unwrap();
        let codes: BTreeSet<_> = trees.iter().map(canon::canonical_code).collect();
        let want: BTreeSet<_> =
            [canon::canonical_code(&Tree::path(4).unwrap()), canon::canonical_code(&Tree::star(3))].into();
        assert_eq!(codes, want);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(enumerate_trees(17), Err(Error::CapExceeded { .. })));
        assert!(matches!(enumerate_connected_graphs(8), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn small_graph_counts() {
        let counts: Vec<usize> =
            (1..=5).map(|n| enumerate_connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
        for g in enumerate_connected_graphs(5).unwrap() {
            assert!(g.is_connected());
        }
    }
}
