//! Domination number of forests by a three-state tree DP.

use crate::error::{Error, Result};
use crate::graph::{Graph, Tree};
use crate::solver::tree_dp::INF;

#[derive(Clone, Copy)]
struct State {
    /// vertex is in the set
    inside: usize,
    /// outside, dominated by a child
    covered: usize,
    /// outside and undominated below; the parent must be in the set
    waiting: usize,
}

/// γ of a forest, summed over components.
pub fn gamma_forest(g: &Graph) -> Result<usize> {
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    let n = g.order();
    let mut seen = vec![false; n];
    let mut parent = vec![usize::MAX; n];
    let mut states = vec![State { inside: 1, covered: INF, waiting: 0 }; n];
    let mut total = 0;
    for r in 0..n {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut order = vec![r];
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
        for &u in order.iter().rev() {
            let mut inside = 1;
            let mut settled = 0;
            let mut gap = INF;
            for &c in g.neighbors(u).iter().filter(|&&c| parent[c] == u) {
                let s = states[c];
                let best = s.inside.min(s.covered);
                inside += best.min(s.waiting);
                settled += best;
                gap = gap.min(s.inside - best);
            }
            states[u] = State { inside, covered: (settled + gap).min(INF), waiting: settled };
        }
        total += states[r].inside.min(states[r].covered);
    }
    Ok(total)
}

pub fn gamma_tree(t: &Tree) -> usize {
    gamma_forest(t).expect("trees are forests")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(gamma_tree(&Tree::path(4).unwrap()), 2);
        assert_eq!(gamma_tree(&Tree::star(3)), 1);
        assert_eq!(gamma_tree(&Tree::path(7).unwrap()), 3);
        assert_eq!(gamma_tree(&Tree::single()), 1);
        assert_eq!(gamma_forest(&Graph::empty(3)).unwrap(), 3);
    }
}
