//! Exhaustive solvers for small general graphs.

use crate::config::{check_cap, Caps};
use crate::error::Result;
use crate::graph::Graph;
use crate::solver::rdf::RdFunction;

/// Depth-first search over labelings in vertex order. A 0-vertex is checked
/// as soon as it and all its neighbors are labeled.
struct Search {
    n: usize,
    nbr: Vec<u64>,
    check_at: Vec<Vec<usize>>,
    vals: Vec<u8>,
    twos: u64,
}

impl Search {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut check_at = vec![Vec::new(); n];
        for v in 0..n {
            let last = g.neighbors(v).iter().copied().fold(v, usize::max);
            check_at[last].push(v);
        }
        Search { n, nbr: g.neighbor_masks(), check_at, vals: vec![0; n], twos: 0 }
    }

    fn consistent(&self, j: usize) -> bool {
        self.check_at[j]
            .iter()
            .all(|&v| self.vals[v] != 0 || self.nbr[v] & self.twos != 0)
    }

    /// Visit every RDF of weight at most `bound`; the visitor may lower the
    /// bound as it goes.
    fn run(&mut self, j: usize, weight: usize, bound: &mut usize, visit: &mut dyn FnMut(&[u8], usize, &mut usize)) {
        if j == self.n {
            visit(&self.vals, weight, bound);
            return;
        }
        for c in [2u8, 1, 0] {
            if weight + c as usize > *bound {
                continue;
            }
            self.vals[j] = c;
            if c == 2 {
                self.twos |= 1 << j;
            }
            if self.consistent(j) {
                self.run(j + 1, weight + c as usize, bound, visit);
            }
            self.twos &= !(1 << j);
        }
    }
}

pub fn gamma_r_bruteforce(g: &Graph) -> Result<usize> {
    gamma_r_bruteforce_with(g, &Caps::DEFAULT)
}

pub fn gamma_r_bruteforce_with(g: &Graph, caps: &Caps) -> Result<usize> {
    check_cap("brute-force gamma_R", g.order(), caps.max_bruteforce_gamma_r)?;
    let mut bound = 2 * g.order();
    let mut best = bound;
    Search::new(g).run(0, 0, &mut bound, &mut |_, w, bound| {
        best = w;
        *bound = w.saturating_sub(1);
    });
    Ok(best)
}

/// Every minimum-weight RDF, in lexicographic order of the digit strings.
pub fn enumerate_gamma_r_functions(g: &Graph) -> Result<Vec<RdFunction>> {
    enumerate_gamma_r_functions_with(g, &Caps::DEFAULT)
}

pub fn enumerate_gamma_r_functions_with(g: &Graph, caps: &Caps) -> Result<Vec<RdFunction>> {
    check_cap("gamma_R-function enumeration", g.order(), caps.max_function_enumeration)?;
    let target = gamma_r_bruteforce_with(g, caps)?;
    let mut bound = target;
    let mut out = Vec::new();
    Search::new(g).run(0, 0, &mut bound, &mut |vals, w, _| {
        if w == target {
            out.push(RdFunction::from_trusted(vals.to_vec()));
        }
    });
    out.sort();
    Ok(out)
}

/// γ_R and, per vertex, the bitmask of labels attained by some γ_R-function.
pub fn value_sets_bruteforce(g: &Graph) -> Result<(usize, Vec<u8>)> {
    value_sets_bruteforce_with(g, &Caps::DEFAULT)
}

pub fn value_sets_bruteforce_with(g: &Graph, caps: &Caps) -> Result<(usize, Vec<u8>)> {
    let target = gamma_r_bruteforce_with(g, caps)?;
    let mut bound = target;
    let mut masks = vec![0u8; g.order()];
    Search::new(g).run(0, 0, &mut bound, &mut |vals, w, _| {
        if w == target {
            for (m, &c) in masks.iter_mut().zip(vals) {
                *m |= 1 << c;
            }
        }
    });
    Ok((target, masks))
}

/// γ by trying vertex subsets in increasing size.
pub fn gamma_bruteforce(g: &Graph) -> Result<usize> {
    gamma_bruteforce_with(g, &Caps::DEFAULT)
}

pub fn gamma_bruteforce_with(g: &Graph, caps: &Caps) -> Result<usize> {
    let n = g.order();
    check_cap("brute-force gamma", n, caps.max_bruteforce_gamma)?;
    if n == 0 {
        return Ok(0);
    }
    let closed: Vec<u64> = g
        .neighbor_masks()
        .iter()
        .enumerate()
        .map(|(v, m)| m | 1 << v)
        .collect();
    let full: u64 = (1u64 << n) - 1;
    for k in 1..=n {
        if dominating_subset(&closed, full, k, 0) {
            return Ok(k);
        }
    }
    unreachable!("the whole vertex set dominates")
}

fn dominating_subset(closed: &[u64], full: u64, left: usize, covered: u64) -> bool {
    if covered == full {
        return true;
    }
    if left == 0 {
        return false;
    }
    // the lowest undominated vertex must be covered by one of its closed neighbors
    let target = (!covered & full).trailing_zeros() as usize;
    let mut choices = closed[target];
    while choices != 0 {
        let v = choices.trailing_zeros() as usize;
        choices &= choices - 1;
        if dominating_subset(closed, full, left - 1, covered | closed[v]) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_r_examples() {
        assert_eq!(gamma_r_bruteforce(&Graph::cycle(5).unwrap()).unwrap(), 4);
        for n in 2..=8 {
            assert_eq!(gamma_r_bruteforce(&Graph::complete(n)).unwrap(), 2);
        }
        assert_eq!(gamma_r_bruteforce(&Graph::cycle(9).unwrap()).unwrap(), 6);
        assert_eq!(gamma_r_bruteforce(&Graph::path(4)).unwrap(), 3);
        assert!(gamma_r_bruteforce(&Graph::path(15)).is_err());
    }

    #[test]
    fn function_enumeration_examples() {
        let show = |g: &Graph| -> Vec<String> {
            enumerate_gamma_r_functions(g).unwrap().iter().map(|f| f.to_string()).collect()
        };
        assert_eq!(show(&Graph::path(3)), vec!["020"]);
        assert_eq!(show(&Graph::path(2)), vec!["02", "11", "20"]);
        assert_eq!(show(&Graph::path(4)), vec!["0201", "1020"]);
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_bruteforce(&Graph::path(4)).unwrap(), 2);
        assert_eq!(gamma_bruteforce(&Graph::star(3)).unwrap(), 1);
        assert_eq!(gamma_bruteforce(&Graph::path(7)).unwrap(), 3);
        // P6 numbered so that the lowest undominated vertex needs an earlier dominator
        let p6 = Graph::from_edges(6, &[(0, 1), (0, 4), (1, 2), (2, 3), (4, 5)]).unwrap();
        assert_eq!(gamma_bruteforce(&p6).unwrap(), 2);
        assert_eq!(gamma_bruteforce(&Graph::path(20)).unwrap(), 7);
        assert_eq!(gamma_bruteforce(&Graph::empty(4)).unwrap(), 4);
    }
}
