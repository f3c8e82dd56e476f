//! Fast solvers against exhaustive ones, and enumerators against
//! independent generators.

use std::collections::BTreeSet;

use serde_json::json;

use super::{on, solved_trees, sweep, ClaimResult, Failure, VerifyOptions};
use crate::canon::{self, CanonicalCode, GraphCode};
use crate::config::Caps;
use crate::enumerate;
use crate::error::Result;
use crate::graph::{Graph, Tree};
use crate::partition;
use crate::solver::{self, brute};

/// Codes of all trees on `n` vertices from level-order parent arrays:
/// vertex `i` hangs from `p[i] < i`, with `p` non-decreasing.
pub(crate) fn parent_array_codes(n: usize) -> Result<BTreeSet<CanonicalCode>> {
    fn rec(parents: &mut Vec<usize>, n: usize, out: &mut BTreeSet<CanonicalCode>) -> Result<()> {
        let i = parents.len() + 1;
        if i == n {
            out.insert(canon::canonical_code(&Tree::from_parents(parents)?));
            return Ok(());
        }
        let lo = parents.last().copied().unwrap_or(0);
        for p in lo..i {
            parents.push(p);
            rec(parents, n, out)?;
            parents.pop();
        }
        Ok(())
    }
    let mut out = BTreeSet::new();
    rec(&mut Vec::new(), n, &mut out)?;
    Ok(out)
}

/// Canonical forms of all connected graphs on `n` vertices, from every edge subset.
pub(crate) fn edge_subset_codes(n: usize) -> Result<BTreeSet<GraphCode>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, &edges)?;
        if g.is_connected() {
            out.insert(canon::graph_canonical_form(&g)?);
        }
    }
    Ok(out)
}

pub(super) fn run(opts: &VerifyOptions) -> Result<Vec<ClaimResult>> {
    let n_gamma_r = opts.limit(12, 14);
    let n_gamma = opts.limit(14, 14);
    let n_sets = opts.limit(10, 12);
    let n_counts = opts.limit(12, 14);
    let n_graphs = opts.limit(6, 6);
    let trees = solved_trees(1, n_gamma_r.max(n_gamma).max(n_sets))?;
    let upto = |n: usize| -> Vec<&Tree> { trees.iter().map(|s| &s.tree).filter(|t| t.order() <= n).collect() };
    let mut claims = Vec::new();

    claims.push(sweep("gamma-r-tree-dp-vs-bruteforce", n_gamma_r, &upto(n_gamma_r), |t| {
        on(t, || {
            let dp = solver::gamma_r_tree(t);
            let bf = brute::gamma_r_bruteforce(t)?;
            Ok((dp != bf).then(|| json!({ "dp": dp, "bruteforce": bf })))
        })
    }));

    claims.push(sweep("gamma-tree-dp-vs-bruteforce", n_gamma, &upto(n_gamma), |t| {
        on(t, || {
            let dp = solver::gamma_tree(t);
            let bf = brute::gamma_bruteforce(t)?;
            Ok((dp != bf).then(|| json!({ "dp": dp, "bruteforce": bf })))
        })
    }));

    claims.push(sweep("optimal-rdf-is-minimum-rdf", n_gamma, &upto(n_gamma), |t| {
        on(t, || {
            let f = solver::optimal_rdf_tree(t);
            let ok = solver::is_rdf(t, &f)? && f.weight() == solver::gamma_r_tree(t);
            Ok((!ok).then(|| json!({ "function": f.to_string() })))
        })
    }));

    claims.push(sweep("value-sets-dp-vs-enumeration", n_sets, &upto(n_sets), |t| {
        on(t, || {
            let report = partition::partition_report(t)?;
            let funcs = brute::enumerate_gamma_r_functions(t)?;
            let mut masks = vec![0u8; t.order()];
            for f in &funcs {
                for (v, m) in masks.iter_mut().enumerate() {
                    *m |= 1 << f.get(v);
                }
            }
            let dp: Vec<u8> = report.value_sets.iter().map(|s| s.mask()).collect();
            let weight_ok = funcs.first().is_some_and(|f| f.weight() == report.gamma_r);
            Ok((dp != masks || !weight_ok).then(|| json!({ "dp_masks": dp, "enumerated_masks": masks, "functions": funcs.len() })))
        })
    }));

    claims.push(sweep("constrained-dp-vs-enumeration", n_sets, &upto(n_sets), |t| {
        on(t, || {
            let funcs = brute::enumerate_gamma_r_functions(t)?;
            let gamma_r = solver::gamma_r_tree(t);
            for v in 0..t.order() {
                for c in 0..3u8 {
                    let attained = funcs.iter().any(|f| f.get(v) == c);
                    let pinned = solver::gamma_r_constrained(t, v, c)?;
                    if attained != (pinned == Some(gamma_r)) {
                        return Ok(Some(json!({ "vertex": v, "label": c, "pinned": pinned, "attained": attained })));
                    }
                }
            }
            Ok(None)
        })
    }));

    let orders: Vec<usize> = (1..=n_counts).collect();
    claims.push(sweep("tree-census-vs-parent-arrays", n_counts, &orders, |&n| {
        let census: BTreeSet<_> = enumerate::tree_codes(n)?.into_iter().collect();
        let independent = parent_array_codes(n)?;
        Ok((census != independent).then(|| {
            Failure::new(None, json!({ "n": n, "census": census.len(), "parent_arrays": independent.len() }))
        }))
    }));

    let orders: Vec<usize> = (1..=n_graphs).collect();
    claims.push(sweep("graph-census-vs-edge-subsets", n_graphs, &orders, |&n| {
        let census: BTreeSet<_> = enumerate::enumerate_connected_graphs_with(n, &Caps::DEFAULT)?
            .iter()
            .map(canon::graph_canonical_form)
            .collect::<Result<_>>()?;
        let independent = edge_subset_codes(n)?;
        Ok((census != independent).then(|| {
            Failure::new(None, json!({ "n": n, "census": census.len(), "edge_subsets": independent.len() }))
        }))
    }));

    Ok(claims)
}
