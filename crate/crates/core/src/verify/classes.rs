//! Signature classes, the 4n/5 bound and its extremal family, bound
//! sandwiches, edge-critical trees, minimum-size excellent graphs and
//! minimal cycles.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{graph_json, on, single, solved_graphs, solved_trees, sweep, ClaimResult, Failure, Solved, VerifyOptions};
use crate::atlas::{self, PrimeRecognition, RSignature, T02012Recognition};
use crate::canon::{self, GraphCode};
use crate::config::Caps;
use crate::enumerate;
use crate::error::Result;
use crate::grammar::{self, LabeledTree, OpId, PieceId, Recognition};
use crate::graph::{Graph, Tree};
use crate::partition::{self, Status, V01, V012, V02};
use crate::solver;

/// Brute-force caps large enough for 15-vertex coronas and P5 families.
const WIDE: Caps = Caps { max_bruteforce_gamma_r: 15, ..Caps::DEFAULT };

fn leaves_and_stems(g: &Graph) -> Vec<usize> {
    (0..g.order())
        .filter(|&v| g.degree(v) == 1 || g.neighbors(v).iter().any(|&w| g.degree(w) == 1))
        .collect()
}

pub(super) fn classes(opts: &VerifyOptions) -> Result<Vec<ClaimResult>> {
    let cat = grammar::catalog()?;
    let n = opts.limit(14, 14);
    let n_forb = opts.limit(5, 5);
    let trees = solved_trees(2, n)?;
    let excellent: Vec<&Solved> = trees.iter().filter(|s| s.report.is_excellent()).collect();
    let mut claims = Vec::new();

    claims.push(sweep("excellent-tree-signatures", n, &excellent, |s| {
        on(&s.tree, || {
            let sig = RSignature::from_report(&s.report);
            Ok((!atlas::excellent_signature_is_allowed(&s.tree, &sig)).then(|| json!({ "signature": sig.to_string() })))
        })
    }));

    claims.push(sweep("three-class-signature-iff-a-c-d-present", n, &excellent, |s| {
        on(&s.tree, || {
            let sig = RSignature::from_report(&s.report);
            let lt = LabeledTree::new(s.tree.clone(), partition::statuses_from_report(&s.tree, &s.report)?)?;
            let acd = [Status::A, Status::C, Status::D].iter().all(|&st| lt.count(st) > 0);
            Ok((sig.is(&[V01, V02, V012]) != acd)
                .then(|| json!({ "signature": sig.to_string(), "statuses": lt.status_string() })))
        })
    }));

    claims.push(sweep("r01-02-equivalences", n, &trees, |s| {
        on(&s.tree, || {
            let sig = RSignature::from_report(&s.report).is(&[V01, V02]);
            let prime = match atlas::recognize_t0102_prime_with(&s.tree, cat)? {
                PrimeRecognition::Accept { labeled, cert, map } => {
                    let replayed = cert.replay(cat)?;
                    let ok = cert.steps.iter().all(|st| matches!(st.op, OpId::O7 | OpId::O8))
                        && (0..labeled.order()).all(|v| replayed.status(map[v]) == labeled.status(v));
                    if !ok {
                        return Ok(Some(json!({ "problem": "decomposition does not replay", "certificate": cert })));
                    }
                    true
                }
                PrimeRecognition::Reject { .. } => false,
            };
            let restricted = match grammar::recognize::recognize_with(&s.tree, cat)? {
                Recognition::Accept { cert, .. } => atlas::is_t0102_certificate(&cert),
                Recognition::Reject { .. } => false,
            };
            Ok((sig != prime || sig != restricted)
                .then(|| json!({ "signature": sig, "prime": prime, "restricted_certificate": restricted })))
        })
    }));

    let five_up: Vec<&Solved> = trees.iter().filter(|s| s.tree.order() >= 5).collect();
    claims.push(sweep("r02-012-iff-cd-family", n, &five_up, |s| {
        on(&s.tree, || {
            let sig = RSignature::from_report(&s.report).is(&[V02, V012]);
            let family = match atlas::recognize_t02012_with(&s.tree, cat)? {
                T02012Recognition::Accept { labeled, cert, map } => {
                    let replayed = cert.replay(cat)?;
                    let ok = cert.base == PieceId::F(3)
                        && cert.steps.iter().all(|st| matches!(st.op, OpId::O9 | OpId::O10))
                        && replayed.order() == labeled.order()
                        && (0..labeled.order()).all(|v| replayed.status(map[v]) == labeled.status(v));
                    if !ok {
                        return Ok(Some(json!({ "problem": "certificate does not replay", "certificate": cert })));
                    }
                    true
                }
                T02012Recognition::Reject { .. } => false,
            };
            Ok((sig != family).then(|| json!({ "signature": sig, "family": family })))
        })
    }));
    // one claim per direction
    let uvr: Vec<bool> = five_up.par_iter().map(|s| partition::is_uvr(&s.tree)).collect::<Result<_>>()?;
    let paired: Vec<(&Solved, bool)> = five_up.iter().copied().zip(uvr).collect();
    claims.push(sweep("r02-012-implies-uvr", n, &paired, |(s, uvr)| {
        on(&s.tree, || Ok((RSignature::from_report(&s.report).is(&[V02, V012]) && !uvr).then(|| json!({ "uvr": false }))))
    }));
    claims.push(sweep("uvr-implies-r02-012", n, &paired, |(s, uvr)| {
        on(&s.tree, || {
            let sig = RSignature::from_report(&s.report);
            Ok((*uvr && !sig.is(&[V02, V012])).then(|| json!({ "uvr": true, "signature": sig.to_string() })))
        })
    }));

    let small = solved_graphs(2, n_forb)?;
    claims.push(sweep("corona-weight-and-signature", 3 * n_forb, &small, |(h, _)| {
        let c = atlas::build_corona(h)?;
        on(&c, || {
            let report = partition::partition_report_graph_with(&c, &WIDE)?;
            let sig = RSignature::from_report(&report);
            let ok = report.gamma_r == 2 * h.order() && sig.is(&[V01, V02]);
            Ok((!ok).then(|| json!({ "stem_graph": graph_json(h), "gamma_r": report.gamma_r, "signature": sig.to_string() })))
        })
    }));

    Ok(claims)
}

/// Codes of the P5 families with `r` copies linked along every tree on the centers.
fn family_codes(r: usize) -> Result<BTreeSet<canon::CanonicalCode>> {
    let mut out = BTreeSet::new();
    for links in enumerate::enumerate_trees(r)? {
        let edges: Vec<_> = links.edges().collect();
        out.insert(canon::canonical_code(&atlas::extremal_45_family(r, &edges)?));
    }
    Ok(out)
}

pub(super) fn extremal(opts: &VerifyOptions) -> Result<Vec<ClaimResult>> {
    let cat = grammar::catalog()?;
    let n_trees = opts.limit(14, 14);
    let n_graphs = opts.limit(7, 7);
    let mut claims = Vec::new();

    let graphs = solved_graphs(3, n_graphs)?;
    let equality: BTreeSet<GraphCode> = [Graph::cycle(5)?, Graph::path(5)]
        .iter()
        .map(canon::graph_canonical_form)
        .collect::<Result<_>>()?;
    claims.push(sweep("roman-bound-graphs", n_graphs, &graphs, |(g, r)| {
        on(g, || {
            let n = g.order();
            let tight = 5 * r.gamma_r == 4 * n;
            let expected = equality.contains(&canon::graph_canonical_form(g)?);
            Ok((5 * r.gamma_r > 4 * n || tight != expected).then(|| json!({ "gamma_r": r.gamma_r, "tight": tight })))
        })
    }));

    let trees = solved_trees(3, n_trees)?;
    let mut families = BTreeMap::new();
    for r in 1..=n_trees / 5 {
        families.insert(5 * r, family_codes(r)?);
    }
    claims.push(sweep("roman-bound-trees", n_trees, &trees, |s| {
        on(&s.tree, || {
            let n = s.tree.order();
            let tight = 5 * s.report.gamma_r == 4 * n;
            let expected = families.get(&n).is_some_and(|f| f.contains(&canon::canonical_code(&s.tree)));
            Ok((5 * s.report.gamma_r > 4 * n || tight != expected).then(|| json!({ "gamma_r": s.report.gamma_r, "tight": tight })))
        })
    }));

    let mut members: Vec<Tree> = Vec::new();
    for r in 1..=4 {
        for links in enumerate::enumerate_trees(r)? {
            let edges: Vec<_> = links.edges().collect();
            members.push(atlas::extremal_45_family(r, &edges)?);
        }
    }
    claims.push(sweep("extremal-family-trees", 20, &members, |t| {
        on(t, || {
            let report = partition::partition_report(t)?;
            let n = t.order();
            let sig = RSignature::from_report(&report);
            let v012 = report.class(V012);
            let chain = match atlas::recognize_t02012_with(t, cat)? {
                T02012Recognition::Accept { cert, .. } => cert.steps.iter().all(|s| s.op == OpId::O9),
                T02012Recognition::Reject { .. } => false,
            };
            let ok = 5 * report.gamma_r == 4 * n && sig.is(&[V02, V012]) && v012 == leaves_and_stems(t) && chain;
            Ok((!ok).then(|| json!({ "gamma_r": report.gamma_r, "signature": sig.to_string(), "v012": v012, "o9_chain": chain })))
        })
    }));

    // three P5 copies with a triangle on the centers
    claims.push(single("extremal-family-cyclic-centers", 15, || {
        let t = atlas::extremal_45_family(3, &atlas::path_links(3))?;
        let g = t.graph().with_edge(2, 12)?;
        let report = partition::partition_report_graph_with(&g, &WIDE)?;
        let sig = RSignature::from_report(&report);
        let v012 = report.class(V012);
        let ok = report.gamma_r == 12 && sig.is(&[V02, V012]) && v012 == leaves_and_stems(&g);
        Ok((!ok).then(|| Failure::new(Some(&g), json!({ "gamma_r": report.gamma_r, "signature": sig.to_string() }))))
    }));

    let excellent: Vec<&Solved> = trees.iter().filter(|s| s.tree.order() >= 5 && s.report.is_excellent()).collect();
    claims.push(sweep("excellent-tree-bounds", n_trees, &excellent, |s| {
        on(&s.tree, || {
            let b = atlas::check_bounds_with(&s.tree, cat)?;
            Ok((!b.sandwiches_hold() || !b.equality_cases_match()).then(|| b.to_json()))
        })
    }));

    Ok(claims)
}

pub(super) fn cea(opts: &VerifyOptions) -> Result<Vec<ClaimResult>> {
    let cat = grammar::catalog()?;
    let n = opts.limit(12, 14);
    let trees = solved_trees(2, n)?;
    let start = std::time::Instant::now();
    let mut found: Vec<&Solved> = Vec::new();
    let flags: Vec<bool> = trees.par_iter().map(|s| partition::is_cea(&s.tree)).collect::<Result<_>>()?;
    for (s, &f) in trees.iter().zip(&flags) {
        if f {
            found.push(s);
        }
    }
    let mut notes = Vec::new();
    let mut matched = true;
    for s in &found {
        let entry = partition::statuses_from_report(&s.tree, &s.report)
            .and_then(|st| LabeledTree::new(s.tree.clone(), st))
            .ok()
            .and_then(|lt| cat.lookup(&lt).map(|e| e.name()));
        if s.tree.order() > 2 && entry.is_none() {
            matched = false;
        }
        notes.push(json!({ "n": s.tree.order(), "edges": graph_json(&s.tree)["edges"], "catalog": entry }));
    }
    let orders: Vec<usize> = found.iter().map(|s| s.tree.order()).collect();
    let expected: Vec<usize> = [2, 9, 10].into_iter().filter(|&m| m <= n).collect();
    let ok = orders == expected && matched;
    let claim = ClaimResult {
        claim: "edge-critical-trees".into(),
        n,
        instances: trees.len(),
        failures: usize::from(!ok),
        counterexample: (!ok).then(|| json!({ "detail": { "orders": orders, "expected": expected, "found": notes } })),
        notes: Value::Array(notes),
        seconds: start.elapsed().as_secs_f64(),
    };
    Ok(vec![claim])
}

pub(super) fn minedge(opts: &VerifyOptions) -> Result<Vec<ClaimResult>> {
    let n = opts.limit(7, 7);
    let graphs = solved_graphs(1, n)?;
    let k3 = canon::graph_canonical_form(&Graph::complete(3))?;
    let orders: Vec<usize> = (1..=n).collect();
    let mut minima = BTreeMap::new();
    for &m in &orders {
        let sizes: Vec<usize> =
            graphs.iter().filter(|(g, r)| g.order() == m && r.is_excellent()).map(|(g, _)| g.edge_count()).collect();
        minima.insert(m, sizes.iter().min().copied());
    }
    let mut claim = sweep("minimum-size-excellent-graphs", n, &orders, |&m| {
        let min = minima[&m];
        let minimizers: Vec<&Graph> = graphs
            .iter()
            .filter(|(g, r)| g.order() == m && r.is_excellent() && Some(g.edge_count()) == min)
            .map(|(g, _)| g)
            .collect();
        let ok = if m == 3 {
            min == Some(3) && minimizers.len() == 1 && canon::graph_canonical_form(minimizers[0])? == k3
        } else {
            min == Some(m - 1) && minimizers.iter().all(|g| g.is_forest())
        };
        Ok((!ok).then(|| Failure::new(None, json!({ "n": m, "min_edges": min, "minimizers": minimizers.len() }))))
    });
    claim.notes = json!(minima);
    Ok(vec![claim])
}

pub(super) fn mincycle(opts: &VerifyOptions) -> Result<Vec<ClaimResult>> {
    let n = opts.limit(12, 14);
    let orders: Vec<usize> = (3..=n).collect();
    let minimal = sweep("cycle-minimality", n, &orders, |&m| {
        let c = Graph::cycle(m)?;
        on(&c, || {
            let minimal = atlas::poset_minimal_check(&c)?;
            Ok((minimal != (m % 3 == 0)).then(|| json!({ "n": m, "minimal": minimal })))
        })
    });
    let weight = sweep("cycle-roman-number", n, &orders, |&m| {
        let c = Graph::cycle(m)?;
        on(&c, || {
            let g = solver::gamma_r(&c)?;
            Ok((g != (2 * m).div_ceil(3)).then(|| json!({ "gamma_r": g })))
        })
    });
    Ok(vec![minimal, weight])
}
