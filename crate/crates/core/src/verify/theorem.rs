//! Recognition against the excellence oracle, certificate replay, exhaustive
//! and random generation, and the base catalog.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{on, single, solved_trees, sweep, ClaimResult, Failure, Outcome, VerifyOptions};
use crate::canon::{self, CanonicalCode};
use crate::error::Result;
use crate::grammar::generate::{candidate_steps, generate_capped};
use crate::grammar::ops::apply_step;
use crate::grammar::{self, Catalog, LabeledTree, OpId, PieceId, Recognition, TSequence};
use crate::graph::{delete_vertices, Tree};
use crate::partition::{self, statuses_from_report, Status};
use crate::solver;

pub(crate) const RANDOM_MAX_ORDER: usize = 200;
/// Random derivations at or below this order also get the full partition check.
pub(crate) const RANDOM_PARTITION_MAX_ORDER: usize = 60;

fn cert_json(cert: &TSequence) -> Value {
    serde_json::to_value(cert).unwrap_or(Value::Null)
}

/// γ_R added by one step.
fn increment(cat: &Catalog, op: OpId, piece: &PieceId) -> Result<usize> {
    let g = cat.gamma_r_of(piece)?;
    Ok(if op.is_attachment() { g } else { g - 1 })
}

/// The statuses are exactly those read off the tree's partition.
fn labels_match_partition(lt: &LabeledTree) -> Result<Option<Value>> {
    let report = partition::partition_report(lt.tree())?;
    if !report.is_excellent() {
        return Ok(Some(json!({ "statuses": lt.status_string(), "excellent": false })));
    }
    let derived = statuses_from_report(lt.tree(), &report)?;
    Ok((derived != lt.statuses()).then(|| {
        let derived: String = derived.iter().map(|s| s.to_string()).collect();
        json!({ "statuses": lt.status_string(), "derived": derived })
    }))
}

/// `map` carries `lt` onto `replayed` preserving edges and statuses.
fn map_is_labeled_isomorphism(lt: &LabeledTree, replayed: &LabeledTree, map: &[usize]) -> bool {
    let n = lt.order();
    if replayed.order() != n || map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &r in map {
        if r >= n || hit[r] {
            return false;
        }
        hit[r] = true;
    }
    (0..n).all(|v| {
        replayed.status(map[v]) == lt.status(v) && lt.tree().neighbors(v).iter().all(|&w| replayed.tree().has_edge(map[v], map[w]))
    })
}

/// Replay a certificate checking each step's γ_R increment, that earlier
/// statuses are unchanged, and (up to `partition_max`) that every
/// intermediate labeling is the one read off its partition.
pub(crate) fn replay_checked(cert: &TSequence, cat: &Catalog, partition_max: usize) -> Result<Option<Value>> {
    let base = cert.base_tree(cat)?;
    let mut gamma_r = solver::gamma_r_tree(base.tree());
    if gamma_r != cat.gamma_r_of(&cert.base)? {
        return Ok(Some(json!({ "step": null, "problem": "base weight" })));
    }
    let mut problem: Option<Value> = None;
    cert.replay_with(cat, |i, before, applied| {
        if problem.is_some() {
            return Ok(());
        }
        let step = &cert.steps[i];
        let after = &applied.tree;
        let want = gamma_r + increment(cat, step.op, &step.piece)?;
        let got = solver::gamma_r_tree(after.tree());
        let stable = (0..before.order()).all(|v| after.status(v) == before.status(v));
        let structure = after.structural_violations();
        if got != want || !stable || !structure.is_empty() {
            problem = Some(json!({ "step": i, "gamma_r": got, "expected": want, "stable": stable, "structure": structure }));
        } else if after.order() <= partition_max {
            if let Some(d) = labels_match_partition(after)? {
                problem = Some(json!({ "step": i, "labels": d }));
            }
        }
        gamma_r = got;
        Ok(())
    })?;
    Ok(problem)
}

/// Every labeled tree derivable from the catalog entries with at most
/// `max_n` vertices, keyed by labeled code.
pub(crate) fn derivable_closure(cat: &Catalog, max_n: usize) -> Result<BTreeMap<CanonicalCode, LabeledTree>> {
    let mut seen: HashMap<CanonicalCode, LabeledTree> = HashMap::new();
    let mut frontier: Vec<LabeledTree> = Vec::new();
    for e in cat.entries().iter().filter(|e| e.tree.order() <= max_n) {
        if seen.insert(e.tree.code(), e.tree.clone()).is_none() {
            frontier.push(e.tree.clone());
        }
    }
    while !frontier.is_empty() {
        let grown: Vec<(CanonicalCode, LabeledTree)> = frontier
            .par_iter()
            .map(|t| -> Result<Vec<(CanonicalCode, LabeledTree)>> {
                let mut out = Vec::new();
                for step in candidate_steps(t, &OpId::MAIN, cat)? {
                    let added = cat.piece_order(&step.piece)? - usize::from(!step.op.is_attachment());
                    if t.order() + added > max_n {
                        continue;
                    }
                    let next = apply_step(t, &step, cat)?.tree;
                    out.push((next.code(), next));
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        frontier.clear();
        for (code, t) in grown {
            if !seen.contains_key(&code) {
                seen.insert(code, t.clone());
                frontier.push(t);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn check_recognition(t: &Tree, cat: &Catalog) -> Result<Option<Value>> {
    let report = partition::partition_report(t)?;
    match grammar::recognize::recognize_with(t, cat)? {
        Recognition::Reject { witness, .. } => {
            if report.is_excellent() {
                return Ok(Some(json!({ "verdict": "reject", "excellent": true })));
            }
            // the witness must be 0 in every γ_R-function: pinning 1 or 2 costs more
            let one = solver::gamma_r_constrained(t, witness, 1)?;
            let two = solver::gamma_r_constrained(t, witness, 2)?;
            let zero_only = [one, two].iter().all(|w| w.is_none_or(|w| w > report.gamma_r));
            Ok((!zero_only).then(|| json!({ "verdict": "reject", "witness": witness })))
        }
        Recognition::Accept { labeled, cert, map } => {
            if !report.is_excellent() {
                return Ok(Some(json!({ "verdict": "accept", "excellent": false, "certificate": cert_json(&cert) })));
            }
            let replayed = cert.replay(cat)?;
            if !map_is_labeled_isomorphism(&labeled, &replayed, &map) {
                return Ok(Some(json!({ "problem": "replay does not match", "certificate": cert_json(&cert) })));
            }
            if let Some(d) = labels_match_partition(&labeled)? {
                return Ok(Some(json!({ "problem": "labels", "labels": d, "certificate": cert_json(&cert) })));
            }
            Ok(replay_checked(&cert, cat, usize::MAX)?
                .map(|d| json!({ "problem": "replay", "at": d, "certificate": cert_json(&cert) })))
        }
    }
}

fn check_random(seed: u64, steps: usize, cat: &Catalog) -> Outcome {
    let (t, cert) = generate_capped(seed, steps, &OpId::MAIN, RANDOM_MAX_ORDER, cat)?;
    let fail = |what: Value| Some(Failure::new(Some(t.tree()), json!({ "seed": seed, "steps": steps, "certificate": cert_json(&cert), "problem": what })));
    if t.order() > RANDOM_MAX_ORDER {
        return Ok(fail(json!("order above cap")));
    }
    if cert.replay(cat)? != t {
        return Ok(fail(json!("replay differs")));
    }
    if let Some(msg) = t.structural_violations().into_iter().next() {
        return Ok(fail(json!(msg)));
    }
    if let Some(d) = replay_checked(&cert, cat, RANDOM_PARTITION_MAX_ORDER)? {
        return Ok(fail(d));
    }
    if t.order() <= RANDOM_PARTITION_MAX_ORDER {
        if let Some(d) = labels_match_partition(&t)? {
            return Ok(fail(d));
        }
        if !grammar::recognize::recognize_with(t.tree(), cat)?.is_accept() {
            return Ok(fail(json!("recognizer rejects a derived tree")));
        }
    }
    Ok(None)
}

fn catalog_claims(cat: &Catalog) -> Vec<ClaimResult> {
    let mut claims = Vec::new();
    claims.push(single("catalog-strata-and-shapes", 10, || {
        let pinned = [
            (1u8, Tree::path(2)?, "DD"),
            (2, Tree::path(4)?, "ABBA"),
            (11, Tree::path(5)?, "DDCDD"),
        ];
        let mut problems = Vec::new();
        if cat.strata != [1, 1, 9] || cat.entries().len() != 11 {
            problems.push(format!("strata {:?}, {} entries", cat.strata, cat.entries().len()));
        }
        for (k, t, s) in pinned {
            let lt = LabeledTree::with_status_string(t, s)?;
            if cat.lookup(&lt).map(|e| e.index) != Some(k) {
                problems.push(format!("{s} is not H{k}"));
            }
        }
        // γ_R(H3) = 4, γ_R(H4) = 5, γ_R(H6) = 6
        for (k, n, g) in [(3u8, 6usize, 4usize), (4, 7, 5), (6, 8, 6)] {
            let e = cat.entry(k)?;
            if e.tree.order() != n || e.gamma_r != g || solver::gamma_r_tree(e.tree.tree()) != g {
                problems.push(format!("H{k} has order {} and gamma_r {}", e.tree.order(), e.gamma_r));
            }
        }
        Ok((!problems.is_empty()).then(|| Failure::new(None, json!({ "problems": problems }))))
    }));

    claims.push(sweep("catalog-entries-carry-partition-labels", 10, cat.entries(), |e| {
        on(e.tree.tree(), || {
            let mut d = labels_match_partition(&e.tree)?;
            if d.is_none() && e.tree.k() > 2 {
                d = Some(json!({ "k": e.tree.k() }));
            }
            Ok(d)
        })
    }));

    // every A vertex of every entry: deleting it, or it and its neighbor
    // when it is a leaf, costs exactly one
    let a_vertices: Vec<(u8, usize)> = cat
        .entries()
        .iter()
        .flat_map(|e| e.tree.vertices_with(Status::A).into_iter().map(move |v| (e.index, v)))
        .collect();
    claims.push(sweep("catalog-a-vertex-deletions", 10, &a_vertices, |&(k, v)| {
        let e = cat.entry(k)?;
        let t = e.tree.tree();
        on(t, || {
            let minus_v = solver::gamma_r_forest(&delete_vertices(t, &[v])?.graph)?;
            let mut bad = minus_v + 1 != e.gamma_r;
            let mut minus_vx = None;
            if t.degree(v) == 1 {
                let x = t.neighbors(v)[0];
                let d = delete_vertices(t, &[v])?;
                let x_new = d.old_to_new[x].expect("x survives");
                let w = solver::gamma_r_forest(&delete_vertices(t, &[v, x])?.graph)?;
                minus_vx = Some(w);
                bad |= w + 1 != e.gamma_r;
                // x is 0 under every γ_R-function of H - v
                bad |= partition::partition_report_forest(&d.graph, &Default::default())?.value_sets[x_new] != partition::V0;
            }
            Ok(bad.then(|| json!({ "entry": e.name(), "vertex": v, "minus_v": minus_v, "minus_vx": minus_vx })))
        })
    }));
    claims
}

pub(super) fn run(opts: &VerifyOptions) -> Result<Vec<ClaimResult>> {
    let cat = grammar::catalog()?;
    let n_rec = opts.limit(14, 14);
    let n_closure = opts.limit(16, 16);
    let samples = opts.samples(10_000);
    let trees: Vec<Tree> = solved_trees(2, n_rec)?.into_iter().map(|s| s.tree).collect();
    let mut claims = Vec::new();

    claims.push(sweep("recognizer-agrees-with-excellence", n_rec, &trees, |t| on(t, || check_recognition(t, cat))));

    let start = std::time::Instant::now();
    let closure = derivable_closure(cat, n_closure)?;
    let closure_seconds = start.elapsed().as_secs_f64();
    let derived: Vec<&LabeledTree> = closure.values().collect();
    let mut c = sweep("derivable-trees-carry-partition-labels", n_closure, &derived, |lt| {
        on(lt.tree(), || labels_match_partition(lt))
    });
    c.seconds += closure_seconds;
    let mut per_n: BTreeMap<usize, usize> = BTreeMap::new();
    for lt in &derived {
        *per_n.entry(lt.order()).or_default() += 1;
    }
    c.notes = json!({ "labeled_trees_per_order": per_n });
    claims.push(c);

    // and conversely every excellent tree is derivable
    let n_complete = n_closure.min(n_rec);
    let orders: Vec<usize> = (2..=n_complete).collect();
    let excellent_codes: BTreeSet<(usize, CanonicalCode)> = trees
        .par_iter()
        .filter_map(|t| match partition::is_excellent(t) {
            Ok(true) => Some(Ok((t.order(), canon::canonical_code(t)))),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    let derived_codes: BTreeSet<(usize, CanonicalCode)> =
        derived.iter().filter(|lt| lt.order() <= n_complete).map(|lt| (lt.order(), canon::canonical_code(lt.tree()))).collect();
    claims.push(sweep("excellent-trees-are-derivable", n_complete, &orders, |&n| {
        let a: BTreeSet<_> = excellent_codes.iter().filter(|p| p.0 == n).collect();
        let b: BTreeSet<_> = derived_codes.iter().filter(|p| p.0 == n).collect();
        Ok((a != b).then(|| Failure::new(None, json!({ "n": n, "excellent": a.len(), "derived": b.len() }))))
    }));

    let seeds: Vec<u64> = (0..samples as u64).collect();
    claims.push(sweep("random-derivations", RANDOM_MAX_ORDER, &seeds, |&i| {
        check_random(opts.seed.wrapping_add(i), 1 + (i % 64) as usize, cat)
    }));

    claims.extend(catalog_claims(cat));
    Ok(claims)
}
