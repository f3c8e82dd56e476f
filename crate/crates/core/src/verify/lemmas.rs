//! Vertex deletion, edge addition, the structure of single γ_R-functions,
//! the partition of excellent trees, and coalescence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{graph_json, on, solved_graphs, solved_trees, sweep, ClaimResult, Failure, Outcome, Solved, VerifyOptions};
use crate::error::Result;
use crate::graph::{self, delete_vertices, Graph, Tree};
use crate::partition::{self, PartitionReport, ValueSet, V01, V012, V02};
use crate::solver::{self, brute, RdFunction};

/// Random tree with a uniformly chosen parent for each vertex after the first.
pub(crate) fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Result<Tree> {
    let parents: Vec<usize> = (1..n).map(|i| rng.random_range(0..i)).collect();
    Tree::from_parents(&parents)
}

/// Deleting `v` lowers γ_R iff some γ_R-function puts 1 on `v`, and then by exactly one.
fn minus_holds(g: &Graph, report: &PartitionReport) -> Result<Option<Value>> {
    for v in 0..g.order() {
        let d = solver::gamma_r(&delete_vertices(g, &[v])?.graph)?;
        let lowered = d < report.gamma_r;
        let has_one = report.value_sets[v].contains(1);
        if lowered != has_one || (lowered && d + 1 != report.gamma_r) {
            return Ok(Some(json!({ "vertex": v, "gamma_r_minus_v": d, "value_set": report.value_sets[v].as_str() })));
        }
    }
    Ok(None)
}

/// The sandwich γ_R(G) ≥ γ_R(G+xy) ≥ γ_R(G) − 1, with a drop exactly when
/// some γ_R-function labels {x, y} with {1, 2}.
fn addedge_holds(g: &Graph, funcs: &[RdFunction], gamma_r: usize) -> Result<Option<Value>> {
    for (x, y) in g.non_edges() {
        let plus = solver::gamma_r_plus_edge(g, x, y)?;
        let one_two = funcs.iter().any(|f| f.get(x) + f.get(y) == 3);
        if plus > gamma_r || plus + 1 < gamma_r || (plus + 1 == gamma_r) != one_two {
            return Ok(Some(json!({ "x": x, "y": y, "gamma_r_plus_edge": plus, "one_two_function": one_two })));
        }
    }
    Ok(None)
}

/// In every γ_R-function the 1-vertices induce components of order at most
/// two and no edge joins a 1-vertex to a 2-vertex.
fn ones_are_small(g: &Graph, funcs: &[RdFunction]) -> Option<Value> {
    for f in funcs {
        for v in (0..g.order()).filter(|&v| f.get(v) == 1) {
            let ones = g.neighbors(v).iter().filter(|&&w| f.get(w) == 1).count();
            let twos = g.neighbors(v).iter().any(|&w| f.get(w) == 2);
            if ones > 1 || twos {
                return Some(json!({ "function": f.to_string(), "vertex": v }));
            }
        }
    }
    None
}

/// The three neighborhood rules for excellent trees.
fn adjacency_rules(t: &Tree, report: &PartitionReport) -> Option<Value> {
    let sets = &report.value_sets;
    let minus = |v: usize| sets[v].contains(1);
    for x in 0..t.order() {
        let nbrs = t.neighbors(x);
        let in_minus: Vec<usize> = nbrs.iter().copied().filter(|&w| minus(w)).collect();
        let bad = match sets[x] {
            V012 => in_minus.len() != 1 || sets[in_minus[0]] != V012,
            V02 if t.degree(x) >= 3 => in_minus.len() != 2,
            V02 if t.degree(x) == 2 => {
                let both_012 = nbrs.iter().all(|&w| sets[w] == V012);
                // a path u, x, y, z with u, z in V01 and y a degree-2 V02 vertex
                let path = nbrs.iter().any(|&y| {
                    let u = nbrs.iter().copied().find(|&w| w != y).expect("degree 2");
                    sets[u] == V01
                        && sets[y] == V02
                        && t.degree(y) == 2
                        && t.neighbors(y).iter().any(|&z| z != x && sets[z] == V01)
                });
                !both_012 && !path
            }
            V01 => nbrs.iter().any(|&w| sets[w] == V01),
            _ => false,
        };
        if bad {
            return Some(json!({ "vertex": x, "value_set": sets[x].as_str() }));
        }
    }
    None
}

/// Which coalescence statement a random pair exercises.
#[derive(Clone, Copy)]
enum Glue {
    /// Any glue point that lands in V01 of the result.
    IntoV01,
    /// V01 in both parts.
    BothV01,
    /// V012 in the first part, V01 in the second.
    V012IntoV01,
}

struct Pair {
    t1: Tree,
    t2: Tree,
    r1: PartitionReport,
    r2: PartitionReport,
    x1: usize,
    x2: usize,
}

const PAIR_ATTEMPTS: usize = 10_000;

fn pick(rng: &mut ChaCha8Rng, r: &PartitionReport, set: ValueSet) -> Option<usize> {
    let c = r.class(set);
    (!c.is_empty()).then(|| c[rng.random_range(0..c.len())])
}

/// Draw trees of order 2..=10 and glue points until the pair qualifies.
fn random_pair(seed: u64, index: u64, kind: Glue) -> Result<Option<Pair>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    for _ in 0..PAIR_ATTEMPTS {
        let n1 = rng.random_range(2..=10);
        let n2 = rng.random_range(2..=10);
        let t1 = random_tree(&mut rng, n1)?;
        let t2 = random_tree(&mut rng, n2)?;
        let r1 = partition::partition_report(&t1)?;
        let r2 = partition::partition_report(&t2)?;
        let (x1, x2) = match kind {
            Glue::IntoV01 => (rng.random_range(0..n1), rng.random_range(0..n2)),
            Glue::BothV01 | Glue::V012IntoV01 => {
                let first = if matches!(kind, Glue::BothV01) { V01 } else { V012 };
                match (pick(&mut rng, &r1, first), pick(&mut rng, &r2, V01)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => continue,
                }
            }
        };
        if matches!(kind, Glue::IntoV01) {
            let c = graph::coalesce(&t1, x1, &t2, x2)?;
            if partition::partition_report(&c.graph)?.value_sets[c.merged] != V01 {
                continue;
            }
        }
        return Ok(Some(Pair { t1, t2, r1, r2, x1, x2 }));
    }
    Ok(None)
}

fn check_pair(seed: u64, index: u64, kind: Glue) -> Outcome {
    let Some(p) = random_pair(seed, index, kind)? else {
        return Ok(Some(Failure::new(None, json!({ "index": index, "error": "no qualifying pair drawn" }))));
    };
    let c = graph::coalesce(&p.t1, p.x1, &p.t2, p.x2)?;
    let g = &c.graph;
    let r = partition::partition_report(g)?;
    let mut problems = Vec::new();
    if r.gamma_r + 1 != p.r1.gamma_r + p.r2.gamma_r {
        problems.push(format!("gamma_r {} vs parts {} + {}", r.gamma_r, p.r1.gamma_r, p.r2.gamma_r));
    }
    match kind {
        Glue::IntoV01 => {}
        Glue::BothV01 => {
            let first = (0..p.t1.order()).find(|&v| r.value_sets[v] != p.r1.value_sets[v]);
            let second = (0..p.t2.order()).find(|&w| r.value_sets[c.second_map[w]] != p.r2.value_sets[w]);
            if let Some(v) = first {
                problems.push(format!("first part vertex {v} changed class"));
            }
            if let Some(w) = second {
                problems.push(format!("second part vertex {w} changed class"));
            }
        }
        Glue::V012IntoV01 => {
            if r.value_sets[c.merged] != V012 {
                problems.push(format!("merged vertex has class {}", r.value_sets[c.merged]));
            }
        }
    }
    if problems.is_empty() {
        return Ok(None);
    }
    let detail = json!({
        "index": index,
        "first": graph_json(&p.t1),
        "second": graph_json(&p.t2),
        "glue": [p.x1, p.x2],
        "problems": problems,
    });
    Ok(Some(Failure::new(Some(g), detail)))
}

pub(super) fn run(opts: &VerifyOptions) -> Result<Vec<ClaimResult>> {
    let n_minus = opts.limit(12, 14);
    let n_funcs = opts.limit(10, 12);
    let n_trees = opts.limit(14, 14);
    let n_graphs = opts.limit(7, 7);
    let pairs = opts.samples(1000) as u64;
    let trees = solved_trees(1, n_minus.max(n_funcs).max(n_trees))?;
    let graphs = solved_graphs(1, n_graphs)?;
    let upto = |lo: usize, n: usize| -> Vec<&Solved> {
        trees.iter().filter(|s| (lo..=n).contains(&s.tree.order())).collect()
    };
    let excellent = |n: usize| -> Vec<&Solved> {
        trees.iter().filter(|s| (2..=n).contains(&s.tree.order()) && s.report.is_excellent()).collect()
    };
    let mut claims = Vec::new();

    claims.push(sweep("vertex-deletion-trees", n_minus, &upto(1, n_minus), |s| {
        on(&s.tree, || minus_holds(&s.tree, &s.report))
    }));
    claims.push(sweep("vertex-deletion-graphs", n_graphs, &graphs, |(g, r)| on(g, || minus_holds(g, r))));

    claims.push(sweep("edge-addition-graphs", n_graphs, &graphs, |(g, r)| {
        on(g, || addedge_holds(g, &brute::enumerate_gamma_r_functions(g)?, r.gamma_r))
    }));
    claims.push(sweep("edge-addition-trees", n_funcs, &upto(1, n_funcs), |s| {
        on(&s.tree, || addedge_holds(&s.tree, &brute::enumerate_gamma_r_functions(&s.tree)?, s.report.gamma_r))
    }));

    claims.push(sweep("ones-induce-small-components-trees", n_funcs, &upto(1, n_funcs), |s| {
        on(&s.tree, || Ok(ones_are_small(&s.tree, &brute::enumerate_gamma_r_functions(&s.tree)?)))
    }));
    claims.push(sweep("ones-induce-small-components-graphs", n_graphs, &graphs, |(g, _)| {
        on(g, || Ok(ones_are_small(g, &brute::enumerate_gamma_r_functions(g)?)))
    }));

    claims.push(sweep("v-minus-by-deletion-trees", n_minus, &upto(1, n_minus), |s| {
        on(&s.tree, || {
            let by_deletion = partition::v_minus(&s.tree)?;
            Ok((by_deletion != s.report.v_minus()).then(|| json!({ "by_deletion": by_deletion })))
        })
    }));
    claims.push(sweep("v-minus-by-deletion-graphs", n_graphs, &graphs, |(g, r)| {
        on(g, || {
            let by_deletion = partition::v_minus(g)?;
            Ok((by_deletion != r.v_minus()).then(|| json!({ "by_deletion": by_deletion })))
        })
    }));

    claims.push(sweep("excellent-tree-classes", n_trees, &excellent(n_trees), |s| {
        on(&s.tree, || {
            let odd = (0..s.tree.order()).find(|&v| ![V01, V02, V012].contains(&s.report.value_sets[v]));
            Ok(odd.map(|v| json!({ "vertex": v, "value_set": s.report.value_sets[v].as_str() })))
        })
    }));

    claims.push(sweep("v-minus-components-trees", n_trees, &upto(1, n_trees), |s| {
        on(&s.tree, || {
            let minus = |v: usize| s.report.value_sets[v].contains(1);
            let odd = (0..s.tree.order())
                .find(|&v| minus(v) && s.tree.neighbors(v).iter().filter(|&&w| minus(w)).count() > 1);
            Ok(odd.map(|v| json!({ "vertex": v })))
        })
    }));

    claims.push(sweep("excellent-tree-adjacency", n_trees, &excellent(n_trees), |s| {
        on(&s.tree, || Ok(adjacency_rules(&s.tree, &s.report)))
    }));

    let indices: Vec<u64> = (0..pairs).collect();
    for (name, kind) in [
        ("coalescence-into-v01", Glue::IntoV01),
        ("coalescence-v01-v01", Glue::BothV01),
        ("coalescence-v012-v01", Glue::V012IntoV01),
    ] {
        claims.push(sweep(name, 19, &indices, |&i| check_pair(opts.seed, i, kind)));
    }

    claims.push(sweep("critical-graphs-are-excellent", n_graphs, &graphs, |(g, r)| {
        on(g, || {
            let cvr = partition::is_cvr(g)?;
            let cea = partition::is_cea(g)?;
            Ok(((cvr || cea) && !r.is_excellent()).then(|| json!({ "cvr": cvr, "cea": cea })))
        })
    }));
    claims.push(sweep("critical-trees-are-excellent", n_funcs, &upto(1, n_funcs), |s| {
        on(&s.tree, || {
            let cvr = partition::is_cvr(&s.tree)?;
            let cea = partition::is_cea(&s.tree)?;
            Ok(((cvr || cea) && !s.report.is_excellent()).then(|| json!({ "cvr": cvr, "cea": cea })))
        })
    }));

    let neutral_edges = |g: &Graph, r: &PartitionReport| -> Result<Option<Value>> {
        if !r.is_excellent() {
            return Ok(None);
        }
        for (x, y) in g.non_edges() {
            if solver::gamma_r_plus_edge(g, x, y)? == r.gamma_r
                && !partition::partition_report_graph(&g.with_edge(x, y)?)?.is_excellent()
            {
                return Ok(Some(json!({ "x": x, "y": y })));
            }
        }
        Ok(None)
    };
    claims.push(sweep("neutral-edge-keeps-excellence-graphs", n_graphs, &graphs, |(g, r)| {
        on(g, || neutral_edges(g, r))
    }));
    claims.push(sweep("neutral-edge-keeps-excellence-trees", n_funcs, &upto(1, n_funcs), |s| {
        on(&s.tree, || neutral_edges(&s.tree, &s.report))
    }));

    Ok(claims)
}
