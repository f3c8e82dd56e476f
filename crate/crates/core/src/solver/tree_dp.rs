//! Linear-time Roman domination on forests.
//!
//! Each rooted vertex keeps four minima: labeled 2, labeled 1, labeled 0 and
//! dominated by a child labeled 2, labeled 0 and waiting for its parent to
//! be labeled 2. Per-vertex rules restrict the allowed labels and can mark a
//! vertex as already dominated from outside the forest.

use crate::error::{Error, Result};
use crate::graph::{Graph, Tree};
use crate::solver::rdf::RdFunction;

pub(crate) const INF: usize = usize::MAX / 4;

/// Label restriction for one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexRule {
    /// Bit `c` set iff label `c` is allowed.
    pub allowed: u8,
    /// Vertex counts as dominated even if labeled 0 with no 2-neighbor.
    pub predominated: bool,
}

impl VertexRule {
    pub const FREE: VertexRule = VertexRule { allowed: 0b111, predominated: false };

    pub fn pinned(c: u8) -> VertexRule {
        VertexRule { allowed: 1 << c, predominated: false }
    }

    fn allows(self, c: u8) -> bool {
        self.allowed >> c & 1 == 1
    }
}

/// The four per-vertex minima.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpState {
    pub s2: usize,
    pub s1: usize,
    /// 0 and dominated (by a child labeled 2, or from outside).
    pub s0d: usize,
    /// 0 and undominated below; the parent must be labeled 2.
    pub s0u: usize,
}

impl DpState {
    const LEAF: DpState = DpState { s2: 2, s1: 1, s0d: INF, s0u: 0 };

    fn closed(&self) -> usize {
        self.s2.min(self.s1).min(self.s0d)
    }

    fn any(&self) -> usize {
        self.closed().min(self.s0u)
    }
}

/// DP table of a rooted forest: per-vertex states plus the traversal used.
#[derive(Debug, Clone)]
pub struct DpTable {
    pub states: Vec<DpState>,
    parent: Vec<usize>,
    order: Vec<usize>,
    roots: Vec<usize>,
}

fn add(a: usize, b: usize) -> usize {
    (a + b).min(INF)
}

fn rooted_forest(g: &Graph) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let n = g.order();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut roots = Vec::new();
    for r in 0..n {
        if seen[r] {
            continue;
        }
        roots.push(r);
        seen[r] = true;
        let start = order.len();
        order.push(r);
        let mut i = start;
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
    }
    (order, parent, roots)
}

fn children<'a>(g: &'a Graph, parent: &'a [usize], u: usize) -> impl Iterator<Item = usize> + 'a {
    g.neighbors(u).iter().copied().filter(move |&w| parent[w] == u)
}

fn check_rules(g: &Graph, rules: &[VertexRule]) -> Result<()> {
    if rules.len() != g.order() {
        return Err(Error::SizeMismatch { expected: g.order(), got: rules.len() });
    }
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    Ok(())
}

/// Fill the table bottom-up.
pub fn dp_table(g: &Graph, rules: &[VertexRule]) -> Result<DpTable> {
    check_rules(g, rules)?;
    let (order, parent, roots) = rooted_forest(g);
    let mut states = vec![DpState::LEAF; g.order()];
    for &u in order.iter().rev() {
        let rule = rules[u];
        let mut sum_any = 0;
        let mut sum_closed = 0;
        let mut best_gap = INF;
        for c in children(g, &parent, u) {
            let s = states[c];
            sum_any = add(sum_any, s.any());
            sum_closed = add(sum_closed, s.closed());
            best_gap = best_gap.min(s.s2.saturating_sub(s.closed()));
        }
        let mut st = DpState { s2: INF, s1: INF, s0d: INF, s0u: INF };
        if rule.allows(2) {
            st.s2 = add(2, sum_any);
        }
        if rule.allows(1) {
            st.s1 = add(1, sum_closed);
        }
        if rule.allows(0) {
            if rule.predominated {
                st.s0d = sum_closed;
                st.s0u = sum_closed;
            } else {
                st.s0d = add(sum_closed, best_gap);
                st.s0u = sum_closed;
            }
        }
        states[u] = st;
    }
    Ok(DpTable { states, parent, order, roots })
}

impl DpTable {
    /// Minimum total weight, or `None` if the rules admit no RDF.
    pub fn value(&self) -> Option<usize> {
        let total = self
            .roots
            .iter()
            .fold(0, |acc, &r| add(acc, self.states[r].closed()));
        (total < INF).then_some(total)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Pick {
    Two,
    One,
    ZeroDominated,
    ZeroUp,
}

fn argmin_closed(s: &DpState) -> Pick {
    let m = s.closed();
    if s.s2 == m {
        Pick::Two
    } else if s.s1 == m {
        Pick::One
    } else {
        Pick::ZeroDominated
    }
}

fn argmin_any(s: &DpState) -> Pick {
    if s.s0u < s.closed() {
        Pick::ZeroUp
    } else {
        argmin_closed(s)
    }
}

/// One minimum-weight RDF obeying `rules`, or `None` if infeasible.
pub fn optimal_with_rules(g: &Graph, rules: &[VertexRule]) -> Result<Option<RdFunction>> {
    let table = dp_table(g, rules)?;
    if table.value().is_none() {
        return Ok(None);
    }
    let n = g.order();
    let st = &table.states;
    let mut pick = vec![Pick::Two; n];
    for &r in &table.roots {
        pick[r] = argmin_closed(&st[r]);
    }
    for &u in &table.order {
        let kids: Vec<usize> = children(g, &table.parent, u).collect();
        match pick[u] {
            Pick::Two => {
                for c in kids {
                    pick[c] = argmin_any(&st[c]);
                }
            }
            Pick::One | Pick::ZeroUp => {
                for c in kids {
                    pick[c] = argmin_closed(&st[c]);
                }
            }
            Pick::ZeroDominated => {
                let forced = if rules[u].predominated {
                    None
                } else {
                    kids.iter().copied().min_by_key(|&c| st[c].s2.saturating_sub(st[c].closed()))
                };
                for c in kids {
                    pick[c] = if Some(c) == forced { Pick::Two } else { argmin_closed(&st[c]) };
                }
            }
        }
    }
    let values = pick
        .iter()
        .map(|p| match p {
            Pick::Two => 2,
            Pick::One => 1,
            Pick::ZeroDominated | Pick::ZeroUp => 0,
        })
        .collect();
    Ok(Some(RdFunction::from_trusted(values)))
}

/// Minimum weight of an RDF on a forest obeying `rules`.
pub fn gamma_r_with_rules(g: &Graph, rules: &[VertexRule]) -> Result<Option<usize>> {
    Ok(dp_table(g, rules)?.value())
}

/// γ_R of a forest, summed over components.
pub fn gamma_r_forest(g: &Graph) -> Result<usize> {
    let rules = vec![VertexRule::FREE; g.order()];
    Ok(gamma_r_with_rules(g, &rules)?.expect("unrestricted forests always admit an RDF"))
}

pub fn gamma_r_tree(t: &Tree) -> usize {
    gamma_r_forest(t).expect("trees are forests")
}

/// One γ_R-function of `t`.
pub fn optimal_rdf_tree(t: &Tree) -> RdFunction {
    let rules = vec![VertexRule::FREE; t.order()];
    optimal_with_rules(t, &rules)
        .expect("trees are forests")
        .expect("unrestricted trees always admit an RDF")
}

/// Minimum weight of an RDF with `f(v) = c`; `None` when no such RDF exists
/// (only for an isolated vertex pinned to 0).
pub fn gamma_r_constrained(g: &Graph, v: usize, c: u8) -> Result<Option<usize>> {
    g.check_vertex(v)?;
    if c > 2 {
        return Err(Error::InvalidLabel(c));
    }
    let mut rules = vec![VertexRule::FREE; g.order()];
    rules[v] = VertexRule::pinned(c);
    gamma_r_with_rules(g, &rules)
}

/// γ_R(T + xy) for a non-edge `xy` of the forest `g`, without brute force.
pub fn gamma_r_forest_plus_edge(g: &Graph, x: usize, y: usize) -> Result<usize> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y || g.has_edge(x, y) {
        return Err(Error::Input(format!("{x}-{y} is not a non-edge")));
    }
    let mut best = gamma_r_forest(g)?;
    for (a, b) in [(x, y), (y, x)] {
        let mut rules = vec![VertexRule::FREE; g.order()];
        rules[a] = VertexRule::pinned(2);
        rules[b] = VertexRule { allowed: 1, predominated: true };
        if let Some(w) = gamma_r_with_rules(g, &rules)? {
            best = best.min(w);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::rdf::is_rdf;

    #[test]
    fn small_values() {
        assert_eq!(gamma_r_tree(&Tree::single()), 1);
        assert_eq!(gamma_r_tree(&Tree::path(2).unwrap()), 2);
        assert_eq!(gamma_r_tree(&Tree::path(4).unwrap()), 3);
        assert_eq!(gamma_r_tree(&Tree::path(5).unwrap()), 4);
        assert_eq!(gamma_r_tree(&Tree::star(5)), 2);
        let p5 = Tree::path(5).unwrap();
        let two = crate::graph::attach_edge(&p5, 2, &p5, 2).unwrap();
        assert_eq!(gamma_r_tree(&two), 8);
    }

    #[test]
    fn constrained_examples() {
        let p3 = Graph::path(3);
        assert_eq!(gamma_r_constrained(&p3, 1, 2).unwrap(), Some(2));
        assert_eq!(gamma_r_constrained(&p3, 0, 2).unwrap(), Some(3));
        assert_eq!(gamma_r_constrained(&Graph::empty(1), 0, 0).unwrap(), None);
        assert_eq!(gamma_r_constrained(&Graph::empty(1), 0, 1).unwrap(), Some(1));
        assert!(gamma_r_constrained(&p3, 0, 3).is_err());
    }

    #[test]
    fn traceback_is_optimal() {
        for n in 1..=9 {
            for t in crate::enumerate::enumerate_trees(n).unwrap() {
                let f = optimal_rdf_tree(&t);
                assert!(is_rdf(&t, &f).unwrap());
                assert_eq!(f.weight(), gamma_r_tree(&t));
                for v in 0..n {
                    for c in 0..3u8 {
                        let mut rules = vec![VertexRule::FREE; n];
                        rules[v] = VertexRule::pinned(c);
                        let w = gamma_r_with_rules(&t, &rules).unwrap();
                        let g = optimal_with_rules(&t, &rules).unwrap();
                        assert_eq!(w, g.as_ref().map(RdFunction::weight));
                        if let Some(g) = g {
                            assert_eq!(g.get(v), c);
                            assert!(is_rdf(&t, &g).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn forests_sum_components() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(gamma_r_forest(&g).unwrap(), 5);
        assert!(matches!(gamma_r_forest(&Graph::cycle(3).unwrap()), Err(Error::NotAForest)));
    }

    #[test]
    fn edge_addition_on_paths() {
        // P_4 plus the edge between its ends is C_4
        assert_eq!(gamma_r_forest_plus_edge(&Graph::path(4), 0, 3).unwrap(), 3);
        // P_3 + the end-to-end edge is K_3
        assert_eq!(gamma_r_forest_plus_edge(&Graph::path(3), 0, 2).unwrap(), 2);
        // 4-cycle with a pendant vertex
        assert_eq!(gamma_r_forest_plus_edge(&Graph::path(5), 0, 3).unwrap(), 3);
    }
}
