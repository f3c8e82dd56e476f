//! Simple undirected graphs, trees, and the structural constructors the rest
//! of the crate builds on.
//!
//! Surgery (deletion, coalescence, edge attachment) always reports how old
//! vertex indices map to new ones so callers never have to guess.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, ParseError, Result};

/// Largest vertex index accepted by [`parse_graph`].
pub const MAX_PARSE_INDEX: usize = 1 << 24;

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        for w in [u, v] {
            if w >= n {
                return Err(Error::InvalidVertex { vertex: w, order: n });
            }
        }
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are simple")
    }

    /// Cycle `C_n`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::OrderTooSmall { what: "cycle", order: n, min: 3 });
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("complete graph edges are simple")
    }

    /// `K_{1,k}` with the center at index 0.
    pub fn star(k: usize) -> Self {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Graph::from_edges(k + 1, &edges).expect("star edges are simple")
    }

    /// `K_{p,q}`: parts `0..p` and `p..p+q`.
    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..p {
            for v in p..p + q {
                edges.push((u, v));
            }
        }
        Graph::from_edges(p + q, &edges).expect("bipartite edges are simple")
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Non-adjacent pairs `(u, v)` with `u < v`.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, order: self.order() })
        }
    }

    /// Connected-component id per vertex (ids in order of smallest member)
    /// and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.order();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.order() > 0 && self.components().1 == 1
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().1 == self.order()
    }

    /// `G + uv` for a non-edge `uv`.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.insert_edge(u, v)?;
        Ok(g)
    }

    /// `G - uv` for an edge `uv`.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::Input(format!("{u}-{v} is not an edge")));
        }
        let mut g = self.clone();
        g.adj[u].retain(|&w| w != v);
        g.adj[v].retain(|&w| w != u);
        Ok(g)
    }

    /// Open-neighborhood bitmasks; only meaningful for `n <= 64`.
    pub(crate) fn neighbor_masks(&self) -> Vec<u64> {
        self.adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect()
    }

    /// Induced subgraph on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> Result<Graph> {
        let mut old_to_new = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            self.check_vertex(v)?;
            old_to_new[v] = i;
        }
        let mut g = Graph::empty(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            g.adj[i] = self.adj[v]
                .iter()
                .filter_map(|&w| (old_to_new[w] != usize::MAX).then_some(old_to_new[w]))
                .collect();
            g.adj[i].sort_unstable();
        }
        Ok(g)
    }

    /// Edge-list text: a header `n <order>` followed by one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.order());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// A graph checked at construction to be connected with `n - 1` edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree(Graph);

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree(n={}, edges={:?})", self.order(), self.edges().collect::<Vec<_>>())
    }
}

impl Deref for Tree {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl TryFrom<Graph> for Tree {
    type Error = Error;
    fn try_from(g: Graph) -> Result<Tree> {
        Tree::new(g)
    }
}

impl Tree {
    pub fn new(g: Graph) -> Result<Tree> {
        if g.order() == 0 {
            return Err(Error::NotATree("empty graph".into()));
        }
        if g.edge_count() + 1 != g.order() {
            return Err(Error::NotATree(format!(
                "{} vertices but {} edges",
                g.order(),
                g.edge_count()
            )));
        }
        if !g.is_connected() {
            return Err(Error::NotATree("disconnected".into()));
        }
        Ok(Tree(g))
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        Tree::new(Graph::from_edges(n, edges)?)
    }

    /// Tree from a parent array: vertex `i > 0` hangs from `parents[i - 1]`.
    pub fn from_parents(parents: &[usize]) -> Result<Tree> {
        let edges: Vec<_> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
        Tree::from_edges(parents.len() + 1, &edges)
    }

    pub fn single() -> Tree {
        Tree(Graph::empty(1))
    }

    /// `P_n`, `n >= 1`, vertices in path order.
    pub fn path(n: usize) -> Result<Tree> {
        Tree::new(Graph::path(n))
    }

    pub fn star(k: usize) -> Tree {
        Tree(Graph::star(k))
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Vertices adjacent to a leaf.
    pub fn stems(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&v| self.neighbors(v).iter().any(|&w| self.degree(w) == 1))
            .collect()
    }

    /// One or two central vertices, ascending.
    pub fn centers(&self) -> Vec<usize> {
        let n = self.order();
        if n <= 2 {
            return (0..n).collect();
        }
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &leaf in &layer {
                deg[leaf] = 0;
                for &w in self.neighbors(leaf) {
                    if deg[w] > 0 {
                        deg[w] -= 1;
                        if deg[w] == 1 {
                            next.push(w);
                        }
                    }
                }
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    /// BFS distances and parents from `src`, visiting neighbors in index order.
    pub fn bfs(&self, src: usize) -> (Vec<usize>, Vec<Option<usize>>) {
        let n = self.order();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![None; n];
        let mut queue = VecDeque::from([src]);
        dist[src] = 0;
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    /// Deterministic diametral path: BFS from the lowest-index vertex to the
    /// farthest vertex `a` (smallest index on ties), then BFS from `a` to the
    /// farthest `b`; the path runs from `b` back to `a` along BFS parents,
    /// where BFS explores neighbors in ascending index order.
    pub fn diametral_path(&self) -> Vec<usize> {
        let farthest = |dist: &[usize]| {
            let max = *dist.iter().max().expect("non-empty tree");
            dist.iter().position(|&d| d == max).expect("max exists")
        };
        let (d0, _) = self.bfs(0);
        let a = farthest(&d0);
        let (da, parent) = self.bfs(a);
        let b = farthest(&da);
        let mut path = vec![b];
        let mut cur = b;
        while let Some(p) = parent[cur] {
            path.push(p);
            cur = p;
        }
        path
    }
}

/// Result of [`delete_vertices`].
#[derive(Debug, Clone)]
pub struct Deletion {
    pub graph: Graph,
    /// `old_to_new[v]` is `None` for deleted vertices.
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
    /// Component id of each surviving vertex, in new indices.
    pub component: Vec<usize>,
    pub component_count: usize,
}

pub fn delete_vertices(g: &Graph, remove: &[usize]) -> Result<Deletion> {
    let mut gone = vec![false; g.order()];
    for &v in remove {
        g.check_vertex(v)?;
        gone[v] = true;
    }
    let new_to_old: Vec<usize> = (0..g.order()).filter(|&v| !gone[v]).collect();
    let mut old_to_new = vec![None; g.order()];
    for (i, &v) in new_to_old.iter().enumerate() {
        old_to_new[v] = Some(i);
    }
    let graph = g.induced(&new_to_old)?;
    let (component, component_count) = graph.components();
    Ok(Deletion { graph, old_to_new, new_to_old, component, component_count })
}

/// Result of [`coalesce`]: the first graph keeps its indices, the second
/// graph's vertices other than the glued one are appended in order.
#[derive(Debug, Clone)]
pub struct Coalescence<G> {
    pub graph: G,
    pub merged: usize,
    /// Index in the result of each vertex of the second input.
    pub second_map: Vec<usize>,
}

fn coalesce_graphs(g1: &Graph, v1: usize, g2: &Graph, v2: usize) -> Result<Coalescence<Graph>> {
    g1.check_vertex(v1)?;
    g2.check_vertex(v2)?;
    let n1 = g1.order();
    let mut second_map = vec![0; g2.order()];
    let mut next = n1;
    for (w, slot) in second_map.iter_mut().enumerate() {
        if w == v2 {
            *slot = v1;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let mut g = g1.clone();
    g.adj.resize(next, Vec::new());
    for (a, b) in g2.edges() {
        g.insert_edge(second_map[a], second_map[b])?;
    }
    Ok(Coalescence { graph: g, merged: v1, second_map })
}

/// Coalescence of two trees: identify `v1` and `v2`.
pub fn coalesce(t1: &Tree, v1: usize, t2: &Tree, v2: usize) -> Result<Coalescence<Tree>> {
    let c = coalesce_graphs(t1, v1, t2, v2)?;
    Ok(Coalescence { graph: Tree::new(c.graph)?, merged: c.merged, second_map: c.second_map })
}

/// Coalescence of two arbitrary graphs.
pub fn coalesce_graph(g1: &Graph, v1: usize, g2: &Graph, v2: usize) -> Result<Coalescence<Graph>> {
    coalesce_graphs(g1, v1, g2, v2)
}

/// Disjoint union of `t1` and `t2` plus the edge `u x`; the second tree's
/// vertices are shifted by `|t1|`.
pub fn attach_edge(t1: &Tree, u: usize, t2: &Tree, x: usize) -> Result<Tree> {
    t1.check_vertex(u)?;
    t2.check_vertex(x)?;
    let n1 = t1.order();
    let mut g = t1.graph().clone();
    g.adj.resize(n1 + t2.order(), Vec::new());
    for (a, b) in t2.edges() {
        g.insert_edge(n1 + a, n1 + b)?;
    }
    g.insert_edge(u, n1 + x)?;
    Tree::new(g)
}

/// Parse the edge-list format: `u v` lines of non-negative integers, `#`
/// comment lines, blank lines, and an optional leading `n <count>` header.
pub fn parse_graph(text: &str) -> std::result::Result<Graph, ParseError> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut max_index: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens[0] == "n" {
            if declared.is_some() || !edges.is_empty() {
                return Err(ParseError::MisplacedHeader { line });
            }
            if tokens.len() != 2 {
                return Err(ParseError::WrongArity { line, found: tokens.len() - 1 });
            }
            let count = parse_index(tokens[1], line)?;
            if count > MAX_PARSE_INDEX {
                return Err(ParseError::IndexOverflow { line, index: count, limit: MAX_PARSE_INDEX });
            }
            declared = Some(count);
            continue;
        }
        if tokens.len() != 2 {
            return Err(ParseError::WrongArity { line, found: tokens.len() });
        }
        let u = parse_index(tokens[0], line)?;
        let v = parse_index(tokens[1], line)?;
        let limit = declared.map_or(MAX_PARSE_INDEX, |n| n.saturating_sub(1));
        for idx in [u, v] {
            if idx > limit || (declared == Some(0)) {
                return Err(ParseError::IndexOverflow { line, index: idx, limit });
            }
        }
        if u == v {
            return Err(ParseError::LoopEdge { line, vertex: u });
        }
        max_index = Some(max_index.map_or(u.max(v), |m: usize| m.max(u).max(v)));
        edges.push((line, u, v));
    }
    let n = declared.unwrap_or_else(|| max_index.map_or(0, |m| m + 1));
    let mut g = Graph::empty(n);
    for (line, u, v) in edges {
        if g.has_edge(u, v) {
            return Err(ParseError::DuplicateEdge { line, u: u.min(v), v: u.max(v) });
        }
        g.insert_edge(u, v).expect("validated above");
    }
    Ok(g)
}

fn parse_index(token: &str, line: usize) -> std::result::Result<usize, ParseError> {
    if !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::MalformedToken { line, token: token.to_string() });
    }
    match token.parse::<usize>() {
        Ok(v) => Ok(v),
        Err(_) => Err(ParseError::IndexOverflow { line, index: usize::MAX, limit: MAX_PARSE_INDEX }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degree_sequence(g: &Graph) -> Vec<usize> {
        let mut d: Vec<_> = (0..g.order()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn parse_small_path() {
        let g = parse_graph("0 1\n1 2").unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn parse_rejects_duplicate() {
        assert!(matches!(parse_graph("0 1\n0 1"), Err(ParseError::DuplicateEdge { line: 2, .. })));
        assert!(matches!(parse_graph("0 1\n1 0"), Err(ParseError::DuplicateEdge { .. })));
    }

    #[test]
    fn parse_cycle_is_graph_not_tree() {
        let g = parse_graph("0 1\n1 2\n2 3\n3 0").unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(matches!(Tree::new(g), Err(Error::NotATree(_))));
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(parse_graph("0 x"), Err(ParseError::MalformedToken { line: 1, .. })));
        assert!(matches!(parse_graph("0 -1"), Err(ParseError::MalformedToken { .. })));
        assert!(matches!(parse_graph("3 3"), Err(ParseError::LoopEdge { vertex: 3, .. })));
        assert!(matches!(parse_graph("n 3\n0 3"), Err(ParseError::IndexOverflow { index: 3, .. })));
        assert!(matches!(
            parse_graph("0 99999999999999999999999"),
            Err(ParseError::IndexOverflow { .. })
        ));
        assert!(matches!(parse_graph("0 1 2"), Err(ParseError::WrongArity { .. })));
        assert!(matches!(parse_graph("0 1\nn 4"), Err(ParseError::MisplacedHeader { line: 2 })));
    }

    #[test]
    fn parse_header_and_comments() {
        let g = parse_graph("# a comment\nn 5\n0 1\n\n# another\n1 2\n").unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.degree(4), 0);
        assert_eq!(parse_graph(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn coalesce_examples() {
        let k2 = Tree::path(2).unwrap();
        let c = coalesce(&k2, 1, &k2, 0).unwrap();
        assert_eq!(c.graph.order(), 3);
        assert_eq!(c.graph.degree(c.merged), 2);

        let p4 = Tree::path(4).unwrap();
        let c = coalesce(&p4, 3, &p4, 0).unwrap();
        assert_eq!(degree_sequence(&c.graph), degree_sequence(&Graph::path(7)));
        assert_eq!(c.graph.diametral_path().len(), 7);

        let p3 = Tree::path(3).unwrap();
        let c = coalesce(&p3, 1, &p3, 1).unwrap();
        assert_eq!(degree_sequence(&c.graph), vec![1, 1, 1, 1, 4]);
        assert_eq!(c.graph.degree(c.merged), 4);
        // removing the merged vertex separates the parts
        let d = delete_vertices(&c.graph, &[c.merged]).unwrap();
        assert_eq!(d.component_count, 4);
    }

    #[test]
    fn attach_edge_examples() {
        let k1 = Tree::single();
        assert_eq!(attach_edge(&k1, 0, &k1, 0).unwrap().graph(), &Graph::path(2));

        let chair = attach_edge(&Tree::path(2).unwrap(), 1, &Tree::path(3).unwrap(), 1).unwrap();
        assert_eq!(chair.order(), 5);
        assert_eq!(degree_sequence(&chair), vec![1, 1, 1, 2, 3]);

        let p5 = Tree::path(5).unwrap();
        let spider = attach_edge(&p5, 2, &p5, 2).unwrap();
        assert_eq!(spider.order(), 10);
        assert_eq!(spider.edge_count(), 9);
    }

    #[test]
    fn delete_examples() {
        let d = delete_vertices(&Graph::path(3), &[1]).unwrap();
        assert_eq!(d.graph.order(), 2);
        assert_eq!(d.graph.edge_count(), 0);
        assert_eq!(d.component_count, 2);

        let d = delete_vertices(&Graph::path(5), &[0]).unwrap();
        assert_eq!(d.graph, Graph::path(4));
        assert_eq!(d.new_to_old, vec![1, 2, 3, 4]);
        assert_eq!(d.old_to_new[0], None);

        let d = delete_vertices(&Graph::star(3), &[0]).unwrap();
        assert_eq!(d.component_count, 3);
        assert!(delete_vertices(&Graph::star(3), &[7]).is_err());
    }

    #[test]
    fn invalid_vertices_rejected() {
        let p = Tree::path(3).unwrap();
        assert!(coalesce(&p, 3, &p, 0).is_err());
        assert!(attach_edge(&p, 0, &p, 5).is_err());
    }

    #[test]
    fn centers_and_diameter() {
        assert_eq!(Tree::path(5).unwrap().centers(), vec![2]);
        assert_eq!(Tree::path(4).unwrap().centers(), vec![1, 2]);
        assert_eq!(Tree::star(4).centers(), vec![0]);
        assert_eq!(Tree::path(6).unwrap().diametral_path(), vec![0, 1, 2, 3, 4, 5]);
    }
}
