//! Canonical codes for trees (AHU parenthesis strings rooted at the center)
//! and a permutation-search canonical form for small general graphs.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, Tree};

const OPEN: u8 = b'(';
const CLOSE: u8 = b')';

/// Largest order accepted by [`graph_canonical_form`].
pub const MAX_GRAPH_CANON_ORDER: usize = 12;

/// Isomorphism-invariant byte string of a (possibly labeled) tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        hex::decode(s)
            .map(CanonicalCode)
            .map_err(|e| Error::Input(format!("bad canonical code {s:?}: {e}")))
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", String::from_utf8_lossy(&self.0))
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalCode::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// BFS order from `root` and the parent of each vertex.
fn bfs_order(t: &Graph, root: usize) -> (Vec<usize>, Vec<usize>) {
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[root] = true;
    order.push(root);
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in t.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                order.push(w);
            }
        }
    }
    (order, parent)
}

/// AHU code of every rooted subtree when `t` hangs from `root`.
/// Each code is `(`, the optional label byte, the sorted child codes, `)`.
pub fn subtree_codes(t: &Tree, root: usize, labels: Option<&[u8]>) -> Vec<Vec<u8>> {
    let n = t.order();
    let (order, parent) = bfs_order(t, root);
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    for &u in order.iter().rev() {
        let mut kids: Vec<&Vec<u8>> = t
            .neighbors(u)
            .iter()
            .filter(|&&w| parent[w] == u)
            .map(|&w| &codes[w])
            .collect();
        kids.sort_unstable();
        let len = 2 + usize::from(labels.is_some()) + kids.iter().map(|c| c.len()).sum::<usize>();
        let mut code = Vec::with_capacity(len);
        code.push(OPEN);
        if let Some(l) = labels {
            code.push(l[u]);
        }
        for k in kids {
            code.extend_from_slice(k);
        }
        code.push(CLOSE);
        codes[u] = code;
    }
    codes
}

pub fn rooted_code(t: &Tree, root: usize, labels: Option<&[u8]>) -> Vec<u8> {
    subtree_codes(t, root, labels).swap_remove(root)
}

fn free_code(t: &Tree, labels: Option<&[u8]>) -> CanonicalCode {
    let best = t
        .centers()
        .into_iter()
        .map(|c| rooted_code(t, c, labels))
        .min()
        .expect("a tree has a center");
    CanonicalCode(best)
}

/// Code of an unlabeled tree; equal codes iff isomorphic.
pub fn canonical_code(t: &Tree) -> CanonicalCode {
    free_code(t, None)
}

/// Code of a vertex-labeled tree; equal iff there is a label-preserving
/// isomorphism. Labels must avoid the bytes `(` and `)`.
pub fn labeled_code(t: &Tree, labels: &[u8]) -> Result<CanonicalCode> {
    if labels.len() != t.order() {
        return Err(Error::SizeMismatch { expected: t.order(), got: labels.len() });
    }
    if let Some(&bad) = labels.iter().find(|&&b| b == OPEN || b == CLOSE) {
        return Err(Error::InvalidLabel(bad));
    }
    Ok(free_code(t, Some(labels)))
}

/// Rebuild a tree (and labels, if the code carries them) from a code
/// produced by [`rooted_code`], [`canonical_code`] or [`labeled_code`].
/// Vertices are numbered in preorder of the code.
pub fn decode(code: &[u8], labeled: bool) -> Result<(Tree, Vec<u8>)> {
    let bad = || Error::Input("malformed tree code".into());
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut i = 0;
    let mut count = 0;
    while i < code.len() {
        match code[i] {
            OPEN => {
                if count > 0 && stack.is_empty() {
                    return Err(bad());
                }
                let v = count;
                count += 1;
                if let Some(&p) = stack.last() {
                    edges.push((p, v));
                }
                stack.push(v);
                if labeled {
                    i += 1;
                    labels.push(*code.get(i).ok_or_else(bad)?);
                }
            }
            CLOSE => {
                stack.pop().ok_or_else(bad)?;
            }
            _ => return Err(bad()),
        }
        i += 1;
    }
    if count == 0 || !stack.is_empty() {
        return Err(bad());
    }
    Ok((Tree::from_edges(count, &edges)?, labels))
}

/// Tree whose code is `code` (the deterministic representative of its class).
pub fn tree_from_code(code: &CanonicalCode) -> Result<Tree> {
    decode(code.as_bytes(), false).map(|(t, _)| t)
}

/// Label-preserving isomorphism from `(t1, r1)` to `(t2, r2)` as rooted
/// trees, or `None`. The result maps each vertex of `t1` to one of `t2`.
pub fn rooted_isomorphism(
    t1: &Tree,
    r1: usize,
    l1: Option<&[u8]>,
    t2: &Tree,
    r2: usize,
    l2: Option<&[u8]>,
) -> Option<Vec<usize>> {
    if t1.order() != t2.order() || l1.is_some() != l2.is_some() {
        return None;
    }
    let c1 = subtree_codes(t1, r1, l1);
    let c2 = subtree_codes(t2, r2, l2);
    if c1[r1] != c2[r2] {
        return None;
    }
    let mut map = vec![usize::MAX; t1.order()];
    let mut stack = vec![(r1, usize::MAX, r2, usize::MAX)];
    while let Some((a, pa, b, pb)) = stack.pop() {
        map[a] = b;
        let mut ka: Vec<usize> = t1.neighbors(a).iter().copied().filter(|&w| w != pa).collect();
        let mut kb: Vec<usize> = t2.neighbors(b).iter().copied().filter(|&w| w != pb).collect();
        ka.sort_by(|&x, &y| c1[x].cmp(&c1[y]));
        kb.sort_by(|&x, &y| c2[x].cmp(&c2[y]));
        for (&x, &y) in ka.iter().zip(&kb) {
            debug_assert_eq!(c1[x], c2[y]);
            stack.push((x, a, y, b));
        }
    }
    Some(map)
}

/// Label-preserving isomorphism between free trees, or `None`.
pub fn isomorphism(t1: &Tree, l1: Option<&[u8]>, t2: &Tree, l2: Option<&[u8]>) -> Option<Vec<usize>> {
    let r1 = t1.centers()[0];
    t2.centers()
        .into_iter()
        .find_map(|r2| rooted_isomorphism(t1, r1, l1, t2, r2, l2))
}

/// Canonical form of a small graph: the order plus the lexicographically
/// smallest upper-triangle adjacency bitstring over all vertex orders that
/// list the refined degree classes in a fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphCode {
    pub n: usize,
    pub bits: u128,
}

fn vertex_invariants(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    (0..g.order())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect()
}

fn adjacency_bits(g: &Graph, order: &[usize]) -> u128 {
    let n = order.len();
    let mut bits = 0u128;
    for i in 0..n {
        for j in i + 1..n {
            bits <<= 1;
            if g.has_edge(order[i], order[j]) {
                bits |= 1;
            }
        }
    }
    bits
}

fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

pub fn graph_canonical_form(g: &Graph) -> Result<GraphCode> {
    let n = g.order();
    crate::config::check_cap("graph canonical form", n, MAX_GRAPH_CANON_ORDER)?;
    let inv = vertex_invariants(g);
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by(|&a, &b| inv[a].cmp(&inv[b]).then(a.cmp(&b)));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &verts {
        match classes.last_mut() {
            Some(c) if inv[c[0]] == inv[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    // odometer over per-class permutations
    let mut best: Option<u128> = None;
    let mut order: Vec<usize> = Vec::with_capacity(n);
    loop {
        order.clear();
        for c in &classes {
            order.extend_from_slice(c);
        }
        let bits = adjacency_bits(g, &order);
        if best.is_none_or(|b| bits < b) {
            best = Some(bits);
        }
        let mut advanced = false;
        for c in classes.iter_mut() {
            if next_permutation(c) {
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    Ok(GraphCode { n, bits: best.unwrap_or(0) })
}

/// Rebuild the graph a [`GraphCode`] describes.
pub fn graph_from_code(code: GraphCode) -> Graph {
    let n = code.n;
    let total = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if (code.bits >> (total - 1 - k)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("code bits describe a simple graph")
}

/// Compare codes by (length, bytes); smaller trees come first.
pub fn shortlex(a: &CanonicalCode, b: &CanonicalCode) -> Ordering {
    a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(t: &Tree, perm: &[usize]) -> Tree {
        let edges: Vec<_> = t.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Tree::from_edges(t.order(), &edges).unwrap()
    }

    #[test]
    fn path_codes_are_invariant() {
        let p4 = Tree::path(4).unwrap();
        let c = canonical_code(&p4);
        for perm in [[3, 2, 1, 0], [1, 0, 3, 2], [2, 0, 3, 1]] {
            assert_eq!(canonical_code(&relabel(&p4, &perm)), c);
        }
        assert_ne!(c, canonical_code(&Tree::star(3)));
    }

    #[test]
    fn decode_round_trip() {
        let t = Tree::from_edges(7, &[(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (4, 6)]).unwrap();
        let c = canonical_code(&t);
        let back = tree_from_code(&c).unwrap();
        assert_eq!(canonical_code(&back), c);
        assert_eq!(CanonicalCode::from_hex(&c.to_hex()).unwrap(), c);
    }

    #[test]
    fn labeled_codes_see_labels() {
        let p4 = Tree::path(4).unwrap();
        let a = labeled_code(&p4, b"ABBA").unwrap();
        let b = labeled_code(&p4, b"ABAB").unwrap();
        assert_ne!(a, b);
        let rev = relabel(&p4, &[3, 2, 1, 0]);
        assert_eq!(labeled_code(&rev, b"BABA").unwrap(), labeled_code(&p4, b"ABAB").unwrap());
        let (t, l) = decode(a.as_bytes(), true).unwrap();
        assert_eq!(labeled_code(&t, &l).unwrap(), a);
    }

    #[test]
    fn isomorphism_maps_edges_and_labels() {
        let t1 = Tree::from_edges(6, &[(0, 1), (1, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        let perm = [4, 2, 0, 5, 1, 3];
        let t2 = relabel(&t1, &perm);
        let l1 = b"ABCDAB".to_vec();
        let mut l2 = vec![0; 6];
        for v in 0..6 {
            l2[perm[v]] = l1[v];
        }
        let m = isomorphism(&t1, Some(&l1), &t2, Some(&l2)).unwrap();
        for (u, v) in t1.edges() {
            assert!(t2.has_edge(m[u], m[v]));
        }
        for v in 0..6 {
            assert_eq!(l1[v], l2[m[v]]);
        }
        assert!(isomorphism(&t1, None, &Tree::path(6).unwrap(), None).is_none());
    }

    #[test]
    fn graph_forms() {
        let c4 = Graph::cycle(4).unwrap();
        let other = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(graph_canonical_form(&c4).unwrap(), graph_canonical_form(&other).unwrap());
        assert_ne!(
            graph_canonical_form(&c4).unwrap(),
            graph_canonical_form(&Graph::path(4)).unwrap()
        );
        let code = graph_canonical_form(&Graph::star(3)).unwrap();
        assert_eq!(graph_canonical_form(&graph_from_code(code)).unwrap(), code);
    }
}
