//! Special tree families and their classifiers.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grammar::catalog::{catalog, Catalog};
use crate::grammar::labeled::LabeledTree;
use crate::grammar::ops::{OpId, PieceId, Step};
use crate::grammar::recognize::{recognize_with, Recognition};
use crate::grammar::sequence::TSequence;
use crate::graph::{Graph, Tree};
use crate::partition::{self, PartitionReport, Status, ValueSet, V01, V012, V02};
use crate::solver;

/// The non-empty classes of a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RSignature(pub Vec<ValueSet>);

impl RSignature {
    pub fn from_report(report: &PartitionReport) -> Self {
        RSignature(report.present_classes())
    }

    pub fn is(&self, classes: &[ValueSet]) -> bool {
        self.0 == classes
    }
}

impl fmt::Display for RSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(|s| s.as_str()).collect();
        write!(f, "R_{{{}}}", parts.join(","))
    }
}

pub fn r_signature(g: &Graph) -> Result<RSignature> {
    Ok(RSignature::from_report(&partition::partition_report_graph(g)?))
}

/// Attach two new leaves to every vertex of `h`: vertex `i` of `h` keeps
/// index `i` and gets leaves `m + 2i` and `m + 2i + 1`.
pub fn build_corona(h: &Graph) -> Result<Graph> {
    let m = h.order();
    if m == 0 || !h.is_connected() {
        return Err(Error::Input("corona base must be a non-empty connected graph".into()));
    }
    let mut edges: Vec<(usize, usize)> = h.edges().collect();
    for i in 0..m {
        edges.push((i, m + 2 * i));
        edges.push((i, m + 2 * i + 1));
    }
    Graph::from_edges(3 * m, &edges)
}

/// Every vertex is a leaf or a stem, and every stem has exactly two leaves.
pub fn is_corona_tree(t: &Tree) -> bool {
    if t.order() < 3 {
        return false;
    }
    (0..t.order()).all(|v| {
        let leaves = t.neighbors(v).iter().filter(|&&w| t.degree(w) == 1).count();
        if t.degree(v) == 1 {
            t.degree(t.neighbors(v)[0]) > 1
        } else {
            leaves == 2
        }
    })
}

/// Accepted decomposition into H2 and corona pieces glued at A vertices.
#[derive(Debug, Clone)]
pub enum PrimeRecognition {
    Accept { labeled: LabeledTree, cert: TSequence, map: Vec<usize> },
    Reject { signature: RSignature },
}

impl PrimeRecognition {
    pub fn is_accept(&self) -> bool {
        matches!(self, PrimeRecognition::Accept { .. })
    }
}

/// A piece of the split at A cut vertices: its vertices (input indices), the
/// piece id and, per piece vertex, the input vertex.
struct SplitPiece {
    id: PieceId,
    to_input: Vec<usize>,
}

fn classify_piece(lt: &LabeledTree, verts: &[usize]) -> Option<SplitPiece> {
    let t = lt.tree();
    let inside = |w: usize| verts.binary_search(&w).is_ok();
    let deg_in = |v: usize| t.neighbors(v).iter().filter(|&&w| inside(w)).count();
    let st = |v: usize| lt.status(v);
    if verts.len() == 4 {
        // H2: a path A B B A
        let a = verts.iter().copied().find(|&v| st(v) == Status::A && deg_in(v) == 1)?;
        let mut path = vec![a];
        while path.len() < 4 {
            let last = *path.last().expect("non-empty");
            let prev = path.len().checked_sub(2).map(|i| path[i]);
            let next = t.neighbors(last).iter().copied().find(|&w| inside(w) && Some(w) != prev)?;
            path.push(next);
        }
        let s: String = path.iter().map(|&v| st(v).as_byte() as char).collect();
        return (s == "ABBA").then_some(SplitPiece { id: PieceId::H(2), to_input: path });
    }
    // corona: C stems, each with exactly two A neighbors inside the piece, and A leaves
    let stems: Vec<usize> = verts.iter().copied().filter(|&v| st(v) == Status::C).collect();
    let m = stems.len();
    if m < 2 || verts.len() != 3 * m {
        return None;
    }
    let mut to_input = stems.clone();
    to_input.resize(3 * m, usize::MAX);
    let mut stem_edges = Vec::new();
    for (i, &s) in stems.iter().enumerate() {
        let mut leaves = Vec::new();
        for &w in t.neighbors(s).iter().filter(|&&w| inside(w)) {
            match st(w) {
                Status::A if deg_in(w) == 1 => leaves.push(w),
                Status::C => {
                    let j = stems.binary_search(&w).ok()?;
                    if i < j {
                        stem_edges.push((i, j));
                    }
                }
                _ => return None,
            }
        }
        if leaves.len() != 2 {
            return None;
        }
        to_input[m + 2 * i] = leaves[0];
        to_input[m + 2 * i + 1] = leaves[1];
    }
    let h = Tree::from_edges(m, &stem_edges).ok()?;
    Some(SplitPiece { id: PieceId::Corona(h), to_input })
}

/// Split the labeled tree at every A vertex of degree at least 2.
fn split_at_a_cut_vertices(lt: &LabeledTree) -> Vec<Vec<usize>> {
    let t = lt.tree();
    let n = t.order();
    let cut = |v: usize| lt.status(v) == Status::A && t.degree(v) >= 2;
    // each piece is grown from an edge; a cut vertex does not pass the search on
    let mut edge_seen = std::collections::BTreeSet::new();
    let mut pieces = Vec::new();
    for u in 0..n {
        for &w in t.neighbors(u) {
            if edge_seen.contains(&(u.min(w), u.max(w))) {
                continue;
            }
            let mut verts = vec![u, w];
            let mut stack = vec![(u, w)];
            edge_seen.insert((u.min(w), u.max(w)));
            while let Some((a, b)) = stack.pop() {
                for x in [a, b] {
                    if cut(x) {
                        continue;
                    }
                    for &y in t.neighbors(x) {
                        let e = (x.min(y), x.max(y));
                        if edge_seen.insert(e) {
                            verts.push(y);
                            stack.push((x, y));
                        }
                    }
                }
            }
            verts.sort_unstable();
            verts.dedup();
            pieces.push(verts);
        }
    }
    pieces
}

fn labeled_from_report(t: &Tree, report: &PartitionReport) -> Result<LabeledTree> {
    LabeledTree::new(t.clone(), partition::statuses_from_report(t, report)?)
}

/// Decomposition of an R_{01,02} tree into H2 and corona pieces glued at
/// A vertices (operations O7 and O8). Rejects every other tree.
pub fn recognize_t0102_prime(t: &Tree) -> Result<PrimeRecognition> {
    recognize_t0102_prime_with(t, catalog()?)
}

pub fn recognize_t0102_prime_with(t: &Tree, cat: &Catalog) -> Result<PrimeRecognition> {
    if t.order() < 2 {
        return Err(Error::OrderTooSmall { what: "decomposition", order: t.order(), min: 2 });
    }
    let report = partition::partition_report(t)?;
    let signature = RSignature::from_report(&report);
    if !signature.is(&[V01, V02]) {
        return Ok(PrimeRecognition::Reject { signature });
    }
    let lt = labeled_from_report(t, &report)?;
    let mut pieces = Vec::new();
    for verts in split_at_a_cut_vertices(&lt) {
        let piece = classify_piece(&lt, &verts).ok_or_else(|| {
            Error::Recognizer(format!("piece {verts:?} of {:?} is neither H2 nor a corona", lt.tree()))
        })?;
        pieces.push(piece);
    }
    // place pieces in breadth-first order from the piece holding vertex 0
    let n = t.order();
    let mut input_to_replay = vec![usize::MAX; n];
    let mut placed = vec![false; pieces.len()];
    let first = pieces.iter().position(|p| p.to_input.contains(&0)).expect("vertex 0 is covered");
    let mut cert = TSequence::new(pieces[first].id.clone());
    let mut cur = cert.base_tree(cat)?;
    for (pv, &v) in pieces[first].to_input.iter().enumerate() {
        input_to_replay[v] = pv;
    }
    placed[first] = true;
    loop {
        let next = (0..pieces.len()).find_map(|i| {
            if placed[i] {
                return None;
            }
            let pv = pieces[i].to_input.iter().position(|&v| input_to_replay[v] != usize::MAX)?;
            Some((i, pv))
        });
        let Some((i, pv)) = next else { break };
        let piece = &pieces[i];
        let op = if piece.id == PieceId::H(2) { OpId::O7 } else { OpId::O8 };
        let step = Step {
            op,
            host_vertex: input_to_replay[piece.to_input[pv]],
            piece: piece.id.clone(),
            piece_vertex: pv,
        };
        let applied = crate::grammar::ops::apply_step(&cur, &step, cat)?;
        for (w, &r) in applied.piece_map.iter().enumerate() {
            input_to_replay[piece.to_input[w]] = r;
        }
        cur = applied.tree;
        cert.steps.push(step);
        placed[i] = true;
    }
    let consistent = placed.iter().all(|&p| p)
        && (0..n).all(|v| {
            let r = input_to_replay[v];
            r != usize::MAX
                && cur.status(r) == lt.status(v)
                && t.neighbors(v).iter().all(|&w| cur.tree().has_edge(r, input_to_replay[w]))
        });
    if !consistent || cur.order() != n {
        return Err(Error::Recognizer(format!("pieces of {:?} do not reassemble", lt.tree())));
    }
    Ok(PrimeRecognition::Accept { labeled: lt, cert, map: input_to_replay })
}

/// Whether a certificate of the main grammar only uses steps of the
/// restricted family built from H2/H3 with F1 attachments and H2/H3 gluings.
pub fn is_t0102_certificate(cert: &TSequence) -> bool {
    matches!(cert.base, PieceId::H(2) | PieceId::H(3))
        && cert.steps.iter().all(|s| {
            OpId::O5.allows(&s.piece) && s.op.parent() == OpId::O1 || OpId::O6.allows(&s.piece) && s.op.parent() == OpId::O3
        })
}

#[derive(Debug, Clone)]
pub enum T02012Recognition {
    Accept { labeled: LabeledTree, cert: TSequence, map: Vec<usize> },
    Reject { signature: RSignature },
}

impl T02012Recognition {
    pub fn is_accept(&self) -> bool {
        matches!(self, T02012Recognition::Accept { .. })
    }
}

/// Certificate over F3 attachments at C vertices and F4 attachments at D
/// vertices, starting from F3.
pub fn recognize_t02012(t: &Tree) -> Result<T02012Recognition> {
    recognize_t02012_with(t, catalog()?)
}

pub fn recognize_t02012_with(t: &Tree, cat: &Catalog) -> Result<T02012Recognition> {
    if t.order() < 5 {
        return Err(Error::OrderTooSmall { what: "C/D decomposition", order: t.order(), min: 5 });
    }
    let report = partition::partition_report(t)?;
    let signature = RSignature::from_report(&report);
    if !signature.is(&[V02, V012]) {
        return Ok(T02012Recognition::Reject { signature });
    }
    let Recognition::Accept { labeled, cert, map } = recognize_with(t, cat)? else {
        return Err(Error::Recognizer("excellent tree rejected".into()));
    };
    // P5 built from H1 by one F4 attachment has the same indices as F3
    let f4_first = Step { op: OpId::O2, host_vertex: 1, piece: PieceId::F(4), piece_vertex: 0 };
    if cert.base != PieceId::H(1) || cert.steps.first() != Some(&f4_first) {
        return Err(Error::Recognizer(format!("unexpected certificate for a C/D tree: {}", cert.to_json_string())));
    }
    let mut steps = Vec::with_capacity(cert.steps.len() - 1);
    for s in &cert.steps[1..] {
        let op = match (s.op, &s.piece) {
            (OpId::O1, PieceId::F(3)) => OpId::O9,
            (OpId::O2, PieceId::F(4)) => OpId::O10,
            _ => return Err(Error::Recognizer(format!("step {s:?} outside the C/D operations"))),
        };
        steps.push(Step { op, ..s.clone() });
    }
    Ok(T02012Recognition::Accept { labeled, cert: TSequence { base: PieceId::F(3), steps }, map })
}

/// Bound checks on an excellent tree with at least five vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub n: usize,
    pub v02: usize,
    pub v_minus: usize,
    /// n/5 <= |V02|
    pub v02_lower: bool,
    /// |V02| <= 2(n-1)/3
    pub v02_upper: bool,
    /// |V^-| <= 4n/5
    pub v_minus_upper: bool,
    /// |V^-| >= (n+2)/3
    pub v_minus_lower: bool,
    pub v02_lower_equality: bool,
    pub v02_upper_equality: bool,
    /// Built from F3 by F3 attachments only.
    pub f3_chain: bool,
    /// Built from H2 by H2 gluings only.
    pub h2_chain: bool,
}

impl BoundsReport {
    pub fn sandwiches_hold(&self) -> bool {
        self.v02_lower && self.v02_upper && self.v_minus_upper && self.v_minus_lower
    }

    /// Each equality case coincides with its chain family.
    pub fn equality_cases_match(&self) -> bool {
        self.v02_lower_equality == self.f3_chain && self.v02_upper_equality == self.h2_chain
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "v02": self.v02,
            "v_minus": self.v_minus,
            "v02_lower": self.v02_lower,
            "v02_upper": self.v02_upper,
            "v_minus_upper": self.v_minus_upper,
            "v_minus_lower": self.v_minus_lower,
            "v02_lower_equality": self.v02_lower_equality,
            "v02_upper_equality": self.v02_upper_equality,
            "f3_chain": self.f3_chain,
            "h2_chain": self.h2_chain,
        })
    }
}

pub fn check_bounds(t: &Tree) -> Result<BoundsReport> {
    check_bounds_with(t, catalog()?)
}

pub fn check_bounds_with(t: &Tree, cat: &Catalog) -> Result<BoundsReport> {
    let n = t.order();
    if n < 5 {
        return Err(Error::OrderTooSmall { what: "bound check", order: n, min: 5 });
    }
    let report = partition::partition_report(t)?;
    if !report.is_excellent() {
        return Err(Error::NotExcellent);
    }
    let v02 = report.class(V02).len();
    let v_minus = report.v_minus().len();
    let f3_chain = match recognize_t02012_with(t, cat)? {
        T02012Recognition::Accept { cert, .. } => cert.steps.iter().all(|s| s.op == OpId::O9),
        T02012Recognition::Reject { .. } => false,
    };
    let h2_chain = match recognize_with(t, cat)? {
        Recognition::Accept { cert, .. } => {
            cert.base == PieceId::H(2) && cert.steps.iter().all(|s| s.op == OpId::O3 && s.piece == PieceId::H(2))
        }
        Recognition::Reject { .. } => false,
    };
    Ok(BoundsReport {
        n,
        v02,
        v_minus,
        v02_lower: 5 * v02 >= n,
        v02_upper: 3 * v02 <= 2 * (n - 1),
        v_minus_upper: 5 * v_minus <= 4 * n,
        v_minus_lower: 3 * v_minus >= n + 2,
        v02_lower_equality: 5 * v02 == n,
        v02_upper_equality: 3 * v02 == 2 * (n - 1),
        f3_chain,
        h2_chain,
    })
}

/// `r` copies of P5 with the centers joined along `links`, a tree on `0..r`.
/// Copy `i` occupies vertices `5i..5i+5` with center `5i + 2`.
pub fn extremal_45_family(r: usize, links: &[(usize, usize)]) -> Result<Tree> {
    if r == 0 {
        return Err(Error::Input("need at least one P5".into()));
    }
    Tree::from_edges(r, links).map_err(|_| Error::Input(format!("links {links:?} are not a tree on {r} centers")))?;
    let mut edges = Vec::with_capacity(5 * r - 1);
    for i in 0..r {
        let b = 5 * i;
        edges.extend([(b, b + 1), (b + 1, b + 2), (b + 2, b + 3), (b + 3, b + 4)]);
    }
    edges.extend(links.iter().map(|&(a, b)| (5 * a + 2, 5 * b + 2)));
    Tree::from_edges(5 * r, &edges)
}

/// Path-linked centers `0 - 1 - ... - (r-1)`.
pub fn path_links(r: usize) -> Vec<(usize, usize)> {
    (1..r).map(|i| (i - 1, i)).collect()
}

/// For every edge e of the excellent connected graph `g`: g - e is
/// disconnected, or changes γ_R, or is not excellent.
pub fn poset_minimal_check(g: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Input("graph is not connected".into()));
    }
    let report = partition::partition_report_graph(g)?;
    if !report.is_excellent() {
        return Err(Error::NotExcellent);
    }
    for (u, v) in g.edges() {
        let h = g.without_edge(u, v)?;
        if !h.is_connected() {
            continue;
        }
        let r = partition::partition_report_graph(&h)?;
        if r.gamma_r == report.gamma_r && r.is_excellent() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Classifier summary of a graph.
pub fn classify(g: &Graph) -> Result<Value> {
    let report = partition::partition_report_graph(g)?;
    let signature = RSignature::from_report(&report);
    let tree = Tree::new(g.clone()).ok();
    let corona = tree.as_ref().is_some_and(is_corona_tree);
    let bounds = match &tree {
        Some(t) if t.order() >= 5 && report.is_excellent() => check_bounds(t)?.to_json(),
        _ => Value::Null,
    };
    Ok(json!({
        "signature": signature.to_string(),
        "excellent": report.is_excellent(),
        "gamma_r": report.gamma_r,
        "gamma": solver::gamma(g)?,
        "uvr": partition::is_uvr(g)?,
        "cvr": partition::is_cvr(g)?,
        "cea": partition::is_cea(g)?,
        "corona": corona,
        "bounds": bounds,
    }))
}

/// The signature of an excellent tree is one of four, and R_{012} is K2 only.
pub fn excellent_signature_is_allowed(t: &Tree, sig: &RSignature) -> bool {
    let allowed: [&[ValueSet]; 4] = [&[V012], &[V01, V02], &[V02, V012], &[V01, V02, V012]];
    allowed.iter().any(|a| sig.is(a)) && (!sig.is(&[V012]) || t.order() == 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures() {
        assert_eq!(r_signature(&Graph::path(2)).unwrap().to_string(), "R_{012}");
        assert_eq!(r_signature(&Graph::path(4)).unwrap().to_string(), "R_{01,02}");
        assert_eq!(r_signature(&Graph::path(5)).unwrap().to_string(), "R_{02,012}");
    }

    #[test]
    fn coronas() {
        let k12 = Tree::new(build_corona(&Graph::path(1)).unwrap()).unwrap();
        assert_eq!(solver::gamma_r_tree(&k12), 2);
        assert!(is_corona_tree(&k12));
        let g = build_corona(&Graph::path(2)).unwrap();
        assert_eq!(solver::gamma_r(&g).unwrap(), 4);
        assert_eq!(r_signature(&g).unwrap().to_string(), "R_{01,02}");
        let g = build_corona(&Graph::path(3)).unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(solver::gamma_r(&g).unwrap(), 6);
        assert!(is_corona_tree(&Tree::new(g).unwrap()));
        assert!(!is_corona_tree(&Tree::path(4).unwrap()));
    }

    #[test]
    fn prime_decomposition_examples() {
        let p4 = recognize_t0102_prime(&Tree::path(4).unwrap()).unwrap();
        let PrimeRecognition::Accept { cert, .. } = p4 else { panic!("P4 rejected") };
        assert_eq!(cert.base, PieceId::H(2));
        let c = Tree::new(build_corona(&Graph::path(2)).unwrap()).unwrap();
        let PrimeRecognition::Accept { cert, .. } = recognize_t0102_prime(&c).unwrap() else { panic!() };
        assert!(matches!(cert.base, PieceId::Corona(_)));
        assert!(cert.steps.is_empty());
        assert!(!recognize_t0102_prime(&Tree::path(5).unwrap()).unwrap().is_accept());
    }

    #[test]
    fn cd_decomposition_examples() {
        let T02012Recognition::Accept { cert, .. } = recognize_t02012(&Tree::path(5).unwrap()).unwrap() else {
            panic!("P5 rejected")
        };
        assert_eq!(cert.base, PieceId::F(3));
        assert!(cert.steps.is_empty());
        let two = extremal_45_family(2, &[(0, 1)]).unwrap();
        let T02012Recognition::Accept { cert, .. } = recognize_t02012(&two).unwrap() else { panic!() };
        assert_eq!(cert.steps.len(), 1);
        assert_eq!(cert.steps[0].op, OpId::O9);
        assert!(recognize_t02012(&Tree::path(4).unwrap()).is_err());
        assert!(!recognize_t02012(&Tree::path(7).unwrap()).unwrap().is_accept());
    }

    #[test]
    fn bounds_examples() {
        let b = check_bounds(&Tree::path(5).unwrap()).unwrap();
        assert_eq!(b.v02, 1);
        assert!(b.v02_lower_equality && b.f3_chain);
        let b = check_bounds(&Tree::path(7).unwrap()).unwrap();
        assert_eq!(b.v02, 4);
        assert!(b.v02_upper_equality && b.h2_chain);
        assert!(check_bounds(&Tree::path(4).unwrap()).is_err());
    }

    #[test]
    fn extremal_family() {
        for r in 1..=3 {
            let t = extremal_45_family(r, &path_links(r)).unwrap();
            assert_eq!(5 * solver::gamma_r_tree(&t), 4 * t.order());
        }
        assert!(extremal_45_family(3, &[(0, 1)]).is_err());
    }

    #[test]
    fn poset_minimality() {
        assert!(poset_minimal_check(&Graph::cycle(9).unwrap()).unwrap());
        assert!(!poset_minimal_check(&Graph::cycle(7).unwrap()).unwrap());
        // removing a second, disjoint edge keeps γ_R = 4 and excellence
        let k33e = Graph::complete_bipartite(3, 3).without_edge(0, 3).unwrap();
        assert!(!poset_minimal_check(&k33e).unwrap());
        let k33ee = k33e.without_edge(1, 4).unwrap();
        assert_eq!(solver::gamma_r(&k33ee).unwrap(), 4);
        assert!(partition::is_excellent(&k33ee).unwrap());
    }
}
