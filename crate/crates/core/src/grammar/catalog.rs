//! The base trees H1..H11 and the fragments F1..F4.
//!
//! The base entries are recomputed from scratch: every excellent tree of
//! order 2..=12 whose derived labeling has at most two B/C vertices is
//! collected and then named. H1, H2 and H11 have fixed shapes; H6..H10 are
//! named by building them from H11 (O1 with F1, F2, F3, then O2 at a D leaf
//! and at a D stem); the remaining three are H3, H4, H5 in order of
//! (order, canonical code).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::canon::CanonicalCode;
use crate::enumerate;
use crate::error::{Error, Result};
use crate::grammar::labeled::LabeledTree;
use crate::grammar::ops::{self, OpId, PieceId, Step};
use crate::graph::{delete_vertices, Tree};
use crate::partition::{self, Status};
use crate::solver;
use crate::Caps;

/// Largest order enumerated when collecting base entries.
pub const BASE_ENUMERATION_MAX_N: usize = 12;

/// Pieces whose A vertices may be glued by O3 and O4.
pub const O3_PIECES: [u8; 6] = [2, 3, 4, 5, 6, 7];
pub const O4_PIECES: [u8; 3] = [3, 4, 6];

#[derive(Debug, Clone)]
pub struct Fragment {
    pub index: u8,
    pub tree: LabeledTree,
    /// The vertex joined to the host by the new edge.
    pub attach: usize,
    pub gamma_r: usize,
}

/// Deletion profile of a catalog entry at an A vertex `v` with neighbor `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachmentProfile {
    pub v: usize,
    /// The unique neighbor of `v`, when `v` is a leaf.
    pub x: Option<usize>,
    pub gamma_r_minus_v: usize,
    pub gamma_r_minus_vx: Option<usize>,
    /// Whether `x` is labeled 0 by every γ_R-function of the entry minus `v`.
    pub x_always_zero: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct BaseEntry {
    pub index: u8,
    pub tree: LabeledTree,
    pub gamma_r: usize,
    /// A vertices that may be glued by O3 (empty when O3 does not use this entry).
    pub o3_vertices: Vec<usize>,
    /// A vertices that may be glued by O4 (empty when O4 does not use this entry).
    pub o4_vertices: Vec<usize>,
    /// Steps that rebuild this entry from H1, for entries built from H11.
    pub derivation: Vec<Step>,
    pub profiles: Vec<AttachmentProfile>,
}

impl BaseEntry {
    pub fn name(&self) -> String {
        format!("H{}", self.index)
    }

    pub fn k(&self) -> usize {
        self.tree.k()
    }
}

#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<BaseEntry>,
    fragments: Vec<Fragment>,
    /// Number of excellent trees with exactly 0, 1, 2 B/C vertices.
    pub strata: [usize; 3],
    /// Largest host order used to decide attachment vertices.
    pub host_max_n: usize,
    by_code: BTreeMap<CanonicalCode, u8>,
}

fn labeled(tree: Tree, statuses: &str) -> LabeledTree {
    LabeledTree::with_status_string(tree, statuses).expect("fixed shapes are consistent")
}

/// The four fragments with their attachment vertices.
pub fn fragments() -> Vec<Fragment> {
    let path = |n| Tree::path(n).expect("n >= 1");
    let raw = [
        (1, labeled(Tree::star(2), "CAA"), 0),
        (2, labeled(path(4), "DDCA"), 2),
        (3, labeled(path(5), "DDCDD"), 2),
        (4, labeled(path(3), "CDD"), 0),
    ];
    raw.into_iter()
        .map(|(index, tree, attach)| {
            let gamma_r = solver::gamma_r_tree(tree.tree());
            Fragment { index, tree, attach, gamma_r }
        })
        .collect()
}

fn build_from_h1(steps: &[Step], frags: &[Fragment]) -> Result<LabeledTree> {
    let mut t = labeled(Tree::path(2)?, "DD");
    for step in steps {
        let PieceId::F(a) = step.piece else {
            return Err(Error::Catalog("derived entries only use fragments".into()));
        };
        let frag = &frags[a as usize - 1];
        t = ops::attach(&t, step.host_vertex, &frag.tree, frag.attach)?.tree;
    }
    Ok(t)
}

fn edge_step(op: OpId, host_vertex: usize, a: u8, frags: &[Fragment]) -> Step {
    Step { op, host_vertex, piece: PieceId::F(a), piece_vertex: frags[a as usize - 1].attach }
}

/// Derivations from H1 of the entries that are built rather than searched.
fn constructed(frags: &[Fragment]) -> Vec<(u8, Vec<Step>)> {
    // H11 = P5 with statuses DDCDD: 0 is a D leaf, 1 a D stem, 2 the C center
    let h11 = vec![edge_step(OpId::O2, 1, 4, frags)];
    let with = |extra: Step| {
        let mut s = h11.clone();
        s.push(extra);
        s
    };
    vec![
        (6, with(edge_step(OpId::O1, 2, 1, frags))),
        (7, with(edge_step(OpId::O1, 2, 2, frags))),
        (8, with(edge_step(OpId::O1, 2, 3, frags))),
        (9, with(edge_step(OpId::O2, 0, 4, frags))),
        (10, with(edge_step(OpId::O2, 1, 4, frags))),
        (11, h11.clone()),
    ]
}

/// All excellent trees of order 2..=max_n with derived labeling, grouped by
/// their number of B/C vertices (only k <= 2 kept).
fn small_strata(max_n: usize) -> Result<[Vec<LabeledTree>; 3]> {
    let census = enumerate::tree_census(max_n, &Caps::DEFAULT)?;
    let mut strata: [Vec<LabeledTree>; 3] = Default::default();
    for trees in census.iter().skip(2) {
        for t in trees {
            let report = partition::partition_report(t)?;
            if !report.is_excellent() {
                continue;
            }
            let lt = LabeledTree::new(t.clone(), partition::statuses_from_report(t, &report)?)?;
            if lt.k() <= 2 {
                strata[lt.k()].push(lt);
            }
        }
    }
    Ok(strata)
}

/// Excellent trees of order 2..=max_n with their derived labelings.
pub fn labeled_excellent_trees(max_n: usize) -> Result<Vec<LabeledTree>> {
    let census = enumerate::tree_census(max_n, &Caps::DEFAULT)?;
    let mut out = Vec::new();
    for trees in census.iter().skip(2) {
        for t in trees {
            let report = partition::partition_report(t)?;
            if report.is_excellent() {
                out.push(LabeledTree::new(t.clone(), partition::statuses_from_report(t, &report)?)?);
            }
        }
    }
    Ok(out)
}

/// Whether gluing `piece` at `v` onto every host vertex of status
/// `host_status` (merged vertex keeps that status) always yields an
/// excellent tree whose derived labeling equals the glued labeling.
pub fn attachment_is_consistent(
    hosts: &[LabeledTree],
    piece: &LabeledTree,
    v: usize,
    host_status: Status,
) -> Result<bool> {
    for host in hosts {
        for u in host.vertices_with(host_status) {
            let product = ops::glue(host, u, piece, v, host_status)?.tree;
            match partition::derive_statuses(product.tree()) {
                Ok(derived) if derived.statuses() == product.statuses() => {}
                Ok(_) | Err(Error::NotExcellent) => return Ok(false),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(true)
}

fn profile(entry: &LabeledTree, v: usize) -> Result<AttachmentProfile> {
    let t = entry.tree();
    let minus_v = delete_vertices(t, &[v])?;
    let gamma_r_minus_v = solver::gamma_r_forest(&minus_v.graph)?;
    let (x, gamma_r_minus_vx, x_always_zero) = if t.degree(v) == 1 {
        let x = t.neighbors(v)[0];
        let both = delete_vertices(t, &[v, x])?;
        let gx = solver::gamma_r_forest(&both.graph)?;
        let xi = minus_v.old_to_new[x].expect("x survives");
        let report = partition::partition_report_forest(&minus_v.graph, &Caps::DEFAULT)?;
        (Some(x), Some(gx), Some(report.value_sets[xi] == partition::V0))
    } else {
        (None, None, None)
    };
    Ok(AttachmentProfile { v, x, gamma_r_minus_v, gamma_r_minus_vx, x_always_zero })
}

/// Derive the catalog, deciding attachment vertices against every excellent
/// host of order at most `host_max_n`.
pub fn derive_catalog_with(host_max_n: usize) -> Result<Catalog> {
    let frags = fragments();
    let strata = small_strata(BASE_ENUMERATION_MAX_N)?;
    let sizes = [strata[0].len(), strata[1].len(), strata[2].len()];
    if sizes != [1, 1, 9] {
        return Err(Error::Catalog(format!("strata sizes {sizes:?}, expected [1, 1, 9]")));
    }

    let mut named: BTreeMap<u8, (LabeledTree, Vec<Step>)> = BTreeMap::new();
    named.insert(1, (labeled(Tree::path(2)?, "DD"), Vec::new()));
    named.insert(2, (labeled(Tree::path(4)?, "ABBA"), Vec::new()));
    for (index, steps) in constructed(&frags) {
        named.insert(index, (build_from_h1(&steps, &frags)?, steps));
    }

    let mut by_code: BTreeMap<CanonicalCode, u8> = BTreeMap::new();
    for (&index, (t, _)) in &named {
        if by_code.insert(t.code(), index).is_some() {
            return Err(Error::Catalog(format!("H{index} duplicates another entry")));
        }
    }
    let found: BTreeMap<CanonicalCode, &LabeledTree> =
        strata.iter().flatten().map(|t| (t.code(), t)).collect();
    for (code, &index) in &by_code {
        let Some(&derived) = found.get(code) else {
            return Err(Error::Catalog(format!("H{index} is not an excellent tree with its derived labeling")));
        };
        let expected_k = match index {
            1 => 0,
            11 => 1,
            _ => 2,
        };
        if derived.k() != expected_k {
            return Err(Error::Catalog(format!("H{index} has {} B/C vertices", derived.k())));
        }
    }
    let mut rest: Vec<&LabeledTree> = strata[2].iter().filter(|t| !by_code.contains_key(&t.code())).collect();
    rest.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.code().cmp(&b.code())));
    if rest.len() != 3 {
        return Err(Error::Catalog(format!("{} unnamed entries, expected 3", rest.len())));
    }
    for (i, t) in rest.into_iter().enumerate() {
        let index = 3 + i as u8;
        by_code.insert(t.code(), index);
        named.insert(index, (t.clone(), Vec::new()));
    }

    let hosts: Vec<LabeledTree> = labeled_excellent_trees(host_max_n)?;
    let mut entries = Vec::with_capacity(11);
    for (index, (tree, derivation)) in named {
        let gamma_r = solver::gamma_r_tree(tree.tree());
        let a_vertices = tree.vertices_with(Status::A);
        let mut o3_vertices = Vec::new();
        let mut o4_vertices = Vec::new();
        for &v in &a_vertices {
            if O3_PIECES.contains(&index) && attachment_is_consistent(&hosts, &tree, v, Status::A)? {
                o3_vertices.push(v);
            }
            if O4_PIECES.contains(&index) && attachment_is_consistent(&hosts, &tree, v, Status::D)? {
                o4_vertices.push(v);
            }
        }
        if O3_PIECES.contains(&index) && o3_vertices.is_empty() {
            return Err(Error::Catalog(format!("H{index} has no O3 attachment vertex")));
        }
        if O4_PIECES.contains(&index) && o4_vertices.is_empty() {
            return Err(Error::Catalog(format!("H{index} has no O4 attachment vertex")));
        }
        let profiles = a_vertices.iter().map(|&v| profile(&tree, v)).collect::<Result<_>>()?;
        entries.push(BaseEntry { index, tree, gamma_r, o3_vertices, o4_vertices, derivation, profiles });
    }
    Ok(Catalog { entries, fragments: frags, strata: sizes, host_max_n, by_code })
}

/// Derivation with attachment vertices checked against all hosts up to order 12.
pub fn derive_base_catalog() -> Result<Catalog> {
    derive_catalog_with(BASE_ENUMERATION_MAX_N)
}

/// Shared catalog instance, derived on first use.
pub fn catalog() -> Result<&'static Catalog> {
    static CATALOG: OnceLock<Result<Catalog>> = OnceLock::new();
    CATALOG.get_or_init(derive_base_catalog).as_ref().map_err(Clone::clone)
}

impl Catalog {
    pub fn entries(&self) -> &[BaseEntry] {
        &self.entries
    }

    pub fn fragments(&self) -> &[Fragment] {
        &self.fragments
    }

    pub fn entry(&self, k: u8) -> Result<&BaseEntry> {
        self.entries
            .get((k as usize).wrapping_sub(1))
            .ok_or_else(|| Error::InvalidPiece(format!("H{k}")))
    }

    pub fn fragment(&self, a: u8) -> Result<&Fragment> {
        self.fragments
            .get((a as usize).wrapping_sub(1))
            .ok_or_else(|| Error::InvalidPiece(format!("F{a}")))
    }

    /// Entry whose labeled tree is isomorphic to `t`.
    pub fn lookup(&self, t: &LabeledTree) -> Option<&BaseEntry> {
        self.by_code.get(&t.code()).map(|&k| &self.entries[k as usize - 1])
    }

    /// The labeled tree a piece reference denotes.
    pub fn piece(&self, id: &PieceId) -> Result<LabeledTree> {
        match id {
            PieceId::H(k) => Ok(self.entry(*k)?.tree.clone()),
            PieceId::F(a) => Ok(self.fragment(*a)?.tree.clone()),
            PieceId::Corona(h) => ops::labeled_corona(h),
        }
    }

    pub fn piece_order(&self, id: &PieceId) -> Result<usize> {
        match id {
            PieceId::H(k) => Ok(self.entry(*k)?.tree.order()),
            PieceId::F(a) => Ok(self.fragment(*a)?.tree.order()),
            PieceId::Corona(h) => Ok(3 * h.order()),
        }
    }

    pub fn gamma_r_of(&self, id: &PieceId) -> Result<usize> {
        match id {
            PieceId::H(k) => Ok(self.entry(*k)?.gamma_r),
            PieceId::F(a) => Ok(self.fragment(*a)?.gamma_r),
            PieceId::Corona(h) => Ok(2 * h.order()),
        }
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "name": e.name(),
                    "k": e.k(),
                    "n": e.tree.order(),
                    "gamma_r": e.gamma_r,
                    "edges": e.tree.tree().edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
                    "statuses": e.tree.status_string(),
                    "code": e.tree.code().to_hex(),
                    "o3_vertices": e.o3_vertices,
                    "o4_vertices": e.o4_vertices,
                    "derivation": e.derivation,
                    "profiles": e.profiles.iter().map(|p| json!({
                        "v": p.v,
                        "x": p.x,
                        "gamma_r_minus_v": p.gamma_r_minus_v,
                        "gamma_r_minus_vx": p.gamma_r_minus_vx,
                        "x_always_zero": p.x_always_zero,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let fragments: Vec<Value> = self
            .fragments
            .iter()
            .map(|f| {
                json!({
                    "name": format!("F{}", f.index),
                    "n": f.tree.order(),
                    "gamma_r": f.gamma_r,
                    "edges": f.tree.tree().edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
                    "statuses": f.tree.status_string(),
                    "attach": f.attach,
                })
            })
            .collect();
        json!({
            "strata": self.strata,
            "host_max_n": self.host_max_n,
            "entries": entries,
            "fragments": fragments,
        })
    }
}
