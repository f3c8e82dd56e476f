//! The construction operations and the identifiers used in certificates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grammar::catalog::Catalog;
use crate::grammar::labeled::LabeledTree;
use crate::graph::{self, Tree};
use crate::partition::Status;

/// Operation identifiers. O5..O10 are restrictions of O1..O4 (O8 glues a
/// labeled corona tree instead of a catalog entry).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OpId {
    O1,
    O2,
    O3,
    O4,
    O5,
    O6,
    O7,
    O8,
    O9,
    O10,
}

impl OpId {
    pub const ALL: [OpId; 10] = [
        OpId::O1,
        OpId::O2,
        OpId::O3,
        OpId::O4,
        OpId::O5,
        OpId::O6,
        OpId::O7,
        OpId::O8,
        OpId::O9,
        OpId::O10,
    ];

    pub const MAIN: [OpId; 4] = [OpId::O1, OpId::O2, OpId::O3, OpId::O4];

    /// Whether the operation adds an edge (as opposed to gluing a vertex).
    pub fn is_attachment(self) -> bool {
        matches!(self, OpId::O1 | OpId::O2 | OpId::O5 | OpId::O9 | OpId::O10)
    }

    /// Host status required at the host vertex.
    pub fn host_status(self) -> Status {
        match self {
            OpId::O1 | OpId::O5 | OpId::O9 => Status::C,
            OpId::O2 | OpId::O10 | OpId::O4 => Status::D,
            OpId::O3 | OpId::O6 | OpId::O7 | OpId::O8 => Status::A,
        }
    }

    /// Catalog pieces the operation may use; empty for O8 (coronas).
    pub fn allowed_pieces(self) -> Vec<PieceId> {
        let hs = |ks: &[u8]| ks.iter().map(|&k| PieceId::H(k)).collect();
        let fs = |ks: &[u8]| ks.iter().map(|&k| PieceId::F(k)).collect();
        match self {
            OpId::O1 => fs(&[1, 2, 3]),
            OpId::O2 | OpId::O10 => fs(&[4]),
            OpId::O3 => hs(&[2, 3, 4, 5, 6, 7]),
            OpId::O4 => hs(&[3, 4, 6]),
            OpId::O5 => fs(&[1]),
            OpId::O6 => hs(&[2, 3]),
            OpId::O7 => hs(&[2]),
            OpId::O8 => Vec::new(),
            OpId::O9 => fs(&[3]),
        }
    }

    /// Whether `piece` is an allowed piece of this operation.
    pub fn allows(self, piece: &PieceId) -> bool {
        match piece {
            PieceId::Corona(_) => self == OpId::O8,
            other => self.allowed_pieces().contains(other),
        }
    }

    /// The main operation this one specializes.
    pub fn parent(self) -> OpId {
        match self {
            OpId::O5 | OpId::O9 => OpId::O1,
            OpId::O10 => OpId::O2,
            OpId::O6 | OpId::O7 | OpId::O8 => OpId::O3,
            other => other,
        }
    }
}

impl fmt::Display for OpId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for OpId {
    type Err = Error;
    fn from_str(s: &str) -> Result<OpId> {
        OpId::ALL
            .into_iter()
            .find(|op| op.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Input(format!("unknown operation {s:?}")))
    }
}

/// A piece reference: catalog entry `H(k)`, fragment `F(a)`, or the labeled
/// corona tree over a stem tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PieceId {
    H(u8),
    F(u8),
    Corona(Tree),
}

impl fmt::Display for PieceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceId::H(k) => write!(f, "H{k}"),
            PieceId::F(a) => write!(f, "F{a}"),
            PieceId::Corona(h) => {
                let edges: Vec<String> = h.edges().map(|(u, v)| format!("{u}-{v}")).collect();
                write!(f, "corona:{}", edges.join(","))
            }
        }
    }
}

/// Parse a comma-separated `u-v` edge list into a tree.
pub fn parse_dash_edges(spec: &str) -> Result<Tree> {
    let mut edges = Vec::new();
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let (a, b) = part
            .split_once('-')
            .ok_or_else(|| Error::Input(format!("bad edge {part:?}")))?;
        let parse = |x: &str| {
            x.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad vertex {x:?}")))
        };
        edges.push((parse(a)?, parse(b)?));
    }
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1);
    Tree::from_edges(n, &edges)
}

impl FromStr for PieceId {
    type Err = Error;
    fn from_str(s: &str) -> Result<PieceId> {
        let s = s.trim();
        let index = |rest: &str| {
            rest.parse::<u8>().map_err(|_| Error::InvalidPiece(s.to_string()))
        };
        if let Some(rest) = s.strip_prefix("corona:") {
            Ok(PieceId::Corona(parse_dash_edges(rest)?))
        } else if let Some(rest) = s.strip_prefix('H') {
            Ok(PieceId::H(index(rest)?))
        } else if let Some(rest) = s.strip_prefix('F') {
            Ok(PieceId::F(index(rest)?))
        } else {
            Err(Error::InvalidPiece(s.to_string()))
        }
    }
}

impl Serialize for PieceId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PieceId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// One operation application in a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub op: OpId,
    pub host_vertex: usize,
    pub piece: PieceId,
    pub piece_vertex: usize,
}

/// Result of an operation: the new labeled tree and where each piece vertex
/// landed. Host vertices keep their indices.
#[derive(Debug, Clone)]
pub struct Applied {
    pub tree: LabeledTree,
    pub piece_map: Vec<usize>,
}

/// Disjoint union plus the edge `u x`; piece vertices are appended in order.
pub fn attach(host: &LabeledTree, u: usize, piece: &LabeledTree, x: usize) -> Result<Applied> {
    let tree = graph::attach_edge(host.tree(), u, piece.tree(), x)?;
    let n = host.order();
    let mut statuses = host.statuses().to_vec();
    statuses.extend_from_slice(piece.statuses());
    Ok(Applied { tree: LabeledTree::new(tree, statuses)?, piece_map: (n..n + piece.order()).collect() })
}

/// Identify `u` of the host with `v` of the piece; the merged vertex keeps
/// index `u` and takes status `merged`.
pub fn glue(host: &LabeledTree, u: usize, piece: &LabeledTree, v: usize, merged: Status) -> Result<Applied> {
    let c = graph::coalesce(host.tree(), u, piece.tree(), v)?;
    let mut statuses = host.statuses().to_vec();
    statuses[u] = merged;
    statuses.extend(
        (0..piece.order()).filter(|&w| w != v).map(|w| piece.status(w)),
    );
    Ok(Applied { tree: LabeledTree::new(c.graph, statuses)?, piece_map: c.second_map })
}

/// Labeled corona over the stem tree `h`: stems are `0..m` with status C,
/// stem `i` gets leaves `m + 2i` and `m + 2i + 1` with status A.
pub fn labeled_corona(h: &Tree) -> Result<LabeledTree> {
    let m = h.order();
    if m < 2 {
        return Err(Error::InvalidPiece("a corona piece needs at least two stems".into()));
    }
    let t = Tree::new(crate::atlas::build_corona(h)?)?;
    let statuses = (0..3 * m).map(|v| if v < m { Status::C } else { Status::A }).collect();
    LabeledTree::new(t, statuses)
}

fn status_check(what: &str, v: usize, have: Status, want: Status) -> Result<()> {
    if have == want {
        Ok(())
    } else {
        Err(Error::StatusPrecondition(format!("{what} vertex {v} has status {have}, expected {want}")))
    }
}

/// Apply one certificate step, validating every precondition.
pub fn apply_step(host: &LabeledTree, step: &Step, catalog: &Catalog) -> Result<Applied> {
    let op = step.op;
    if !op.allows(&step.piece) {
        return Err(Error::InvalidPiece(format!("{op} cannot use piece {}", step.piece)));
    }
    let u = step.host_vertex;
    host.tree().check_vertex(u)?;
    status_check("host", u, host.status(u), op.host_status())?;
    let piece = catalog.piece(&step.piece)?;
    let v = step.piece_vertex;
    piece.tree().check_vertex(v)?;
    if op.is_attachment() {
        let frag = match step.piece {
            PieceId::F(a) => catalog.fragment(a)?,
            _ => unreachable!("attachments only use fragments"),
        };
        if v != frag.attach {
            return Err(Error::InvalidPiece(format!(
                "{} attaches at vertex {}, not {v}",
                step.piece, frag.attach
            )));
        }
        attach(host, u, &piece, v)
    } else {
        status_check("piece", v, piece.status(v), Status::A)?;
        if let PieceId::H(k) = step.piece {
            let entry = catalog.entry(k)?;
            let admissible = if op == OpId::O4 { &entry.o4_vertices } else { &entry.o3_vertices };
            if !admissible.contains(&v) {
                return Err(Error::InvalidPiece(format!("vertex {v} of H{k} is not an attachment vertex for {op}")));
            }
        }
        glue(host, u, &piece, v, op.host_status())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn piece_ids_round_trip() {
        for s in ["H1", "H11", "F3", "corona:0-1,1-2"] {
            assert_eq!(s.parse::<PieceId>().unwrap().to_string(), s);
        }
        assert!("X2".parse::<PieceId>().is_err());
        assert!("corona:0-1,1-0".parse::<PieceId>().is_err());
        let step = Step { op: OpId::O3, host_vertex: 3, piece: PieceId::H(4), piece_vertex: 0 };
        let js = serde_json::to_string(&step).unwrap();
        assert_eq!(js, r#"{"op":"O3","host_vertex":3,"piece":"H4","piece_vertex":0}"#);
        assert_eq!(serde_json::from_str::<Step>(&js).unwrap(), step);
    }

    #[test]
    fn glue_two_p4s() {
        let p4 = LabeledTree::with_status_string(Tree::path(4).unwrap(), "ABBA").unwrap();
        let out = glue(&p4, 3, &p4, 0, Status::A).unwrap();
        assert_eq!(out.tree.order(), 7);
        assert_eq!(out.piece_map, vec![3, 4, 5, 6]);
        let order: Vec<Status> = out.tree.tree().diametral_path().iter().map(|&v| out.tree.status(v)).collect();
        let s: String = order.iter().map(|s| s.to_string()).collect();
        assert_eq!(s, "ABBABBA");
    }

    #[test]
    fn corona_pieces() {
        let c = labeled_corona(&Tree::path(2).unwrap()).unwrap();
        assert_eq!(c.status_string(), "CCAAAA");
        assert!(c.check_structure().is_ok());
        assert!(labeled_corona(&Tree::single()).is_err());
    }
}
