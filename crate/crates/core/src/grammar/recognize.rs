//! Recognition by decomposition.
//!
//! The input's statuses come from its partition. While the labeled tree has
//! three or more B/C vertices, the statuses and degrees near the end of a
//! diametral path `x1, x2, ...` select the last operation of a derivation
//! (a piece, a host vertex and the branch at the host that holds the piece).
//! The branch is matched against the piece, removed, and the remainder must
//! again satisfy the structural conditions. The final remainder is a catalog
//! entry. Steps are emitted in construction order.

use crate::canon;
use crate::error::{Error, Result};
use crate::grammar::catalog::{catalog, Catalog};
use crate::grammar::labeled::LabeledTree;
use crate::grammar::ops::{self, OpId, PieceId, Step};
use crate::grammar::sequence::TSequence;
use crate::graph::{delete_vertices, Tree};
use crate::partition::{self, PartitionReport, Status};

#[derive(Debug, Clone)]
pub enum Recognition {
    Accept {
        labeled: LabeledTree,
        cert: TSequence,
        /// `map[v]` is the vertex of the replayed tree that corresponds to
        /// input vertex `v`.
        map: Vec<usize>,
    },
    Reject {
        /// A vertex labeled 0 by every γ_R-function.
        witness: usize,
        report: PartitionReport,
    },
}

impl Recognition {
    pub fn is_accept(&self) -> bool {
        matches!(self, Recognition::Accept { .. })
    }
}

/// One peeled piece, in the coordinates of the tree it was removed from.
#[derive(Debug, Clone)]
struct Peel {
    op: OpId,
    piece: PieceId,
    host: usize,
    piece_vertex: usize,
    /// Vertex of the current tree for each piece vertex (the glued vertex
    /// maps to the host).
    piece_to_cur: Vec<usize>,
    removed: Vec<usize>,
}

/// The vertices of the branch at `host` that contains its neighbor `entry`.
fn branch(t: &Tree, host: usize, entry: usize) -> Vec<usize> {
    let mut seen = vec![false; t.order()];
    seen[host] = true;
    seen[entry] = true;
    let mut stack = vec![entry];
    let mut out = Vec::new();
    while let Some(v) = stack.pop() {
        out.push(v);
        for &w in t.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    out.sort_unstable();
    out
}

fn recognizer_error(lt: &LabeledTree, what: &str) -> Error {
    Error::Recognizer(format!("{what}; tree {:?} statuses {}", lt.tree(), lt.status_string()))
}

/// Match the branch at `host` through `entry` against a piece and build the peel.
fn match_piece(
    lt: &LabeledTree,
    cat: &Catalog,
    op: OpId,
    piece: PieceId,
    host: usize,
    entry: usize,
) -> Result<Peel> {
    let t = lt.tree();
    if lt.status(host) != op.host_status() {
        return Err(recognizer_error(lt, &format!("{op} needs host status {}, vertex {host} has {}", op.host_status(), lt.status(host))));
    }
    let removed = branch(t, host, entry);
    let piece_tree = cat.piece(&piece)?;
    let piece_labels = piece_tree.labels();
    if op.is_attachment() {
        let PieceId::F(a) = piece else { unreachable!("attachments use fragments") };
        let x = cat.fragment(a)?.attach;
        let sub = Tree::new(t.induced(&removed)?)?;
        let labels: Vec<u8> = removed.iter().map(|&v| lt.status(v).as_byte()).collect();
        let root = removed.binary_search(&entry).expect("entry is in its branch");
        let iso = canon::rooted_isomorphism(piece_tree.tree(), x, Some(&piece_labels), &sub, root, Some(&labels))
            .ok_or_else(|| recognizer_error(lt, &format!("branch at {host} through {entry} is not {piece}")))?;
        let piece_to_cur = iso.iter().map(|&i| removed[i]).collect();
        return Ok(Peel { op, piece, host, piece_vertex: x, piece_to_cur, removed });
    }
    let mut keep = removed.clone();
    keep.push(host);
    keep.sort_unstable();
    let sub = Tree::new(t.induced(&keep)?)?;
    let root = keep.binary_search(&host).expect("host kept");
    let mut labels: Vec<u8> = keep.iter().map(|&v| lt.status(v).as_byte()).collect();
    labels[root] = Status::A.as_byte();
    let PieceId::H(k) = piece else { unreachable!("coalescence pieces here are catalog entries") };
    let entry_data = cat.entry(k)?;
    let admissible = if op == OpId::O4 { &entry_data.o4_vertices } else { &entry_data.o3_vertices };
    for &v in admissible {
        if let Some(iso) =
            canon::rooted_isomorphism(piece_tree.tree(), v, Some(&piece_labels), &sub, root, Some(&labels))
        {
            let piece_to_cur = iso.iter().map(|&i| keep[i]).collect();
            return Ok(Peel { op, piece, host, piece_vertex: v, piece_to_cur, removed });
        }
    }
    Err(recognizer_error(lt, &format!("branch at {host} through {entry} is not {piece} glued at an attachment vertex")))
}

/// Select the last operation from the end of the diametral path.
fn find_peel(lt: &LabeledTree, cat: &Catalog) -> Result<Peel> {
    let t = lt.tree();
    let p = t.diametral_path();
    let st = |v: usize| lt.status(v);
    let x = |i: usize| -> Result<usize> {
        p.get(i - 1).copied().ok_or_else(|| recognizer_error(lt, &format!("diametral path has no x{i}")))
    };
    // neighbors of x_i off the path
    let off = |i: usize| -> Result<Vec<usize>> {
        let xi = x(i)?;
        let prev = x(i - 1)?;
        let next = p.get(i).copied();
        Ok(t.neighbors(xi).iter().copied().filter(|&w| w != prev && Some(w) != next).collect())
    };
    let first_off = |i: usize| -> Result<usize> {
        off(i)?.first().copied().ok_or_else(|| recognizer_error(lt, &format!("x{i} has no neighbor off the path")))
    };
    let glue_op = |host: usize| -> Result<OpId> {
        match st(host) {
            Status::A => Ok(OpId::O3),
            Status::D => Ok(OpId::O4),
            s => Err(recognizer_error(lt, &format!("glue vertex {host} has status {s}"))),
        }
    };
    let (x1, x2, x3) = (x(1)?, x(2)?, x(3)?);
    match (st(x1), st(x2)) {
        (Status::A, Status::B) => match_piece(lt, cat, OpId::O3, PieceId::H(2), x(4)?, x3),
        (Status::A, Status::C) => {
            if t.degree(x3) >= 4 {
                return match_piece(lt, cat, OpId::O1, PieceId::F(1), x3, x2);
            }
            let y = first_off(3)?;
            let x4 = x(4)?;
            match (st(x4), st(y)) {
                (Status::A, Status::A) => match_piece(lt, cat, OpId::O3, PieceId::H(3), x4, x3),
                (Status::A, Status::D) => match_piece(lt, cat, OpId::O3, PieceId::H(4), x4, x3),
                (Status::D, Status::A) => match_piece(lt, cat, OpId::O4, PieceId::H(3), x4, x3),
                (Status::D, Status::D) => match_piece(lt, cat, OpId::O1, PieceId::F(1), x3, x2),
                _ => Err(recognizer_error(lt, "unexpected statuses around x3 with x1 = A")),
            }
        }
        (Status::D, Status::D) => {
            if st(x3) != Status::C {
                return Err(recognizer_error(lt, "x3 is not C although x1 = D"));
            }
            if t.degree(x3) == 2 {
                return match_piece(lt, cat, OpId::O2, PieceId::F(4), x(4)?, x3);
            }
            if t.degree(x3) >= 4 {
                let x4 = x(4)?;
                let y = t
                    .neighbors(x3)
                    .iter()
                    .copied()
                    .find(|&y| {
                        y != x4
                            && st(y) == Status::C
                            && t.degree(y) == 3
                            && t.neighbors(y).iter().filter(|&&z| z != x3).all(|&z| t.degree(z) == 1 && st(z) == Status::A)
                    })
                    .ok_or_else(|| recognizer_error(lt, "no C neighbor of x3 carrying two A leaves"))?;
                return match_piece(lt, cat, OpId::O1, PieceId::F(1), x3, y);
            }
            let y = first_off(3)?;
            let x4 = x(4)?;
            match st(x4) {
                Status::A | Status::D => match_piece(lt, cat, glue_op(x4)?, PieceId::H(4), x4, x3),
                Status::C => {
                    let small = t.degree(x4) >= 4
                        || (t.degree(x4) == 3 && st(x(5)?) == Status::D && st(first_off(4)?) == Status::D);
                    let (fragment, with_a, with_d) = match st(y) {
                        Status::A => (2u8, 4u8, 5u8),
                        Status::D => (3, 6, 7),
                        _ => return Err(recognizer_error(lt, "x3's off-path neighbor is neither A nor D")),
                    };
                    if small {
                        return match_piece(lt, cat, OpId::O1, PieceId::F(fragment), x4, x3);
                    }
                    let x5 = x(5)?;
                    match st(first_off(4)?) {
                        Status::A => match_piece(lt, cat, glue_op(x5)?, PieceId::H(with_a), x5, x4),
                        Status::D => match_piece(lt, cat, OpId::O3, PieceId::H(with_d), x5, x4),
                        _ => Err(recognizer_error(lt, "x4's off-path neighbor is neither A nor D")),
                    }
                }
                Status::B => Err(recognizer_error(lt, "x4 has status B")),
            }
        }
        _ => Err(recognizer_error(lt, "unexpected statuses at x1, x2")),
    }
}

/// Remove the peeled branch; returns the remainder and its old indices.
fn remainder(lt: &LabeledTree, peel: &Peel) -> Result<(LabeledTree, Vec<usize>)> {
    let d = delete_vertices(lt.tree(), &peel.removed)?;
    let statuses = d.new_to_old.iter().map(|&v| lt.status(v)).collect();
    let rest = LabeledTree::new(Tree::new(d.graph)?, statuses)?;
    Ok((rest, d.new_to_old))
}

struct Recorded {
    step: Peel,
    host_input: usize,
    piece_to_input: Vec<usize>,
}

/// Certificate for a labeled tree satisfying the structural conditions.
/// Returns the certificate and, per vertex of `lt`, its index in the replay.
pub fn decompose(lt: &LabeledTree, cat: &Catalog) -> Result<(TSequence, Vec<usize>)> {
    lt.check_structure()?;
    let mut cur = lt.clone();
    let mut orig: Vec<usize> = (0..lt.order()).collect();
    let mut peels: Vec<Recorded> = Vec::new();
    while cur.k() > 2 {
        let peel = find_peel(&cur, cat)?;
        let (rest, new_to_old) = remainder(&cur, &peel)?;
        if let Some(msg) = rest.structural_violations().into_iter().next() {
            return Err(recognizer_error(&cur, &format!("remainder after removing {} fails: {msg}", peel.piece)));
        }
        let host_input = orig[peel.host];
        let piece_to_input = peel.piece_to_cur.iter().map(|&v| orig[v]).collect();
        peels.push(Recorded { step: peel, host_input, piece_to_input });
        orig = new_to_old.iter().map(|&v| orig[v]).collect();
        cur = rest;
    }
    let entry = cat
        .lookup(&cur)
        .ok_or_else(|| recognizer_error(&cur, "remainder with at most two B/C vertices is not a catalog entry"))?;
    let iso = cur.isomorphism_to(&entry.tree).expect("lookup matched the labeled code");

    // the base and its derivation from H1 rebuild the entry with its own indices
    let (base, mut steps) = if entry.derivation.is_empty() {
        (PieceId::H(entry.index), Vec::new())
    } else {
        (PieceId::H(1), entry.derivation.clone())
    };
    let mut replay_to_input = vec![usize::MAX; entry.tree.order()];
    for (c, &e) in iso.iter().enumerate() {
        replay_to_input[e] = orig[c];
    }
    let mut input_to_replay = vec![usize::MAX; lt.order()];
    for (r, &i) in replay_to_input.iter().enumerate() {
        input_to_replay[i] = r;
    }
    let mut t = TSequence { base: base.clone(), steps: steps.clone() }.replay(cat)?;
    for rec in peels.iter().rev() {
        let step = Step {
            op: rec.step.op,
            host_vertex: input_to_replay[rec.host_input],
            piece: rec.step.piece.clone(),
            piece_vertex: rec.step.piece_vertex,
        };
        let applied = ops::apply_step(&t, &step, cat)?;
        for (pv, &r) in applied.piece_map.iter().enumerate() {
            input_to_replay[rec.piece_to_input[pv]] = r;
        }
        t = applied.tree;
        steps.push(step);
    }
    for v in 0..lt.order() {
        let r = input_to_replay[v];
        let edges_match = lt.tree().neighbors(v).iter().all(|&w| t.tree().has_edge(r, input_to_replay[w]));
        if r == usize::MAX || t.status(r) != lt.status(v) || !edges_match {
            return Err(recognizer_error(lt, "replayed certificate does not reproduce the input"));
        }
    }
    Ok((TSequence { base, steps }, input_to_replay))
}

pub fn recognize(t: &Tree) -> Result<Recognition> {
    recognize_with(t, catalog()?)
}

pub fn recognize_with(t: &Tree, cat: &Catalog) -> Result<Recognition> {
    if t.order() < 2 {
        return Err(Error::OrderTooSmall { what: "recognition", order: t.order(), min: 2 });
    }
    let report = partition::partition_report(t)?;
    if let Some(&witness) = report.bad_vertices().first() {
        return Ok(Recognition::Reject { witness, report });
    }
    let labeled = LabeledTree::new(t.clone(), partition::statuses_from_report(t, &report)?)?;
    let (cert, map) = decompose(&labeled, cat)?;
    Ok(Recognition::Accept { labeled, cert, map })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn accept(t: &Tree) -> (LabeledTree, TSequence) {
        match recognize(t).unwrap() {
            Recognition::Accept { labeled, cert, .. } => (labeled, cert),
            Recognition::Reject { witness, .. } => panic!("rejected with witness {witness}"),
        }
    }

    #[test]
    fn small_paths() {
        let (lt, cert) = accept(&Tree::path(4).unwrap());
        assert_eq!(lt.status_string(), "ABBA");
        assert_eq!(cert.base, PieceId::H(2));
        assert!(cert.steps.is_empty());

        let (_, cert) = accept(&Tree::path(7).unwrap());
        assert_eq!(cert.base, PieceId::H(2));
        assert_eq!(cert.steps.len(), 1);
        assert_eq!(cert.steps[0].op, OpId::O3);
    }

    #[test]
    fn star_is_rejected_at_a_leaf() {
        match recognize(&Tree::star(3)).unwrap() {
            Recognition::Reject { witness, .. } => assert_ne!(witness, 0),
            _ => panic!("star accepted"),
        }
        assert!(recognize(&Tree::single()).is_err());
    }
}
