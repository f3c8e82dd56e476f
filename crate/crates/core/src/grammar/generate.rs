//! Seeded random derivations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grammar::catalog::{catalog, Catalog};
use crate::grammar::labeled::LabeledTree;
use crate::grammar::ops::{self, OpId, PieceId, Step};
use crate::grammar::sequence::TSequence;
use crate::graph::Tree;

/// Stem trees offered to O8 by the generator.
fn corona_stems() -> Vec<Tree> {
    vec![Tree::path(2).expect("n >= 1"), Tree::path(3).expect("n >= 1"), Tree::star(3)]
}

fn subset(ops: &[OpId], allowed: &[OpId]) -> bool {
    !ops.is_empty() && ops.iter().all(|op| allowed.contains(op))
}

/// Bases the generator draws from for a given operation set.
pub fn bases_for(ops: &[OpId]) -> Vec<PieceId> {
    if subset(ops, &[OpId::O5, OpId::O6]) {
        vec![PieceId::H(2), PieceId::H(3)]
    } else if subset(ops, &[OpId::O7, OpId::O8]) {
        let mut out = vec![PieceId::H(2)];
        out.extend(corona_stems().into_iter().map(PieceId::Corona));
        out
    } else if subset(ops, &[OpId::O9, OpId::O10]) {
        vec![PieceId::F(3)]
    } else {
        (1..=11).map(PieceId::H).collect()
    }
}

/// Every step applicable to `t` using the given operations.
pub fn candidate_steps(t: &LabeledTree, ops: &[OpId], cat: &Catalog) -> Result<Vec<Step>> {
    let mut out = Vec::new();
    for &op in ops {
        let hosts = t.vertices_with(op.host_status());
        if hosts.is_empty() {
            continue;
        }
        let mut pieces: Vec<(PieceId, Vec<usize>)> = Vec::new();
        if op == OpId::O8 {
            for h in corona_stems() {
                let c = ops::labeled_corona(&h)?;
                pieces.push((PieceId::Corona(h), c.vertices_with(crate::partition::Status::A)));
            }
        } else {
            for piece in op.allowed_pieces() {
                let vs = match piece {
                    PieceId::F(a) => vec![cat.fragment(a)?.attach],
                    PieceId::H(k) if op == OpId::O4 => cat.entry(k)?.o4_vertices.clone(),
                    PieceId::H(k) => cat.entry(k)?.o3_vertices.clone(),
                    PieceId::Corona(_) => unreachable!("coronas only for O8"),
                };
                pieces.push((piece, vs));
            }
        }
        for &u in &hosts {
            for (piece, vs) in &pieces {
                for &v in vs {
                    out.push(Step { op, host_vertex: u, piece: piece.clone(), piece_vertex: v });
                }
            }
        }
    }
    Ok(out)
}

/// A reproducible random derivation: a base chosen by `seed`, then up to
/// `steps` operations, each drawn uniformly from the applicable ones. Stops
/// early when nothing applies.
pub fn generate(seed: u64, steps: usize, ops: &[OpId]) -> Result<(LabeledTree, TSequence)> {
    generate_with(seed, steps, ops, catalog()?)
}

pub fn generate_with(seed: u64, steps: usize, ops: &[OpId], cat: &Catalog) -> Result<(LabeledTree, TSequence)> {
    generate_capped(seed, steps, ops, usize::MAX, cat)
}

/// As [`generate_with`], skipping steps that would exceed `max_order` vertices.
pub fn generate_capped(
    seed: u64,
    steps: usize,
    ops: &[OpId],
    max_order: usize,
    cat: &Catalog,
) -> Result<(LabeledTree, TSequence)> {
    if ops.is_empty() && steps > 0 {
        return Err(Error::Input("no operations allowed".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = bases_for(ops);
    let base = bases[rng.random_range(0..bases.len())].clone();
    let mut cert = TSequence::new(base);
    let mut t = cert.base_tree(cat)?;
    for _ in 0..steps {
        let mut candidates = candidate_steps(&t, ops, cat)?;
        if max_order != usize::MAX {
            let mut fits = Vec::with_capacity(candidates.len());
            for s in candidates {
                let added = cat.piece_order(&s.piece)? - usize::from(!s.op.is_attachment());
                if t.order() + added <= max_order {
                    fits.push(s);
                }
            }
            candidates = fits;
        }
        if candidates.is_empty() {
            break;
        }
        let step = candidates[rng.random_range(0..candidates.len())].clone();
        t = ops::apply_step(&t, &step, cat)?.tree;
        cert.steps.push(step);
    }
    Ok((t, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_steps_give_a_base() {
        let (t, cert) = generate(7, 0, &OpId::MAIN).unwrap();
        assert!(cert.steps.is_empty());
        assert!(catalog().unwrap().lookup(&t).is_some());
    }

    #[test]
    fn same_seed_same_tree() {
        let a = generate(3, 6, &OpId::MAIN).unwrap();
        let b = generate(3, 6, &OpId::MAIN).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
        assert_eq!(a.1.replay(catalog().unwrap()).unwrap(), a.0);
    }

    #[test]
    fn restricted_families() {
        let (t, _) = generate(1, 5, &[OpId::O9, OpId::O10]).unwrap();
        assert_eq!(t.count(crate::partition::Status::A), 0);
        assert_eq!(t.count(crate::partition::Status::B), 0);
        let (t, _) = generate(1, 5, &[OpId::O5, OpId::O6]).unwrap();
        assert_eq!(t.count(crate::partition::Status::D), 0);
    }
}
