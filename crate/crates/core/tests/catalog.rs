use rdx_core::grammar::{catalog, LabeledTree};
use rdx_core::graph::Tree;
use rdx_core::partition::{self, Status};
use rdx_core::solver;

#[test]
fn derived_catalog_matches_cached_one() {
    let derived = catalog::derive_base_catalog().unwrap();
    let cached = catalog::catalog().unwrap();
    assert_eq!(derived.entries().len(), 11);
    for (a, b) in derived.entries().iter().zip(cached.entries()) {
        assert_eq!(a.tree.code(), b.tree.code());
        assert_eq!(a.tree.status_string(), b.tree.status_string());
    }
}

#[test]
fn entries_are_excellent_with_partition_statuses() {
    let cat = catalog::catalog().unwrap();
    for e in cat.entries() {
        let t = e.tree.tree();
        assert!(partition::is_excellent(t).unwrap(), "{}", e.name());
        assert_eq!(solver::gamma_r_tree(t), e.gamma_r, "{}", e.name());
        let derived = partition::derive_statuses(t).unwrap();
        assert!(derived.isomorphism_to(&e.tree).is_some(), "{}", e.name());
        assert!(e.tree.structural_violations().is_empty(), "{}", e.name());
    }
}

#[test]
fn small_entries_have_fixed_shapes() {
    let cat = catalog::catalog().unwrap();
    let k2 = LabeledTree::with_status_string(Tree::path(2).unwrap(), "DD").unwrap();
    let p4 = LabeledTree::with_status_string(Tree::path(4).unwrap(), "ABBA").unwrap();
    assert_eq!(cat.lookup(&k2).map(|e| e.index), Some(1));
    assert_eq!(cat.lookup(&p4).map(|e| e.index), Some(2));
    let h2 = cat.entry(2).unwrap();
    assert_eq!(h2.tree.count(Status::A), 2);
    assert!(cat.entry(12).is_err());
}

#[test]
fn fragments_are_the_four_pieces() {
    let cat = catalog::catalog().unwrap();
    let shapes: Vec<String> = cat.fragments().iter().map(|f| f.tree.status_string()).collect();
    assert_eq!(shapes, ["CAA", "DDCA", "DDCDD", "CDD"]);
    for f in cat.fragments() {
        assert_eq!(f.gamma_r, solver::gamma_r_tree(f.tree.tree()));
    }
    assert!(cat.fragment(5).is_err());
}
