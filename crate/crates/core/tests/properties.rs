use proptest::prelude::*;

use rdx_core::canon;
use rdx_core::grammar::{self, OpId};
use rdx_core::graph::Tree;
use rdx_core::partition;
use rdx_core::solver::{self, brute};

/// Random tree on `n` vertices together with a vertex permutation.
fn tree_and_perm(max_n: usize) -> impl Strategy<Value = (Tree, Vec<usize>)> {
    (1..=max_n).prop_flat_map(|n| {
        let parents = (1..n).map(|i| 0..i).collect::<Vec<_>>();
        let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
        (parents, perm).prop_map(|(p, perm)| (Tree::from_parents(&p).unwrap(), perm))
    })
}

fn relabel(t: &Tree, perm: &[usize]) -> Tree {
    let edges: Vec<_> = t.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Tree::from_edges(t.order(), &edges).unwrap()
}

proptest! {
    #[test]
    fn canonical_code_ignores_labels((t, perm) in tree_and_perm(10)) {
        let r = relabel(&t, &perm);
        prop_assert_eq!(canon::canonical_code(&t), canon::canonical_code(&r));
        prop_assert!(canon::isomorphism(&t, None, &r, None).is_some());
    }

    #[test]
    fn partition_follows_relabeling((t, perm) in tree_and_perm(10)) {
        let a = partition::partition_report(&t).unwrap();
        let b = partition::partition_report(&relabel(&t, &perm)).unwrap();
        prop_assert_eq!(a.gamma_r, b.gamma_r);
        for v in 0..t.order() {
            prop_assert_eq!(a.value_sets[v], b.value_sets[perm[v]]);
        }
    }

    #[test]
    fn tree_dp_matches_bruteforce((t, _) in tree_and_perm(12)) {
        let gr = solver::gamma_r_tree(&t);
        let g = solver::gamma_tree(&t);
        prop_assert_eq!(gr, brute::gamma_r_bruteforce(&t).unwrap());
        prop_assert_eq!(g, brute::gamma_bruteforce(&t).unwrap());
        prop_assert!(g <= gr && gr <= 2 * g);
    }

    #[test]
    fn generated_trees_are_excellent_and_recognized(seed in 0u64..10_000, steps in 0usize..12) {
        let (lt, cert) = grammar::generate(seed, steps, &OpId::MAIN).unwrap();
        let cat = grammar::catalog().unwrap();
        prop_assert!(cert.replay(cat).unwrap().isomorphism_to(&lt).is_some());
        prop_assert!(partition::is_excellent(lt.tree()).unwrap());
        prop_assert!(grammar::recognize(lt.tree()).unwrap().is_accept());
    }
}
