mod common;

use common::path_reference;
use turan_core::constructions::{clique_union, near_regular};
use turan_core::oracle::verify_formula;
use turan_core::{contains_tree, ex_bruteforce, ex_bruteforce_parallel, Budget, OracleError, TreeFamily};

#[test]
fn known_examples() {
    for (p, f, expected) in [
        (7, TreeFamily::Path(4), 6),
        (8, TreeFamily::Path(4), 7),
        (8, TreeFamily::Star(3), 8),
        (5, TreeFamily::Path(5), 6),
    ] {
        let r = ex_bruteforce(p, &f, Budget::default()).unwrap();
        assert_eq!((r.value, r.exact), (expected, true), "{f} at p = {p}");
    }
}

#[test]
fn path_sweeps_match_the_classical_value() {
    for n in [4usize, 6] {
        let lo = if n == 4 { 4 } else { 6 };
        let check = verify_formula(lo..=8, &TreeFamily::Path(n), |p| path_reference(p as u64, n as u64), Budget::default(), 1).unwrap();
        assert!(check.passed(), "{check:?}");
    }
}

#[test]
fn witness_is_free_and_sized() {
    let trees = [
        TreeFamily::Path(6),
        TreeFamily::Star(4),
        TreeFamily::T3(6),
        TreeFamily::TDoublePrime(6),
        TreeFamily::TTriplePrime(6),
        TreeFamily::explicit(5, vec![(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap(),
    ];
    for f in &trees {
        for p in f.order()..=8 {
            let r = ex_bruteforce(p, f, Budget::default()).unwrap();
            assert!(r.exact);
            assert_eq!(r.witness.order(), p);
            assert_eq!(r.witness.edge_count(), r.value);
            assert!(contains_tree(&r.witness, f).unwrap().is_none(), "{f} p = {p}");
        }
    }
}

#[test]
fn single_thread_is_reproducible_and_parallel_agrees() {
    for f in [TreeFamily::Path(6), TreeFamily::TTriplePrime(6), TreeFamily::Star(3)] {
        let a = ex_bruteforce(8, &f, Budget::default()).unwrap();
        let b = ex_bruteforce(8, &f, Budget::default()).unwrap();
        assert_eq!((a.value, a.nodes_explored, &a.witness), (b.value, b.nodes_explored, &b.witness));
        for threads in [2, 8] {
            assert_eq!(ex_bruteforce_parallel(8, &f, Budget::default(), threads).unwrap().value, a.value);
        }
    }
}

#[test]
fn oracle_dominates_constructions() {
    // k K_{n-1} ∪ K_r has no P_n; a (s-1)-regular-ish graph has no K_{1,s}.
    for n in 4..=7usize {
        for p in n..=8 {
            let g = clique_union(p / (n - 1), n, p % (n - 1)).unwrap();
            assert_eq!(g.order(), p);
            assert!(contains_tree(&g, &TreeFamily::Path(n)).unwrap().is_none());
            let r = ex_bruteforce(p, &TreeFamily::Path(n), Budget::default()).unwrap();
            assert!(r.value >= g.edge_count(), "P{n}, p = {p}");
        }
    }
    for s in 2..=4usize {
        for p in s + 1..=8 {
            let g = near_regular(p, s - 1).unwrap();
            assert!(contains_tree(&g, &TreeFamily::Star(s)).unwrap().is_none());
            let r = ex_bruteforce(p, &TreeFamily::Star(s), Budget::default()).unwrap();
            assert!(r.value >= g.edge_count(), "K1,{s}, p = {p}");
        }
    }
}

#[test]
fn budget_env_override() {
    // Parsed through the same entry point the CLI uses.
    std::env::set_var(turan_core::oracle::BUDGET_ENV, "5");
    let budget = Budget::from_env();
    std::env::remove_var(turan_core::oracle::BUDGET_ENV);
    assert_eq!(budget.max_nodes, 5);
    let r = ex_bruteforce(9, &TreeFamily::Path(7), budget).unwrap();
    assert!(!r.exact);
    assert!(matches!(
        verify_formula([9], &TreeFamily::Path(7), |_| 0, budget, 1),
        Err(OracleError::BudgetExhausted { p: 9, .. })
    ));
}
