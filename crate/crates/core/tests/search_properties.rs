mod common;

use achieve_core::{
    decide, find_witness, obstruction_search, unimodular_to_basis, LatticeVector, Mode, SearchConfig, SymmetricSet, Verdict,
};
use common::*;
use rand::Rng;

fn cfg(k: usize, bound: i64, mode: Mode, threads: usize) -> SearchConfig {
    SearchConfig {
        k,
        bound,
        mode,
        node_limit: 1 << 34,
        threads,
    }
}

#[test]
fn bounded_completeness_against_full_enumeration() {
    for bound in 0..=2 {
        let achieved: Vec<SymmetricSet> = all_one_dim_maps(3, bound).iter().map(geometric_achieved_set).collect();
        // symmetric subsets of {-4..4}, including {0}
        let mut targets = all_one_dim_sets(4);
        targets.push(set(1, &[]));
        for a in &targets {
            for mode in [Mode::Subset, Mode::Exact] {
                let expected = achieved.iter().any(|s| match mode {
                    Mode::Subset => s.is_subset(a),
                    Mode::Exact => s == a,
                });
                let found = find_witness(a, &cfg(3, bound, mode, 1)).unwrap();
                assert_eq!(found.is_some(), expected, "{a} bound {bound} {mode:?}");
            }
        }
    }
}

#[test]
fn first_witness_is_first_in_value_order() {
    // among all maps achieving the target, the search returns the one that is
    // smallest when cells are compared in order by (sup-norm, coordinates)
    let key = |s: &achieve_core::DiscreteNSet| -> Vec<(i64, Vec<i64>)> {
        s.shifts().iter().map(|v| (v.sup_norm(), v.coords().to_vec())).collect()
    };
    let maps = all_one_dim_maps(4, 2);
    for a in all_one_dim_sets(4) {
        let best = maps.iter().filter(|m| geometric_achieved_set(m) == a).min_by_key(|m| key(m));
        let found = find_witness(&a, &cfg(4, 2, Mode::Exact, 1)).unwrap();
        assert_eq!(found.as_ref(), best, "{a}");
    }
}

fn corpus() -> Vec<SymmetricSet> {
    let mut out = vec![
        SymmetricSet::unit_cube(2),
        set(2, &[&[1, 0], &[0, 1], &[1, 1]]),
        set(2, &[&[1, 0], &[0, 1], &[1, -1], &[2, 1]]),
        set(2, &[&[1, 0], &[2, 0], &[2, 1], &[0, 1]]),
        set(1, &[&[2], &[3]]),
        set(1, &[&[3], &[5]]),
    ];
    let mut r = rng(21);
    for _ in 0..10 {
        let s = random_nset(&mut r, 2, 3, 1);
        out.push(s.achieved_set());
    }
    out
}

#[test]
fn deterministic_across_thread_counts() {
    for a in corpus() {
        for mode in [Mode::Subset, Mode::Exact] {
            let one = find_witness(&a, &cfg(3, 1, mode, 1)).unwrap();
            let four = find_witness(&a, &cfg(3, 1, mode, 4)).unwrap();
            assert_eq!(one, four, "{a} {mode:?}");
        }
        let one = decide(&a, 4, &cfg(3, 1, Mode::Exact, 1));
        let four = decide(&a, 4, &cfg(3, 1, Mode::Exact, 4));
        assert_eq!(one, four, "{a}");
    }
}

#[test]
fn returned_witnesses_are_sound() {
    for a in corpus() {
        for mode in [Mode::Subset, Mode::Exact] {
            if let Some(w) = find_witness(&a, &cfg(3, 1, mode, 0)).unwrap() {
                let got = geometric_achieved_set(&w);
                match mode {
                    Mode::Subset => assert!(got.is_subset(&a), "{a}"),
                    Mode::Exact => assert_eq!(got, a),
                }
            }
        }
    }
}

#[test]
fn success_is_monotone_in_bound_and_resolution() {
    let mut r = rng(5);
    let mut checked = 0;
    while checked < 12 {
        let n = r.random_range(1..=2);
        let a = random_nset(&mut r, n, 3, 1).achieved_set();
        let Some(w) = find_witness(&a, &cfg(3, 1, Mode::Exact, 0)).unwrap() else {
            continue;
        };
        assert!(find_witness(&a, &cfg(3, 2, Mode::Exact, 0)).unwrap().is_some(), "{a}");
        // the refined witness lies in the bounded space at resolution 6
        let fine = w.refine(2).unwrap();
        assert_eq!(fine.achieved_set(), a);
        assert!(fine.shifts().iter().all(|s| s.sup_norm() <= 1));
        if n == 1 {
            assert!(find_witness(&a, &cfg(6, 1, Mode::Exact, 0)).unwrap().is_some(), "{a}");
        }
        checked += 1;
    }
}

#[test]
fn node_limit_yields_unknown() {
    let a = set(2, &[&[1, 0], &[0, 1], &[1, 1], &[2, 1]]);
    let c = SearchConfig {
        node_limit: 5,
        ..cfg(3, 2, Mode::Exact, 1)
    };
    match decide(&a, 4, &c) {
        Verdict::Unknown { frontier, .. } => {
            assert_eq!(frontier.len(), 2);
            assert!(frontier.iter().all(|f| f.outcome == "node-limit"));
        }
        Verdict::Achieved { .. } => {}
        other => panic!("{other:?}"),
    }
}

/// Sets refuted by a certificate have no witness at k ≤ 4, |f| ≤ 2.
#[test]
fn certificates_agree_with_search() {
    let mut r = rng(99);
    let example = set(2, &[&[1, 0], &[2, 0], &[2, 1], &[0, 1]]);
    let mut refuted = Vec::new();
    while refuted.len() < 50 {
        let a = if refuted.len() % 2 == 0 {
            // images of the planar example under random unimodular maps
            let u = lv(&[r.random_range(-2..=2), r.random_range(-2..=2)]);
            let v = lv(&[r.random_range(-2..=2), r.random_range(-2..=2)]);
            match unimodular_to_basis(&u, &v) {
                Ok(m) => example.map(&m),
                Err(_) => continue,
            }
        } else {
            let count = r.random_range(3..=5);
            let vs: Vec<LatticeVector> =
                (0..count).map(|_| lv(&[r.random_range(-2..=2), r.random_range(-2..=2)])).collect();
            SymmetricSet::normalize(2, &vs).unwrap()
        };
        if a.max_sup_norm() > 3 || !a.generates_full_lattice() {
            continue;
        }
        if obstruction_search(&a).unwrap().is_some() {
            refuted.push(a);
        }
    }
    for a in &refuted {
        for k in 3..=4 {
            assert_eq!(find_witness(a, &cfg(k, 2, Mode::Exact, 0)).unwrap(), None, "{a} at k = {k}");
        }
    }
}
