//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact (integer arithmetic throughout), so no numeric
//! tolerance applies. Run with `cargo test -p achieve-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use achieve_core::structure::DeltaCondition;
use achieve_core::{
    build_from_generators, catalog, characteristic_graph, components, decide, find_witness, validate_decomposition,
    DiscreteNSet, GeneratorSpec, LatticeVector, Mode, SearchConfig, Sign, SymmetricSet, TorusGraph, Verdict,
};
use common::*;
use rand::Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn config(bound: i64) -> SearchConfig {
    SearchConfig {
        k: 3,
        bound,
        mode: Mode::Exact,
        node_limit: 2_000_000_000,
        threads: 0,
    }
}

fn planar_example() -> SymmetricSet {
    set(2, &[&[1, 0], &[2, 0], &[2, 1], &[0, 1]])
}

/// Every symmetric A ⊆ {-6..6} with 0 and at least one pair: decided exactly
/// by its gcd, with witnesses at k ≤ 8 and |f| ≤ 8.
fn one_dimensional_sweep() -> Check {
    let sets = all_one_dim_sets(6);
    let mut achieved = 0;
    let mut refuted = 0;
    let mut max_k = 0;
    for a in &sets {
        let g = a.subgroup().content();
        match decide(a, 8, &config(8)) {
            Verdict::Achieved { k, witness } if g == 1 => {
                ensure(k <= 8, || format!("{a}: k = {k}"))?;
                ensure(witness.achieved_set() == *a, || format!("{a}: witness achieves {}", witness.achieved_set()))?;
                ensure(geometric_achieved_set(&witness) == *a, || format!("{a}: geometric oracle disagrees"))?;
                ensure(witness.shifts().iter().all(|s| s.sup_norm() <= 8), || format!("{a}: bound"))?;
                max_k = max_k.max(k);
                achieved += 1;
            }
            Verdict::RefutedNecessary { .. } if g != 1 => refuted += 1,
            other => return Err(format!("{a} (gcd {g}): unexpected verdict {other:?}")),
        }
    }
    Ok(format!(
        "{} sets: {achieved} achieved (max k = {max_k}), {refuted} refuted by gcd",
        sets.len()
    ))
}

/// {0, ±a, ±2a, ±(2a+b), ±b} and five unimodular images are refuted by a
/// valid certificate; no witness exists at k ≤ 4, |f| ≤ 2.
fn planar_obstruction() -> Check {
    let base = planar_example();
    let mut instances = vec![base.clone()];
    instances.extend(fixed_unimodular().iter().map(|m| base.map(m)));
    for a in &instances {
        let Verdict::RefutedObstruction { certificate } = decide(a, 4, &config(2)) else {
            return Err(format!("{a}: not refuted by an obstruction"));
        };
        let s_list: Vec<Vec<LatticeVector>> = certificate.pieces.iter().map(|p| p.s.clone()).collect();
        let checked = validate_decomposition(a, &s_list, DeltaCondition::NoPrimitive).map_err(|e| format!("{a}: {e}"))?;
        ensure(checked == certificate, || format!("{a}: certificate differs on revalidation"))?;
        ensure(certificate.refutes(2), || format!("{a}: certificate does not refute"))?;
    }
    let mut searched = Vec::new();
    for k in 3..=4 {
        for mode in [Mode::Exact, Mode::Subset] {
            let cfg = SearchConfig {
                k,
                mode,
                ..config(2)
            };
            let found = find_witness(&base, &cfg).map_err(|e| format!("k = {k}: {e}"))?;
            ensure(found.is_none(), || format!("k = {k} {mode:?}: unexpected witness"))?;
            searched.push(format!("k={k} {mode:?}"));
        }
    }
    Ok(format!(
        "{} sets refuted with valid certificates; no witness ({})",
        instances.len(),
        searched.join(", ")
    ))
}

/// Twenty seeded generator specs with m, n ≤ 3 and entries in -3..=3.
fn constructive_family() -> Check {
    let mut r = rng(0x5eed_0003);
    let random_generators = |r: &mut rand_chacha::ChaCha8Rng, count: usize, total: [i64; 2]| loop {
        let mut out: Vec<LatticeVector> =
            (1..count).map(|_| lv(&[r.random_range(-3..=3), r.random_range(-3..=3)])).collect();
        let s = out.iter().fold(lv(&[0, 0]), |acc, x| &acc + x);
        let last = &lv(&total) - &s;
        if last.sup_norm() <= 3 {
            out.push(last);
            return out;
        }
    };
    for i in 0..20 {
        let m = r.random_range(1..=3);
        let n = r.random_range(1..=3);
        let a = random_generators(&mut r, m, [1, 0]);
        let b = random_generators(&mut r, n, [0, 1]);
        let signs = (0..m)
            .map(|_| (0..n).map(|_| if r.random() { Sign::Plus } else { Sign::Minus }).collect())
            .collect();
        let spec = GeneratorSpec::new(a, b, signs);
        let (witness, target) = build_from_generators(&spec).map_err(|e| format!("spec {i}: {e}"))?;
        ensure(target == spec.target(), || format!("spec {i}: wrong target"))?;
        ensure(geometric_achieved_set(&witness) == target, || {
            format!("spec {i}: geometric oracle gives {}", geometric_achieved_set(&witness))
        })?;
    }
    Ok("20 specs achieve exactly their targets".into())
}

/// differentiate / integrate / achieved_set round trips on 1000 seeded sets.
fn calculus_round_trips() -> Check {
    let mut r = rng(0x5eed_0004);
    for i in 0..1000 {
        let n = r.random_range(1..=2);
        let k = r.random_range(3..=5);
        let set = random_nset(&mut r, n, k, 3);
        let d = set.differentiate();
        ensure(d.classify().proper, || format!("#{i}: not proper"))?;
        let back = d.integrate(&vec![0; n]).map_err(|e| format!("#{i}: {e}"))?;
        let f0 = set.shift(0);
        let pinned: Vec<LatticeVector> = set.shifts().iter().map(|s| s - &f0).collect();
        ensure(back.shifts() == pinned.as_slice(), || format!("#{i}: integrate did not invert"))?;
        let achieved = set.achieved_set();
        ensure(achieved == geometric_achieved_set(&set), || format!("#{i}: geometric oracle disagrees"))?;
        ensure(d.edge_values() == achieved, || format!("#{i}: edge values differ"))?;
    }
    Ok("1000 sets (n ≤ 2, k ≤ 5, |f| ≤ 3)".into())
}

/// Every achieved set at n = 2, k = 3, |f| ≤ 1 has a characteristic-graph
/// component generating Z^2.
fn catalog_components() -> Check {
    let cat = catalog(2, 3, 1, 2_000_000_000, 0).map_err(|e| e.to_string())?;
    ensure(cat.complete || cat.admitted >= 100_000, || {
        format!("stopped after only {} maps", cat.admitted)
    })?;
    for e in &cat.entries {
        ensure(e.witness.achieved_set() == e.set, || format!("{}: witness mismatch", e.set))?;
        let comps = components(&characteristic_graph(&e.set));
        ensure(comps.iter().any(SymmetricSet::generates_full_lattice), || {
            format!("{}: no component generates Z^2", e.set)
        })?;
    }
    Ok(format!(
        "{} distinct sets from {} maps ({})",
        cat.entries.len(),
        cat.admitted,
        if cat.complete { "complete" } else { "partial" }
    ))
}

/// Vertex-simple cycles of length ≤ 8 on G_{2,3} and G_{2,4} have zero or
/// primitive winding.
fn cycle_windings() -> Check {
    let mut summary = Vec::new();
    let mut bad = Vec::new();
    for k in [3, 4] {
        let g = TorusGraph::new(2, k).unwrap();
        let mut total = 0u64;
        let mut nonprimitive = 0u64;
        let mut crossing_free_bad = 0u64;
        for c in g.simple_cycles(8) {
            let c = c.map_err(|e| e.to_string())?;
            total += 1;
            if !(c.winding.is_zero() || c.winding.is_primitive()) {
                nonprimitive += 1;
                if !c.is_self_crossing(&g) {
                    crossing_free_bad += 1;
                }
                if bad.len() < 2 {
                    bad.push(format!("G_2,{k} cycle {:?} winding {}", c.vertices, c.winding));
                }
            }
        }
        summary.push(format!(
            "G_2,{k}: {total} cycles, {nonprimitive} nonprimitive (of those {crossing_free_bad} without self-crossing)"
        ));
    }
    if bad.is_empty() {
        Ok(summary.join("; "))
    } else {
        Err(format!("{}; e.g. {}", summary.join("; "), bad.join(", ")))
    }
}

/// augment(K, x) achieves A(K) ∪ {±x}.
fn augmentation() -> Check {
    let mut r = rng(0x5eed_0007);
    for i in 0..500 {
        let n = r.random_range(1..=2);
        let k = r.random_range(3..=5);
        let set = random_nset(&mut r, n, k, 2);
        let x = LatticeVector::new((0..n).map(|_| r.random_range(-5..=5)).collect());
        let aug = set.augment(&x).map_err(|e| format!("#{i}: {e}"))?;
        let expected = set.achieved_set().with(&x);
        ensure(aug.achieved_set() == expected, || format!("#{i}: {} != {expected}", aug.achieved_set()))?;
        ensure(geometric_achieved_set(&aug) == expected, || format!("#{i}: geometric oracle disagrees"))?;
    }
    Ok("500 cases (n ≤ 2, |x| ≤ 5)".into())
}

/// achieved_ideal matches dense point sampling; the square tiling's maximal
/// class is the four corners of a unit square.
fn ideal_sampling() -> Check {
    let mut r = rng(0x5eed_0008);
    for i in 0..100 {
        let n = r.random_range(1..=2);
        let k = r.random_range(3..=4);
        let set = random_nset(&mut r, n, k, 2);
        let ideal = set.achieved_ideal().map_err(|e| format!("#{i}: {e}"))?;
        let ours: std::collections::BTreeSet<Vec<LatticeVector>> =
            ideal.classes.iter().map(|c| c.members.clone()).collect();
        let sampled = sampled_ideal(&set, 4 * k as i64);
        ensure(ours == sampled, || format!("#{i}: {} classes vs {} sampled", ours.len(), sampled.len()))?;
    }
    let tiling = DiscreteNSet::zero(2, 3).unwrap().achieved_ideal().map_err(|e| e.to_string())?;
    let maximal = tiling.maximal();
    let corners = vec![lv(&[0, 0]), lv(&[0, 1]), lv(&[1, 0]), lv(&[1, 1])];
    ensure(maximal.len() == 1 && maximal[0].members == corners, || {
        format!("tiling maximal classes {maximal:?}")
    })?;
    Ok("100 instances (n ≤ 2, k ≤ 4) match; tiling corner class confirmed".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("one-dimensional characterization sweep", one_dimensional_sweep),
        ("planar obstruction and its unimodular images", planar_obstruction),
        ("constructive family from generators", constructive_family),
        ("calculus round trips", calculus_round_trips),
        ("catalog components generate the lattice", catalog_components),
        ("simple cycles have zero or primitive winding", cycle_windings),
        ("augmentation adds exactly ±x", augmentation),
        ("achieved ideal vs point sampling", ideal_sampling),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} [{detail}] ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{detail}] ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
