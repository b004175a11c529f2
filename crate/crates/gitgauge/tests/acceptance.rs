//! End-to-end acceptance checks. Each test prints one verdict line so the
//! suite doubles as a release checklist; corpora are seeded and
//! reproducible.

use exact_geometry::{rat, rat_i, Rat};
use git_core::{Support, WeightSystem};
use mundet_core::{EnergyBudget, EnumerationMode, GaugedMapDatum};
use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use scaled_combinatorics::{Mode, RootedTree, ScalingClass, ValuationAssignment};
use std::collections::BTreeMap;

fn verdict(number: usize, name: &str, failures: Vec<String>) {
    let ok = failures.is_empty();
    println!(
        "criterion {number} ({name}): {}",
        if ok { "pass" } else { "FAIL" }
    );
    assert!(ok, "criterion {number} ({name}) failed:\n{}", failures.join("\n"));
}

fn rand_ws(rng: &mut ChaCha8Rng, max_rank: usize, max_weights: usize) -> WeightSystem {
    let rank = rng.gen_range(1..=max_rank);
    let m = rng.gen_range(2..=max_weights);
    let weights = (0..m)
        .map(|_| (0..rank).map(|_| rat_i(rng.gen_range(-3..=3))).collect())
        .collect();
    let theta = (0..rank).map(|_| rat_i(rng.gen_range(-3..=3))).collect();
    WeightSystem::new(rank, weights, theta, None).unwrap()
}

fn oracle_budget(radius: i64) -> oracles::OracleBudget {
    oracles::OracleBudget::new(radius, vec![rat_i(1)], 4).unwrap()
}

#[test]
fn criterion_1_hull_criterion_matches_lattice_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let instances: Vec<WeightSystem> = (0..500).map(|_| rand_ws(&mut rng, 3, 6)).collect();
    let failures: Vec<String> = instances
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, ws)| {
            let mut bad = Vec::new();
            for s in ws.all_supports().unwrap() {
                let analytic = git_core::classify(ws, &s).semistable;
                let radius = git_core::unstable_witness(ws, &s).map_or(1, |(_, r)| r);
                let scanned = oracles::brute_force_classify(ws, &s, &oracle_budget(radius));
                if scanned.semistable != analytic {
                    bad.push(format!(
                        "instance {i} support {:?}: hull {analytic}, scan {}",
                        s.to_vec(),
                        scanned.semistable
                    ));
                }
            }
            bad
        })
        .collect();
    verdict(1, "hull criterion vs certified lattice scan, 500 instances", failures);
}

#[test]
fn criterion_2_quot_dimension_is_projective_space() {
    let mut failures = Vec::new();
    for m in 1usize..=4 {
        let ws = WeightSystem::new(
            1,
            vec![vec![rat_i(1)]; m],
            vec![rat_i(1)],
            None,
        )
        .unwrap();
        for total in 0i64..=5 {
            let d = GaugedMapDatum::new(
                ws.clone(),
                vec![total],
                0,
                Support::full(m),
            )
            .unwrap();
            let got = mundet_core::quot_dimension(&d, 0).unwrap();
            let expected = m as i64 * (total + 1) - 1;
            if got != expected {
                failures.push(format!("m = {m}, degree {total}: got {got}, expected {expected}"));
            }
        }
    }
    verdict(2, "diagonal quot dimension m(d+1)-1", failures);
}

#[test]
fn criterion_3_energy_nonnegative_with_exact_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let budget = EnergyBudget::new(rat_i(10)).unwrap();
    let mut failures = Vec::new();
    let mut corpus = Vec::new();
    while corpus.len() < 10 {
        let ws = rand_ws(&mut rng, 2, 4);
        if mundet_core::enumerate_bounded(&ws, &budget, &EnumerationMode::LargeK).is_ok() {
            corpus.push(ws);
        }
    }
    for (i, ws) in corpus.iter().enumerate() {
        for mode in [EnumerationMode::LargeK, EnumerationMode::AtK(rat_i(1))] {
            let data = mundet_core::enumerate_bounded(ws, &budget, &mode).unwrap();
            for d in &data {
                let e = mundet_core::energy(d);
                if e.is_negative() || &e > budget.cap() {
                    failures.push(format!("system {i}: energy {} out of range", e));
                }
                let trivial = d.dp().iter().all(|&x| x == 0) && d.du() == 0;
                if e.is_zero() != trivial {
                    failures.push(format!(
                        "system {i}: energy zero is {}, triviality is {trivial}",
                        e.is_zero()
                    ));
                }
                // at the base power the energy dominates the bundle-degree
                // pairing term by term: e >= e - (dP, dP) >= 0
                if matches!(mode, EnumerationMode::AtK(_)) {
                    let middle = &e - d.ws().metric().norm_sq(&d.dp_rats());
                    if middle.is_negative() || e < middle {
                        failures.push(format!("system {i}: chain broken at energy {}", e));
                    }
                }
            }
        }
    }
    verdict(3, "enumerated energies in [0, E] with exact zero locus", failures);
}

#[test]
fn criterion_4_wall_scan_brackets_every_wall_once() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let mut failures = Vec::new();
    for i in 0..100 {
        let ws = rand_ws(&mut rng, 2, 4);
        let m = ws.num_weights();
        let mask: Vec<usize> = (1..=m).filter(|_| rng.gen_bool(0.6)).collect();
        let s = Support::new(if mask.is_empty() { vec![1] } else { mask }, m).unwrap();
        let dp: Vec<i64> = (0..ws.rank()).map(|_| rng.gen_range(-2..=2)).collect();
        let walls = mundet_core::walls(&ws, &s, &dp).unwrap().walls;
        // a grid with the walls and strict separators between them makes
        // every change interval carry exactly one wall
        let mut grid: Vec<Rat> = Vec::new();
        if walls.is_empty() {
            grid.extend([rat(1, 2), rat_i(1), rat_i(2)]);
        } else {
            grid.push(walls.first().unwrap() / rat_i(2));
            for pair in walls.windows(2) {
                grid.push((&pair[0] + &pair[1]) / rat_i(2));
            }
            grid.push(walls.last().unwrap() * rat_i(2));
            grid.extend(walls.iter().cloned());
            grid.sort();
            grid.dedup();
        }
        let brackets = oracles::scan_walls(&ws, &s, &dp, &grid);
        for (lo, hi) in &brackets {
            let inside = walls.iter().filter(|w| &lo <= w && w <= &hi).count();
            if inside != 1 {
                failures.push(format!(
                    "instance {i}: bracket [{}, {}] holds {inside} walls",
                    lo, hi
                ));
            }
        }
        for w in &walls {
            if !brackets.iter().any(|(lo, hi)| lo <= w && w <= hi) {
                failures.push(format!("instance {i}: wall {} missed by every bracket", w));
            }
        }
    }
    verdict(4, "wall finiteness and grid bracketing, 100 instances", failures);
}

#[test]
fn criterion_5_projective_enumeration_counts_and_dimensions() {
    let mut failures = Vec::new();
    for (n, count) in [(0usize, 1usize), (1, 2), (2, 6)] {
        let got = scaled_combinatorics::enumerate_types(n, Mode::Projective).len();
        if got != count {
            failures.push(format!("n = {n}: {got} types, expected {count}"));
        }
    }
    let mut dims: Vec<i64> = scaled_combinatorics::enumerate_types(2, Mode::Projective)
        .iter()
        .map(scaled_combinatorics::stratum_dimension)
        .collect();
    dims.sort_unstable();
    if dims != vec![1, 1, 2, 2, 2, 3] {
        failures.push(format!("n = 2 dimension multiset {dims:?}"));
    }
    verdict(5, "stable type counts 1, 2, 6 with n = 2 dimensions", failures);
}

#[test]
fn criterion_6_dimension_plus_codimension_is_constant() {
    let mut failures = Vec::new();
    for mode in [Mode::Projective, Mode::Affine] {
        for n in 0usize..=5 {
            let expected = match mode {
                Mode::Projective => n as i64 + 1,
                Mode::Affine => n as i64 - 1,
            };
            for ty in scaled_combinatorics::enumerate_types(n, mode) {
                let total = scaled_combinatorics::stratum_dimension(&ty)
                    + scaled_combinatorics::stratum_codimension(&ty);
                if total != expected {
                    failures.push(format!(
                        "{mode:?} n = {n}: dim + codim = {total}, expected {expected} ({})",
                        scaled_combinatorics::canonical_form(&ty)
                    ));
                }
            }
        }
    }
    verdict(6, "dimension plus codimension invariant, n up to 5", failures);
}

#[test]
fn criterion_7_tropical_limits_are_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let mut failures = Vec::new();
    for i in 0..1000 {
        let n = rng.gen_range(1..=8);
        let parent: Vec<Option<usize>> = (0..n)
            .map(|v| (v > 0).then(|| rng.gen_range(0..v)))
            .collect();
        let tree = RootedTree::new(parent).unwrap();
        let edges: BTreeMap<usize, Rat> = (1..n)
            .map(|v| (v, rat(rng.gen_range(1..=4), rng.gen_range(1..=3))))
            .collect();
        let delta = rat(rng.gen_range(-8..=8), rng.gen_range(1..=3));
        let val = ValuationAssignment::new(edges, delta).unwrap();
        let classes = scaled_combinatorics::tropical_limit(&tree, &val).unwrap();
        for v in 0..n {
            if let Some(p) = tree.parent(v) {
                if classes[v] > classes[p] {
                    failures.push(format!("sample {i}: class rises at vertex {v}"));
                }
            }
            if tree.children(v).is_empty() {
                let transitions = tree
                    .root_path(v)
                    .into_iter()
                    .filter(|&u| classes[u] == ScalingClass::Transition)
                    .count();
                if transitions > 1 {
                    failures.push(format!("sample {i}: {transitions} transitions on one path"));
                }
            }
        }
    }
    verdict(7, "tropical limit monotonicity, 1000 samples", failures);
}

#[test]
fn criterion_8_kn_partition_covers_and_optimizes() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let mut failures = Vec::new();
    for i in 0..50 {
        let ws = rand_ws(&mut rng, 2, 4);
        let strata = git_core::kn_partition(&ws).unwrap();
        let candidates = git_core::kn_candidates(&ws).unwrap();
        let mut index: Vec<Vec<Rat>> = strata.iter().map(|st| st.lambda.clone()).collect();
        index.sort();
        if index != candidates {
            failures.push(format!("system {i}: stratum index set differs from candidates"));
        }
        let mut assigned: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for st in &strata {
            for member in &st.members {
                *assigned.entry(member.support.to_vec()).or_default() += 1;
            }
        }
        for s in ws.all_supports().unwrap() {
            let unstable = !git_core::classify(&ws, &s).semistable;
            let times = assigned.get(&s.to_vec()).copied().unwrap_or(0);
            if times != usize::from(unstable) {
                failures.push(format!(
                    "system {i} support {:?}: assigned {times} strata, unstable = {unstable}",
                    s.to_vec()
                ));
            }
        }
        // lambda maximizes weight over norm; squared to stay rational
        for st in &strata {
            let lam_norm = ws.metric().norm_sq(&st.lambda);
            for member in &st.members {
                let best = git_core::hm_weight_rational(&ws, &member.support, &st.lambda);
                for v in exact_geometry::lattice_box(ws.rank(), 3) {
                    let vr: Vec<Rat> = v.iter().map(|&x| rat_i(x)).collect();
                    let w = git_core::hm_weight_rational(&ws, &member.support, &vr);
                    if w.is_positive()
                        && &w * &w * &lam_norm > &best * &best * ws.metric().norm_sq(&vr)
                    {
                        failures.push(format!(
                            "system {i} support {:?}: direction {v:?} beats the stratum index",
                            member.support.to_vec()
                        ));
                    }
                }
            }
        }
    }
    verdict(8, "stratum coverage, index set and optimality, 50 systems", failures);
}

#[test]
fn criterion_9_tree_oracle_diff_is_empty() {
    let mut failures = Vec::new();
    for mode in [Mode::Projective, Mode::Affine] {
        for n in 0usize..=3 {
            let report = oracles::exhaustive_tree_check(n, mode, 2 * n + 2).unwrap();
            if !report.agrees() {
                failures.push(format!(
                    "{mode:?} n = {n}: missing {:?}, extra {:?}",
                    report.missing, report.extra
                ));
            }
        }
    }
    verdict(9, "exhaustive tree regeneration diff empty, n up to 3", failures);
}
