use exact_geometry::{rat, rat_i};
use num::Signed;
use git_core::{OneParameterSubgroup, Support, WeightSystem};
use mundet_core::GaugedMapDatum;
use oracles::{
    brute_force_classify, brute_force_mundet, exhaustive_tree_check, scan_walls, OracleBudget,
    OracleError,
};
use scaled_combinatorics::Mode;

fn ws_1d(mus: &[i64], theta: i64) -> WeightSystem {
    WeightSystem::new(
        1,
        mus.iter().map(|&m| vec![rat_i(m)]).collect(),
        vec![rat_i(theta)],
        None,
    )
    .unwrap()
}

fn budget(radius: i64) -> OracleBudget {
    OracleBudget::new(radius, vec![rat_i(1)], 4).unwrap()
}

#[test]
fn budget_rejects_bad_parameters() {
    assert!(OracleBudget::new(0, vec![rat_i(1)], 4).is_err());
    assert!(OracleBudget::new(1, vec![rat_i(0)], 4).is_err());
    assert!(OracleBudget::new(1, vec![rat_i(2), rat_i(1)], 4).is_err());
    assert!(OracleBudget::new(1, vec![rat_i(1)], 0).is_err());
}

#[test]
fn classify_scan_balanced_pair_is_semistable() {
    let ws = ws_1d(&[-1, 1], 0);
    let s = Support::new([1, 2], 2).unwrap();
    let v = brute_force_classify(&ws, &s, &budget(6));
    assert!(v.semistable);
    assert!(v.witness.is_none());
}

#[test]
fn classify_scan_singleton_finds_witness() {
    let ws = ws_1d(&[-1, 1], 0);
    let s = Support::new([1], 2).unwrap();
    let v = brute_force_classify(&ws, &s, &budget(1));
    assert!(!v.semistable);
    assert_eq!(v.witness, Some(OneParameterSubgroup::new(vec![1])));
}

#[test]
fn classify_scan_degenerate_weights_all_semistable() {
    // every weight equals theta, so every shifted weight vanishes
    let ws = ws_1d(&[2, 2, 2], 2);
    for s in ws.all_supports().unwrap() {
        assert!(brute_force_classify(&ws, &s, &budget(5)).semistable);
    }
}

#[test]
fn classify_scan_agrees_with_certified_radius() {
    let ws = ws_1d(&[-2, -1, 1], 0);
    for s in ws.all_supports().unwrap() {
        let analytic = git_core::classify(&ws, &s).semistable;
        let radius = match git_core::unstable_witness(&ws, &s) {
            Some((_, r)) => r,
            None => 1,
        };
        let v = brute_force_classify(&ws, &s, &budget(radius));
        assert_eq!(v.semistable, analytic);
    }
}

#[test]
fn mundet_scan_unit_power_is_semistable() {
    let ws = ws_1d(&[-1, 1], 0);
    let s = Support::new([1, 2], 2).unwrap();
    let d = GaugedMapDatum::new(ws, vec![1], 0, s).unwrap();
    let v = brute_force_mundet(&d, &rat_i(1), &budget(4));
    assert!(v.semistable);
}

#[test]
fn mundet_scan_half_power_finds_witness() {
    let ws = ws_1d(&[-1, 1], 0);
    let s = Support::new([1, 2], 2).unwrap();
    let d = GaugedMapDatum::new(ws, vec![1], 0, s).unwrap();
    let v = brute_force_mundet(&d, &rat(1, 2), &budget(4));
    assert!(!v.semistable);
    // first destabilizer in scan order; the mirrored unit coweight also
    // destabilizes with weight 1/2
    let w = v.witness.unwrap();
    assert_eq!(w, OneParameterSubgroup::new(vec![-4]));
    assert!(mundet_core::mundet_weight(&d, &rat(1, 2), &w)
        .unwrap()
        .is_positive());
    assert_eq!(
        mundet_core::mundet_weight(&d, &rat(1, 2), &OneParameterSubgroup::new(vec![-1])).unwrap(),
        rat(1, 2)
    );
}

#[test]
fn mundet_scan_zero_degree_matches_plain_stability() {
    let ws = ws_1d(&[-1, 1], 0);
    let s = Support::new([1, 2], 2).unwrap();
    let d = GaugedMapDatum::new(ws, vec![0], 0, s).unwrap();
    for k in [rat(1, 2), rat_i(1), rat_i(2)] {
        assert!(brute_force_mundet(&d, &k, &budget(4)).semistable);
    }
}

#[test]
fn walls_scan_brackets_the_single_wall() {
    let ws = ws_1d(&[-1, 1], 0);
    let s = Support::new([1, 2], 2).unwrap();
    let grid = vec![rat(1, 4), rat(1, 2), rat(3, 4), rat_i(1), rat(3, 2), rat_i(2)];
    let brackets = scan_walls(&ws, &s, &[1], &grid);
    // the wall k = 1 is itself a grid point and membership at the wall
    // counts as semistable, so the change sits between 3/4 and 1
    assert_eq!(brackets, vec![(rat(3, 4), rat_i(1))]);
    let exact = mundet_core::walls(&ws, &s, &[1]).unwrap().walls;
    assert_eq!(exact, vec![rat_i(1)]);
    assert!(brackets[0].0 <= exact[0] && exact[0] <= brackets[0].1);
}

#[test]
fn walls_scan_zero_degree_sees_no_change() {
    let ws = ws_1d(&[-1, 1], 0);
    let s = Support::new([1, 2], 2).unwrap();
    let grid = vec![rat(1, 4), rat(1, 2), rat_i(1), rat_i(2)];
    assert!(scan_walls(&ws, &s, &[0], &grid).is_empty());
}

#[test]
fn walls_scan_interior_shift_has_one_crossing() {
    // theta is interior, so the shifted point leaves the hull [-2, 1]
    // exactly once, through the endpoint -2 at k = 1/2
    let ws = ws_1d(&[-2, -1, 1], 0);
    let s = Support::new([1, 2, 3], 3).unwrap();
    let grid = vec![
        rat(1, 4),
        rat(3, 8),
        rat(1, 2),
        rat(3, 4),
        rat_i(1),
        rat(3, 2),
        rat_i(2),
        rat_i(3),
    ];
    let brackets = scan_walls(&ws, &s, &[1], &grid);
    assert_eq!(brackets, vec![(rat(3, 8), rat(1, 2))]);
    let exact = mundet_core::walls(&ws, &s, &[1]).unwrap().walls;
    assert_eq!(exact, vec![rat(1, 2)]);
}

#[test]
fn walls_scan_two_brackets_for_two_walls() {
    // theta outside the hull [1, 2]: semistable exactly for k in [1/2, 1]
    let ws = ws_1d(&[1, 2], 0);
    let s = Support::new([1, 2], 2).unwrap();
    let grid = vec![
        rat(1, 4),
        rat(3, 8),
        rat(1, 2),
        rat(3, 4),
        rat_i(1),
        rat(3, 2),
        rat_i(2),
    ];
    let brackets = scan_walls(&ws, &s, &[-1], &grid);
    assert_eq!(
        brackets,
        vec![(rat(3, 8), rat(1, 2)), (rat_i(1), rat(3, 2))]
    );
    let exact = mundet_core::walls(&ws, &s, &[-1]).unwrap().walls;
    assert_eq!(exact, vec![rat(1, 2), rat_i(1)]);
    for (w, b) in exact.iter().zip(&brackets) {
        assert!(&b.0 <= w && w <= &b.1);
        assert!(w.is_positive());
    }
}

#[test]
fn tree_check_projective_counts() {
    for (n, count) in [(0usize, 1usize), (1, 2), (2, 6)] {
        let report = exhaustive_tree_check(n, Mode::Projective, 2 * n + 2).unwrap();
        assert!(report.agrees(), "n = {n}: {report:?}");
        assert_eq!(report.oracle_count, count);
        assert_eq!(report.enumerated_count, count);
    }
}

#[test]
fn tree_check_affine_counts() {
    for (n, count) in [(0usize, 0usize), (1, 1), (2, 3)] {
        let report = exhaustive_tree_check(n, Mode::Affine, 2 * n + 2).unwrap();
        assert!(report.agrees(), "n = {n}: {report:?}");
        assert_eq!(report.oracle_count, count);
    }
}

#[test]
fn tree_check_three_markings_agree() {
    let report = exhaustive_tree_check(3, Mode::Projective, 8).unwrap();
    assert!(report.agrees(), "{report:?}");
    assert_eq!(report.oracle_count, report.enumerated_count);
}

#[test]
fn tree_check_detects_tight_cap() {
    // a two-transition type uses three vertices, exactly the cap
    assert_eq!(
        exhaustive_tree_check(2, Mode::Projective, 3),
        Err(OracleError::CapTooSmall(3))
    );
}
