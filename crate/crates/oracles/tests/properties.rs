use exact_geometry::{rat, rat_i, Rat};
use git_core::{Support, WeightSystem};
use mundet_core::GaugedMapDatum;
use oracles::{brute_force_classify, brute_force_mundet, scan_walls, OracleBudget};
use proptest::prelude::*;

fn arb_instance() -> impl Strategy<Value = (WeightSystem, Support)> {
    (1usize..=2, 2usize..=4).prop_flat_map(|(rank, m)| {
        (
            proptest::collection::vec(
                proptest::collection::vec(-3i64..=3, rank),
                m,
            ),
            proptest::collection::vec(-3i64..=3, rank),
            proptest::collection::vec(any::<bool>(), m),
        )
            .prop_map(move |(mus, theta, mask)| {
                let ws = WeightSystem::new(
                    rank,
                    mus.iter()
                        .map(|w| w.iter().map(|&x| rat_i(x)).collect())
                        .collect(),
                    theta.iter().map(|&x| rat_i(x)).collect(),
                    None,
                )
                .unwrap();
                let mut idx: Vec<usize> = (1..=m).filter(|&i| mask[i - 1]).collect();
                if idx.is_empty() {
                    idx.push(1);
                }
                let s = Support::new(idx, m).unwrap();
                (ws, s)
            })
    })
}

fn budget(radius: i64) -> OracleBudget {
    OracleBudget::new(radius, vec![rat_i(1)], 4).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // the lattice scan reproduces the hull verdict once its box is at
    // least the certificate radius
    #[test]
    fn classify_oracle_matches_hull_criterion((ws, s) in arb_instance()) {
        let analytic = git_core::classify(&ws, &s).semistable;
        let radius = git_core::unstable_witness(&ws, &s).map_or(2, |(_, r)| r);
        let verdict = brute_force_classify(&ws, &s, &budget(radius));
        prop_assert_eq!(verdict.semistable, analytic);
        if let Some(w) = verdict.witness {
            prop_assert!(num::Signed::is_positive(&git_core::hm_weight(&ws, &s, &w)));
        }
    }

    // the combined weight scan reproduces the shifted hull verdict; the
    // certificate radius comes from the weight system with theta moved to
    // the shifted point, whose plain weight is the combined weight over k
    #[test]
    fn mundet_oracle_matches_shifted_hull((ws, s) in arb_instance(),
                                          dp in proptest::collection::vec(-2i64..=2, 2),
                                          k in (1i64..=3, 1i64..=3)) {
        let dp = dp[..ws.rank()].to_vec();
        let k = rat(k.0, k.1);
        let d = GaugedMapDatum::new(ws.clone(), dp, 0, s.clone()).unwrap();
        let shift: Vec<Rat> = ws
            .theta()
            .iter()
            .zip(d.dp_vee())
            .map(|(t, v)| t - v / &k)
            .collect();
        let shifted =
            WeightSystem::new(ws.rank(), ws.weights().to_vec(), shift, None).unwrap();
        let radius = git_core::unstable_witness(&shifted, &s).map_or(2, |(_, r)| r);
        let verdict = brute_force_mundet(&d, &k, &budget(radius));
        let analytic = mundet_core::mundet_classify(&d, &k).unwrap().semistable;
        prop_assert_eq!(verdict.semistable, analytic);
        if let Some(w) = verdict.witness {
            let weight = mundet_core::mundet_weight(&d, &k, &w).unwrap();
            prop_assert!(num::Signed::is_positive(&weight));
        }
    }

    // grid membership agrees with the classifier pointwise, and every
    // bracketed change interval contains an exact wall
    #[test]
    fn wall_scan_agrees_with_exact_walls((ws, s) in arb_instance(),
                                         dp in proptest::collection::vec(-2i64..=2, 2)) {
        let dp = dp[..ws.rank()].to_vec();
        let grid: Vec<Rat> = (1..=12).map(|i| rat(i, 4)).collect();
        let brackets = scan_walls(&ws, &s, &dp, &grid);
        // rebuilding the brackets from the classifier checks the oracle's
        // independent membership test pointwise on the grid
        let d = GaugedMapDatum::new(ws.clone(), dp.clone(), 0, s.clone()).unwrap();
        let verdicts: Vec<bool> = grid
            .iter()
            .map(|k| mundet_core::mundet_classify(&d, k).unwrap().semistable)
            .collect();
        let expected: Vec<(Rat, Rat)> = grid
            .windows(2)
            .zip(verdicts.windows(2))
            .filter(|(_, v)| v[0] != v[1])
            .map(|(w, _)| (w[0].clone(), w[1].clone()))
            .collect();
        prop_assert_eq!(&brackets, &expected);
        let walls = mundet_core::walls(&ws, &s, &dp).unwrap().walls;
        for (lo, hi) in &brackets {
            prop_assert!(
                walls.iter().any(|w| lo <= w && w <= hi),
                "bracket ({}, {}) without a wall",
                lo,
                hi
            );
        }
    }
}
