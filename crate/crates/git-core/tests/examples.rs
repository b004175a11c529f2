use exact_geometry::{rat_i, Rat};
use git_core::{
    classify, hm_weight, kn_candidates, kn_partition, optimal_destabilizer, unstable_witness,
    OneParameterSubgroup, Support, WeightSystem,
};

fn ws(rank: usize, weights: &[&[i64]], theta: &[i64]) -> WeightSystem {
    let w = weights
        .iter()
        .map(|row| row.iter().map(|&x| rat_i(x)).collect())
        .collect();
    let t = theta.iter().map(|&x| rat_i(x)).collect();
    WeightSystem::new(rank, w, t, None).unwrap()
}

fn sup(ws: &WeightSystem, idx: &[usize]) -> Support {
    Support::new(idx.iter().copied(), ws.num_weights()).unwrap()
}

fn lam(xs: &[i64]) -> OneParameterSubgroup {
    OneParameterSubgroup::new(xs.to_vec())
}

fn rv(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| rat_i(x)).collect()
}

#[test]
fn hm_weight_vanishes_at_zero() {
    let w = ws(1, &[&[-1], &[1]], &[0]);
    let s = sup(&w, &[1, 2]);
    assert_eq!(hm_weight(&w, &s, &lam(&[0])), rat_i(0));
}

#[test]
fn hm_weight_direct_evaluation() {
    let w = ws(1, &[&[-1], &[1]], &[0]);
    assert_eq!(hm_weight(&w, &sup(&w, &[1, 2]), &lam(&[1])), rat_i(-1));
    assert_eq!(hm_weight(&w, &sup(&w, &[1]), &lam(&[1])), rat_i(1));
}

#[test]
fn classify_symmetric_pair_is_stable() {
    let w = ws(1, &[&[-1], &[1]], &[0]);
    let c = classify(&w, &sup(&w, &[1, 2]));
    assert!(c.semistable && c.polystable && c.stable);
}

#[test]
fn classify_point_hull_polystable_not_stable() {
    let w = ws(1, &[&[3]], &[3]);
    let c = classify(&w, &sup(&w, &[1]));
    assert!(c.semistable && c.polystable);
    assert!(!c.stable); // hull dimension 0 < rank 1
}

#[test]
fn classify_one_sided_support_unstable() {
    let w = ws(1, &[&[-1], &[1]], &[0]);
    let c = classify(&w, &sup(&w, &[1]));
    assert!(!c.semistable);
    // witnessed by hm_weight(S, (1)) = 1 > 0
    assert_eq!(hm_weight(&w, &sup(&w, &[1]), &lam(&[1])), rat_i(1));
}

#[test]
fn destabilizer_single_negative_weight() {
    let w = ws(1, &[&[-1]], &[0]);
    assert_eq!(optimal_destabilizer(&w, &sup(&w, &[1])), Some(rv(&[1])));
}

#[test]
fn destabilizer_absent_when_semistable() {
    let w = ws(1, &[&[-1], &[1]], &[0]);
    assert_eq!(optimal_destabilizer(&w, &sup(&w, &[1, 2])), None);
    assert!(unstable_witness(&w, &sup(&w, &[1, 2])).is_none());
}

#[test]
fn destabilizer_diagonal_pair() {
    // closest point of {(-2,0),(0,-2)} is (-1,-1); hm_weight there is
    // (lambda, lambda) = 2
    let w = ws(2, &[&[2, 0], &[0, 2]], &[0, 0]);
    let s = sup(&w, &[1, 2]);
    let l = optimal_destabilizer(&w, &s).unwrap();
    assert_eq!(l, rv(&[-1, -1]));
    assert_eq!(
        git_core::hm_weight_rational(&w, &s, &l),
        w.metric().norm_sq(&l)
    );
}

#[test]
fn kn_candidates_symmetric_pair() {
    let w = ws(1, &[&[-1], &[1]], &[0]);
    let c = kn_candidates(&w).unwrap();
    assert_eq!(c, vec![rv(&[-1]), rv(&[1])]);
}

#[test]
fn kn_candidates_empty_when_everything_semistable() {
    let w = ws(1, &[&[0], &[0]], &[0]);
    assert!(kn_candidates(&w).unwrap().is_empty());
}

#[test]
fn kn_candidates_one_sided_weights() {
    let w = ws(1, &[&[1], &[2]], &[0]);
    let c = kn_candidates(&w).unwrap();
    assert_eq!(c, vec![rv(&[-2]), rv(&[-1])]);
}

#[test]
fn kn_partition_symmetric_pair() {
    let w = ws(1, &[&[-1], &[1]], &[0]);
    let strata = kn_partition(&w).unwrap();
    assert_eq!(strata.len(), 2);
    let find = |l: &[Rat]| strata.iter().find(|st| st.lambda == l).unwrap();
    let plus = find(&rv(&[1]));
    assert_eq!(plus.members.len(), 1);
    assert_eq!(plus.members[0].support.to_vec(), vec![1]);
    let minus = find(&rv(&[-1]));
    assert_eq!(minus.members[0].support.to_vec(), vec![2]);
}

#[test]
fn kn_partition_empty_for_semistable_system() {
    let w = ws(1, &[&[0]], &[0]);
    assert!(kn_partition(&w).unwrap().is_empty());
}

#[test]
fn kn_partition_one_sided_weights() {
    let w = ws(1, &[&[1], &[2]], &[0]);
    let strata = kn_partition(&w).unwrap();
    let find = |l: &[Rat]| strata.iter().find(|st| st.lambda == l).unwrap();
    let s1 = find(&rv(&[-1]));
    let mut members: Vec<Vec<usize>> =
        s1.members.iter().map(|m| m.support.to_vec()).collect();
    members.sort();
    assert_eq!(members, vec![vec![1], vec![1, 2]]);
    for m in &s1.members {
        assert_eq!(m.limit_support, vec![1]);
    }
    let s2 = find(&rv(&[-2]));
    assert_eq!(s2.members.len(), 1);
    assert_eq!(s2.members[0].support.to_vec(), vec![2]);
    assert_eq!(s2.members[0].limit_support, vec![2]);
}

#[test]
fn instance_json_round_trip() {
    let json = r#"{"rank":1,"weights":[[-1],[1]],"theta":[0],"support":[1,2]}"#;
    let file: git_core::InstanceFile = serde_json::from_str(json).unwrap();
    let (w, s) = file.into_parts().unwrap();
    let s = s.unwrap();
    assert!(classify(&w, &s).stable);
    let back = git_core::InstanceFile::from_weight_system(&w, Some(&s));
    let v: serde_json::Value = serde_json::to_value(&back).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"rank":1,"weights":[[-1],[1]],"theta":[0],"support":[1,2]})
    );
}
