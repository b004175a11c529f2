//! Hilbert-Mumford classification of projective-space points under a torus
//! action with shifted linearization, and the Kirwan-Ness stratification.
//!
//! Stability of a point depends only on its support, so supports are the
//! unit of classification throughout; coordinates are never manipulated.
//! For a torus there is no Weyl symmetry and the parabolic attached to a
//! destabilizing one-parameter subgroup is the whole group, so strata are
//! indexed by the rational coweights lambda alone.

mod types;

use exact_geometry::rational::common_denominator;
use exact_geometry::{
    affine_dimension, closest_point, hull_contains, hull_position, vecops, GeomError,
    HullCertificate, Position, Rat,
};
use num::{Signed, ToPrimitive};
use std::collections::BTreeMap;

pub use types::{
    InstanceFile, OneParameterSubgroup, StabilityClass, Support, WeightSystem, MAX_WEIGHTS,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GitError {
    #[error("invalid instance: {0}")]
    BadInstance(String),
    #[error("too many weights ({0}); the subset loop is capped at {MAX_WEIGHTS}")]
    TooManyWeights(usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// mu(x, lambda) = min over i in S of (theta - mu_i) . lambda.
/// Positively homogeneous of degree 1 in lambda.
pub fn hm_weight(ws: &WeightSystem, s: &Support, lam: &OneParameterSubgroup) -> Rat {
    hm_weight_rational(ws, s, &lam.as_rats())
}

/// Same weight evaluated at a rational coweight.
pub fn hm_weight_rational(ws: &WeightSystem, s: &Support, lam: &[Rat]) -> Rat {
    assert_eq!(lam.len(), ws.rank());
    let tl = vecops::dot(ws.theta(), lam);
    s.iter()
        .map(|i| &tl - vecops::dot(ws.weight(i), lam))
        .min()
        .expect("support is nonempty")
}

/// Hull criterion: semistable iff theta lies in the hull of the support
/// weights, polystable iff in its relative interior, stable iff additionally
/// the affine hull has full dimension.
pub fn classify(ws: &WeightSystem, s: &Support) -> StabilityClass {
    let pts = ws.support_weights(s);
    let (pos, dim) = hull_position(&pts, ws.theta()).expect("instance dimensions validated");
    let semistable = pos != Position::Outside;
    let polystable = pos == Position::RelativeInterior;
    StabilityClass {
        semistable,
        polystable,
        stable: polystable && dim == ws.rank(),
    }
}

/// The two dimension readings of the stability criterion: the affine hull of
/// the support weights versus their linear span. The classifier follows the
/// affine reading; a disagreement is reported so callers can flag it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct DimensionDiagnostics {
    pub affine_hull_dimension: usize,
    pub linear_span_dimension: usize,
    pub readings_disagree: bool,
}

pub fn dimension_diagnostics(ws: &WeightSystem, s: &Support) -> DimensionDiagnostics {
    let pts = ws.support_weights(s);
    let affine = affine_dimension(&pts);
    let span = vecops::rank(&pts);
    DimensionDiagnostics {
        affine_hull_dimension: affine,
        linear_span_dimension: span,
        readings_disagree: (affine == ws.rank()) != (span == ws.rank()),
    }
}

/// The optimal destabilizing coweight, absent exactly when S is semistable.
///
/// The shifted weights theta - mu_i are covectors, so the closest point c to
/// the origin is taken in the dual pairing; lambda is its preimage under the
/// metric, which makes hm_weight(S, lambda) = (lambda, lambda) exact.
pub fn optimal_destabilizer(ws: &WeightSystem, s: &Support) -> Option<Vec<Rat>> {
    if classify(ws, s).semistable {
        return None;
    }
    let shifted: Vec<Vec<Rat>> = s
        .iter()
        .map(|i| vecops::sub(ws.theta(), ws.weight(i)))
        .collect();
    let dual = ws.metric().inverse();
    let c = closest_point(&shifted, &dual).expect("instance dimensions validated");
    let lambda = ws.metric().unapply(&c);
    debug_assert!(!vecops::is_zero(&lambda));
    debug_assert_eq!(
        hm_weight_rational(ws, s, &lambda),
        ws.metric().norm_sq(&lambda)
    );
    Some(lambda)
}

/// An integer destabilizing coweight scaled from the separating certificate,
/// together with its sup-norm. Oracles use the norm as a lattice radius that
/// provably contains a witness. Absent when S is semistable.
pub fn unstable_witness(ws: &WeightSystem, s: &Support) -> Option<(OneParameterSubgroup, i64)> {
    let pts = ws.support_weights(s);
    let cert = hull_contains(&pts, ws.theta()).expect("instance dimensions validated");
    let HullCertificate::Outside { covector, .. } = cert else {
        return None;
    };
    // clear denominators: hm_weight is homogeneous, positivity survives
    let d = common_denominator(&covector);
    let lam: Vec<i64> = covector
        .iter()
        .map(|c| {
            (c * Rat::from_integer(d.clone()))
                .to_integer()
                .to_i64()
                .expect("desk-scale certificate fits i64")
        })
        .collect();
    let radius = lam.iter().map(|x| x.abs()).max().unwrap_or(0).max(1);
    let lam = OneParameterSubgroup::new(lam);
    debug_assert!(hm_weight(ws, s, &lam).is_positive());
    Some((lam, radius))
}

/// C(X): the distinct optimal destabilizers over all unstable supports.
pub fn kn_candidates(ws: &WeightSystem) -> Result<Vec<Vec<Rat>>, GitError> {
    let mut out: Vec<Vec<Rat>> = Vec::new();
    for s in ws.all_supports()? {
        if let Some(lam) = optimal_destabilizer(ws, &s) {
            if !out.contains(&lam) {
                out.push(lam);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// One Kirwan-Ness stratum: the index coweight, the fixed-locus filter, and
/// the member supports with their limit supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KNStratum {
    /// Nonzero rational coweight indexing the stratum.
    pub lambda: Vec<Rat>,
    /// Indices whose weight attains the critical value
    /// theta . lambda - (lambda, lambda); the limit points live here.
    pub fixed_support_filter: Vec<usize>,
    pub members: Vec<StratumMember>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumMember {
    pub support: Support,
    /// Surviving coordinates of lim z^lambda x: the argmax of
    /// mu_i . lambda over the support.
    pub limit_support: Vec<usize>,
}

/// Fibers of optimal_destabilizer over the unstable supports.
pub fn kn_partition(ws: &WeightSystem) -> Result<Vec<KNStratum>, GitError> {
    let mut by_lambda: BTreeMap<Vec<Rat>, Vec<StratumMember>> = BTreeMap::new();
    for s in ws.all_supports()? {
        let Some(lambda) = optimal_destabilizer(ws, &s) else {
            continue;
        };
        let limit_support = argmax_pairing(ws, &s, &lambda);
        by_lambda
            .entry(lambda)
            .or_default()
            .push(StratumMember {
                support: s,
                limit_support,
            });
    }
    let mut out = Vec::with_capacity(by_lambda.len());
    for (lambda, members) in by_lambda {
        let critical = vecops::dot(ws.theta(), &lambda) - ws.metric().norm_sq(&lambda);
        let fixed_support_filter: Vec<usize> = (1..=ws.num_weights())
            .filter(|&i| vecops::dot(ws.weight(i), &lambda) == critical)
            .collect();
        debug_assert!(members
            .iter()
            .all(|m| m.limit_support.iter().all(|i| fixed_support_filter.contains(i))));
        out.push(KNStratum {
            lambda,
            fixed_support_filter,
            members,
        });
    }
    Ok(out)
}

fn argmax_pairing(ws: &WeightSystem, s: &Support, lambda: &[Rat]) -> Vec<usize> {
    let vals: Vec<(usize, Rat)> = s
        .iter()
        .map(|i| (i, vecops::dot(ws.weight(i), lambda)))
        .collect();
    let max = vals.iter().map(|(_, v)| v).max().cloned().unwrap();
    vals.into_iter().filter(|(_, v)| *v == max).map(|(i, _)| i).collect()
}
