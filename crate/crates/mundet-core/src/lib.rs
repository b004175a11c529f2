//! Stability calculus for torus-gauged maps to a projectivized
//! representation over a smooth curve: the combined bundle-plus-section
//! weight, the hull criterion at polarization power k, energy, degree
//! feasibility, wall values in k, certified bounded enumeration under an
//! energy cap, and the quot-compactification dimension count.
//!
//! Conventions. d(P)^vee is the metric image of the bundle degree, so the
//! bundle term of the weight is -(d(P), lambda) in the metric; this sign
//! makes energy nonnegative on the semistable locus, since semistability at
//! power k then places theta - d(P)^vee / k in the support hull and the
//! convex coefficients average the component line-bundle degrees. Pairings
//! of a covector with a vector (theta with d(P), mu_i with d(P) via
//! d(P)^vee) reduce to the natural dot product and are metric-free. Energy
//! is defined at the base linearization k = 1 only; no k-scaled energy is
//! exposed.

mod enumerate;
mod types;

use exact_geometry::{
    hull_position, ray_boundary_crossings, vecops, GeomError, Position, Rat,
};
use git_core::{GitError, OneParameterSubgroup, Support, WeightSystem};
use num::{One, Signed, Zero};

pub use enumerate::{enumerate_bounded, EnumerationMode};
pub use types::{DatumFile, EnergyBudget, GaugedMapDatum, WallSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MundetError {
    #[error("invalid instance: {0}")]
    BadInstance(String),
    #[error("polarization power k must be positive")]
    NonpositiveK,
    #[error("unbounded family: a strictly semistable support leaves the constraint polytope unbounded")]
    UnboundedFamily,
    #[error("Riemann-Roch regime violated: index {index} has degree {degree}, need > 2 genus - 2 = {floor}")]
    RiemannRochViolated {
        index: usize,
        degree: String,
        floor: i64,
    },
    #[error(transparent)]
    Git(#[from] GitError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// -(d(P), lambda) + k min over i in S of (theta - mu_i) . lambda.
/// At k = 1 this is the full weight of the pair (bundle, section).
pub fn mundet_weight(
    d: &GaugedMapDatum,
    k: &Rat,
    lam: &OneParameterSubgroup,
) -> Result<Rat, MundetError> {
    mundet_weight_rational(d, k, &lam.as_rats())
}

/// Same weight at a rational coweight.
pub fn mundet_weight_rational(
    d: &GaugedMapDatum,
    k: &Rat,
    lam: &[Rat],
) -> Result<Rat, MundetError> {
    if !k.is_positive() {
        return Err(MundetError::NonpositiveK);
    }
    let bundle = d.ws().metric().pairing(&d.dp_rats(), lam);
    let section = git_core::hm_weight_rational(d.ws(), d.support(), lam);
    Ok(k * section - bundle)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct MundetClass {
    pub semistable: bool,
    pub stable: bool,
}

/// Shifted hull criterion at power k: semistable iff the support hull
/// contains theta - d(P)^vee / k; stable iff that point is in the relative
/// interior and the hull has full affine dimension.
pub fn mundet_classify(d: &GaugedMapDatum, k: &Rat) -> Result<MundetClass, MundetError> {
    if !k.is_positive() {
        return Err(MundetError::NonpositiveK);
    }
    let (pos, dim) = shifted_position(d, k)?;
    Ok(MundetClass {
        semistable: pos != Position::Outside,
        stable: pos == Position::RelativeInterior && dim == d.ws().rank(),
    })
}

/// Symmetric-vanishing boundary condition at power k: the shifted point lies
/// in the relative interior of the support hull.
pub fn mundet_polystable(d: &GaugedMapDatum, k: &Rat) -> Result<bool, MundetError> {
    if !k.is_positive() {
        return Err(MundetError::NonpositiveK);
    }
    Ok(shifted_position(d, k)?.0 == Position::RelativeInterior)
}

fn shifted_position(d: &GaugedMapDatum, k: &Rat) -> Result<(Position, usize), MundetError> {
    let pts = d.ws().support_weights(d.support());
    let shift = vecops::scale(&d.dp_vee(), &k.recip());
    let q = vecops::sub(d.ws().theta(), &shift);
    Ok(hull_position(&pts, &q)?)
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LargeKVerdict {
    pub semistable: bool,
    /// Largest wall in k; verdicts are constant beyond it. 0 when no wall.
    #[serde(with = "exact_geometry::rational")]
    pub threshold: Rat,
}

/// Semistability for all sufficiently large k, by one-sided membership of
/// theta - t d(P)^vee as t = 1/k decreases to 0.
pub fn large_k_semistable(d: &GaugedMapDatum) -> Result<LargeKVerdict, MundetError> {
    let pts = d.ws().support_weights(d.support());
    let dpv = vecops::neg(&d.dp_vee());
    if vecops::is_zero(&dpv) {
        // the ray is a point; the verdict is plain semistability of S
        let semistable = git_core::classify(d.ws(), d.support()).semistable;
        return Ok(LargeKVerdict {
            semistable,
            threshold: Rat::zero(),
        });
    }
    let crossings = ray_boundary_crossings(&pts, d.ws().theta(), &dpv)?;
    // membership is constant on (0, first crossing); probe the midpoint
    let probe = match crossings.first() {
        Some(t) => t / exact_geometry::rat_i(2),
        None => Rat::one(),
    };
    let q = vecops::add(d.ws().theta(), &vecops::scale(&dpv, &probe));
    let semistable = exact_geometry::hull_contains(&pts, &q)?.is_inside();
    let threshold = match crossings.first() {
        Some(t) => t.recip(),
        None => Rat::zero(),
    };
    Ok(LargeKVerdict {
        semistable,
        threshold,
    })
}

/// (theta, d(P)) + d(u), the pairing of the map's class with the
/// linearization's first Chern class at k = 1.
pub fn energy(d: &GaugedMapDatum) -> Rat {
    vecops::dot(d.ws().theta(), &d.dp_rats()) + exact_geometry::rat_i(d.du())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeFeasibility {
    pub feasible: bool,
    /// (index, (mu_i, d(P)^vee) + d(u)) for each i in the support; each is
    /// the degree of the line bundle whose section is the i-th component.
    pub slacks: Vec<(usize, Rat)>,
}

/// Nonnegativity of every component line-bundle degree over the support.
pub fn degree_feasible(d: &GaugedMapDatum) -> DegreeFeasibility {
    let dp = d.dp_rats();
    let du = exact_geometry::rat_i(d.du());
    let slacks: Vec<(usize, Rat)> = d
        .support()
        .iter()
        .map(|i| (i, vecops::dot(d.ws().weight(i), &dp) + &du))
        .collect();
    DegreeFeasibility {
        feasible: slacks.iter().all(|(_, s)| !s.is_negative()),
        slacks,
    }
}

/// Wall values of k for a support and bundle degree: reciprocals of the ray
/// parameters where theta - t d(P)^vee meets the hull's relative boundary.
/// The semistable verdict of mundet_classify is constant strictly between
/// consecutive walls and beyond the last.
pub fn walls(ws: &WeightSystem, s: &Support, dp: &[i64]) -> Result<WallSet, MundetError> {
    let d = GaugedMapDatum::new(ws.clone(), dp.to_vec(), 0, s.clone())?;
    let pts = ws.support_weights(s);
    let dpv = vecops::neg(&d.dp_vee());
    let mut wall_values: Vec<Rat> = if vecops::is_zero(&dpv) {
        Vec::new()
    } else {
        ray_boundary_crossings(&pts, ws.theta(), &dpv)?
            .into_iter()
            .map(|t| t.recip())
            .collect()
    };
    wall_values.sort();
    // a low-dimensional hull met by the ray keeps strict semistability on a
    // whole k-interval; report it as a degeneracy, not as walls
    let mut degenerate_supports = Vec::new();
    if exact_geometry::affine_dimension(&pts) < ws.rank() {
        let met = if vecops::is_zero(&dpv) {
            git_core::classify(ws, s).semistable
        } else {
            !ray_boundary_crossings(&pts, ws.theta(), &dpv)?.is_empty()
                || exact_geometry::hull_contains(&pts, ws.theta())?.is_inside()
        };
        if met {
            degenerate_supports.push(s.clone());
        }
    }
    Ok(WallSet {
        walls: wall_values,
        degenerate_supports,
    })
}

/// Dimension of the quotient of the semistable section space: each index
/// contributes h^0 of a line bundle of degree (mu_i, d(P)^vee) + d(u), and
/// the torus rank is subtracted. Degrees must be integral and exceed
/// 2 genus - 2 so that higher cohomology vanishes.
pub fn quot_dimension(d: &GaugedMapDatum, genus: i64) -> Result<i64, MundetError> {
    assert!(genus >= 0, "genus must be nonnegative");
    let dp = d.dp_rats();
    let du = exact_geometry::rat_i(d.du());
    let floor = 2 * genus - 2;
    let mut total: i64 = 0;
    for i in 1..=d.ws().num_weights() {
        let deg = vecops::dot(d.ws().weight(i), &dp) + &du;
        if !deg.denom().is_one() {
            return Err(MundetError::BadInstance(format!(
                "line bundle degree {} at index {} is not an integer",
                exact_geometry::format_rat(&deg),
                i
            )));
        }
        let m_i = num::ToPrimitive::to_i64(&deg.to_integer()).ok_or_else(|| {
            MundetError::BadInstance("degree out of i64 range".into())
        })?;
        if m_i <= floor {
            return Err(MundetError::RiemannRochViolated {
                index: i,
                degree: m_i.to_string(),
                floor,
            });
        }
        total += (m_i - genus + 1).max(0);
    }
    Ok(total - d.ws().rank() as i64)
}
