//! Certified bounded enumeration of gauged-map data under an energy cap.
//!
//! For each support the admissible (dP, du) satisfy linear constraints: the
//! energy band 0 <= (theta, dP) + du <= E, the per-index degree slacks
//! (mu_i, dP^vee) + du >= 0, and in at-k mode the hull condition on
//! theta - dP^vee / k written with explicit convex coefficients. Maximizing
//! each +-dP_j over that polytope by exact LP certifies an integer search
//! box a priori, so the scan below is provably complete. An unbounded
//! polytope for a support that is semistable but not stable means the
//! family really is infinite, and the call errors instead of truncating.

use exact_geometry::{lp, rat_i, vecops, LpOutcome, Rat};
use git_core::{Support, WeightSystem};
use itertools::Itertools;
use num::{One, Signed, ToPrimitive, Zero};

use crate::{energy, GaugedMapDatum, EnergyBudget, MundetError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Semistability tested at a fixed polarization power.
    AtK(Rat),
    /// Semistability for all sufficiently large powers.
    LargeK,
}

pub fn enumerate_bounded(
    ws: &WeightSystem,
    budget: &EnergyBudget,
    mode: &EnumerationMode,
) -> Result<Vec<GaugedMapDatum>, MundetError> {
    if let EnumerationMode::AtK(k) = mode {
        if !k.is_positive() {
            return Err(MundetError::NonpositiveK);
        }
    }
    let mut out: Vec<GaugedMapDatum> = Vec::new();
    for s in ws.all_supports().map_err(MundetError::from)? {
        if matches!(mode, EnumerationMode::LargeK) {
            // theta in the support hull is necessary in the large-k limit
            if !git_core::classify(ws, &s).semistable {
                continue;
            }
        }
        let Some(boxes) = certify_box(ws, &s, budget, mode)? else {
            continue; // empty polytope
        };
        scan_box(ws, &s, budget, mode, &boxes, &mut out)?;
    }
    out.sort_by_key(|d| (d.support().to_vec(), d.dp().to_vec(), d.du()));
    Ok(out)
}

// Integer bounds [lo, hi] per dP coordinate, or None when infeasible.
fn certify_box(
    ws: &WeightSystem,
    s: &Support,
    budget: &EnergyBudget,
    mode: &EnumerationMode,
) -> Result<Option<Vec<(i64, i64)>>, MundetError> {
    let r = ws.rank();
    let (nv, cons) = polytope(ws, s, budget, mode);
    let mut boxes = Vec::with_capacity(r);
    for j in 0..r {
        let mut obj = vec![Rat::zero(); nv];
        obj[j] = Rat::one();
        let hi = match lp::solve(nv, &cons, &obj, lp::Sense::Maximize) {
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => return Err(MundetError::UnboundedFamily),
            LpOutcome::Optimal { value, .. } => value,
        };
        let lo = match lp::solve(nv, &cons, &obj, lp::Sense::Minimize) {
            LpOutcome::Infeasible => unreachable!("feasibility already established"),
            LpOutcome::Unbounded => return Err(MundetError::UnboundedFamily),
            LpOutcome::Optimal { value, .. } => value,
        };
        let lo_i = lo.ceil().to_integer().to_i64().ok_or_else(overflow)?;
        let hi_i = hi.floor().to_integer().to_i64().ok_or_else(overflow)?;
        if lo_i > hi_i {
            return Ok(None);
        }
        boxes.push((lo_i, hi_i));
    }
    Ok(Some(boxes))
}

fn overflow() -> MundetError {
    MundetError::BadInstance("certified box exceeds i64 range".into())
}

// Variables: dP_0..dP_{r-1}, du, then in at-k mode the hull coefficients.
fn polytope(
    ws: &WeightSystem,
    s: &Support,
    budget: &EnergyBudget,
    mode: &EnumerationMode,
) -> (usize, Vec<lp::Constraint>) {
    let r = ws.rank();
    let sw = ws.support_weights(s);
    let nc = match mode {
        EnumerationMode::AtK(_) => sw.len(),
        EnumerationMode::LargeK => 0,
    };
    let nv = r + 1 + nc;
    let mut cons = Vec::new();
    let pad = |head: Vec<Rat>| {
        let mut row = head;
        row.resize(nv, Rat::zero());
        row
    };
    // energy band
    let mut erow: Vec<Rat> = ws.theta().to_vec();
    erow.push(Rat::one());
    cons.push(lp::Constraint::new(pad(erow.clone()), lp::Rel::Ge, Rat::zero()));
    cons.push(lp::Constraint::new(pad(erow), lp::Rel::Le, budget.cap().clone()));
    // degree slacks over the support
    for i in s.iter() {
        let mut row: Vec<Rat> = ws.weight(i).to_vec();
        row.push(Rat::one());
        cons.push(lp::Constraint::new(pad(row), lp::Rel::Ge, Rat::zero()));
    }
    if let EnumerationMode::AtK(k) = mode {
        let kinv = k.recip();
        // sum_j c_j = 1
        let mut ones = vec![Rat::zero(); nv];
        for c in ones.iter_mut().skip(r + 1) {
            *c = Rat::one();
        }
        cons.push(lp::Constraint::new(ones, lp::Rel::Eq, Rat::one()));
        // sum_j c_j mu_j + (M dP) / k = theta, coordinatewise
        let m = ws.metric().matrix();
        for d in 0..r {
            let mut row = vec![Rat::zero(); nv];
            for e in 0..r {
                row[e] = &m[d][e] * &kinv;
            }
            for (ji, mu) in sw.iter().enumerate() {
                row[r + 1 + ji] = mu[d].clone();
            }
            cons.push(lp::Constraint::new(row, lp::Rel::Eq, ws.theta()[d].clone()));
        }
        // c_j >= 0
        for ji in 0..sw.len() {
            let mut row = vec![Rat::zero(); nv];
            row[r + 1 + ji] = Rat::one();
            cons.push(lp::Constraint::new(row, lp::Rel::Ge, Rat::zero()));
        }
    }
    (nv, cons)
}

fn scan_box(
    ws: &WeightSystem,
    s: &Support,
    budget: &EnergyBudget,
    mode: &EnumerationMode,
    boxes: &[(i64, i64)],
    out: &mut Vec<GaugedMapDatum>,
) -> Result<(), MundetError> {
    for dp in boxes
        .iter()
        .map(|&(lo, hi)| lo..=hi)
        .multi_cartesian_product()
    {
        let probe = GaugedMapDatum::new(ws.clone(), dp.clone(), 0, s.clone())?;
        let semistable = match mode {
            EnumerationMode::AtK(k) => crate::mundet_classify(&probe, k)?.semistable,
            EnumerationMode::LargeK => crate::large_k_semistable(&probe)?.semistable,
        };
        if !semistable {
            continue;
        }
        // du range: energy band and degree slacks are linear in du
        let dpr: Vec<Rat> = dp.iter().map(|&x| rat_i(x)).collect();
        let tdp = vecops::dot(ws.theta(), &dpr);
        let mut lo = -&tdp;
        for i in s.iter() {
            let b = -vecops::dot(ws.weight(i), &dpr);
            if b > lo {
                lo = b;
            }
        }
        let hi = budget.cap() - &tdp;
        let lo_i = lo.ceil().to_integer().to_i64().ok_or_else(overflow)?;
        let hi_i = hi.floor().to_integer().to_i64().ok_or_else(overflow)?;
        for du in lo_i..=hi_i {
            let d = GaugedMapDatum::new(ws.clone(), dp.clone(), du, s.clone())?;
            debug_assert!(!energy(&d).is_negative() && energy(&d) <= *budget.cap());
            debug_assert!(crate::degree_feasible(&d).feasible);
            out.push(d);
        }
    }
    Ok(())
}
