//! Convex hull membership, relative position, and ray crossings.

use crate::lp::{self, Constraint, LpOutcome, Rel, Sense};
use crate::rational::Rat;
use crate::{fm, vecops, GeomError};
use num::{One, Signed, Zero};

/// Membership verdict with an exact certificate either way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HullCertificate {
    /// q = sum coefficients[i] * points[i], coefficients >= 0 summing to 1.
    Inside { coefficients: Vec<Rat> },
    /// covector . p <= bound for every point, covector . q >= bound + margin.
    Outside {
        covector: Vec<Rat>,
        bound: Rat,
        margin: Rat,
    },
}

impl HullCertificate {
    pub fn is_inside(&self) -> bool {
        matches!(self, HullCertificate::Inside { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Position {
    Outside,
    RelativeBoundary,
    RelativeInterior,
}

fn check_dims(points: &[Vec<Rat>], q: &[Rat]) -> Result<usize, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyPoints);
    }
    let r = points[0].len();
    for p in points {
        if p.len() != r {
            return Err(GeomError::DimensionMismatch {
                expected: r,
                got: p.len(),
            });
        }
    }
    if q.len() != r {
        return Err(GeomError::DimensionMismatch {
            expected: r,
            got: q.len(),
        });
    }
    Ok(r)
}

/// Is q in the convex hull of the points? Exact, certified both ways.
/// Rank at most 3 runs Fourier-Motzkin; higher ranks run the simplex.
pub fn hull_contains(points: &[Vec<Rat>], q: &[Rat]) -> Result<HullCertificate, GeomError> {
    let r = check_dims(points, q)?;
    let coeffs = if r <= 3 {
        membership_fm(points, q, r)
    } else {
        membership_simplex(points, q, r)
    };
    match coeffs {
        Some(coefficients) => {
            debug_assert!(verify_combination(points, q, &coefficients));
            Ok(HullCertificate::Inside { coefficients })
        }
        None => {
            let (covector, bound, margin) = separating_covector(points, q, r);
            Ok(HullCertificate::Outside {
                covector,
                bound,
                margin,
            })
        }
    }
}

fn verify_combination(points: &[Vec<Rat>], q: &[Rat], coeffs: &[Rat]) -> bool {
    if coeffs.len() != points.len() || coeffs.iter().any(|c| c.is_negative()) {
        return false;
    }
    let total: Rat = coeffs.iter().cloned().sum();
    if !total.is_one() {
        return false;
    }
    let mut acc = vecops::zero(q.len());
    for (c, p) in coeffs.iter().zip(points) {
        acc = vecops::add(&acc, &vecops::scale(p, c));
    }
    acc == q
}

// Convex-combination feasibility via the simplex.
fn membership_simplex(points: &[Vec<Rat>], q: &[Rat], r: usize) -> Option<Vec<Rat>> {
    let m = points.len();
    let mut cons = convex_combination_rows(points, q, r);
    for i in 0..m {
        let mut row = vec![Rat::zero(); m];
        row[i] = Rat::one();
        cons.push(Constraint::new(row, Rel::Ge, Rat::zero()));
    }
    lp::feasible_point(m, &cons)
}

// Equality rows sum_i c_i = 1 and sum_i c_i p_i = q over variables c.
fn convex_combination_rows(points: &[Vec<Rat>], q: &[Rat], r: usize) -> Vec<Constraint> {
    let m = points.len();
    let mut cons = Vec::with_capacity(r + 1);
    cons.push(Constraint::new(vec![Rat::one(); m], Rel::Eq, Rat::one()));
    for d in 0..r {
        let row: Vec<Rat> = points.iter().map(|p| p[d].clone()).collect();
        cons.push(Constraint::new(row, Rel::Eq, q[d].clone()));
    }
    cons
}

// Convex-combination feasibility via Gaussian elimination of the equality
// rows followed by Fourier-Motzkin on the surviving free coefficients.
fn membership_fm(points: &[Vec<Rat>], q: &[Rat], r: usize) -> Option<Vec<Rat>> {
    let m = points.len();
    // augmented system [A | b]: r + 1 rows over the m coefficients
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(r + 1);
    a.push({
        let mut row = vec![Rat::one(); m];
        row.push(Rat::one());
        row
    });
    for d in 0..r {
        let mut row: Vec<Rat> = points.iter().map(|p| p[d].clone()).collect();
        row.push(q[d].clone());
        a.push(row);
    }
    // reduce to row echelon form, tracking pivot columns
    let mut pivots: Vec<usize> = Vec::new();
    let mut prow = 0;
    for col in 0..m {
        let Some(pi) = (prow..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(prow, pi);
        let inv = a[prow][col].recip();
        for j in col..=m {
            a[prow][j] = &a[prow][j] * &inv;
        }
        for i in 0..a.len() {
            if i != prow && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..=m {
                    let t = &a[prow][j] * &f;
                    a[i][j] = &a[i][j] - t;
                }
            }
        }
        pivots.push(col);
        prow += 1;
        if prow == a.len() {
            break;
        }
    }
    // inconsistent equalities: q is not even an affine combination
    if a[prow..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    let nf = free.len();
    // c_pivot = rhs - sum over free columns; nonnegativity of every c_i
    // becomes an inequality system over the free coefficients
    let mut ineqs: Vec<fm::Ineq> = Vec::new();
    for (pi, &_pc) in pivots.iter().enumerate() {
        // -c_pivot <= 0, i.e. sum_f (-a[pi][f]) * (-cf) ... expand directly:
        // c_pivot = a[pi][m] - sum_f a[pi][f] c_f >= 0
        let coeffs: Vec<Rat> = free.iter().map(|&f| a[pi][f].clone()).collect();
        ineqs.push((coeffs, a[pi][m].clone()));
    }
    for fi in 0..nf {
        let mut coeffs = vec![Rat::zero(); nf];
        coeffs[fi] = -Rat::one();
        ineqs.push((coeffs, Rat::zero()));
    }
    let cf = fm::feasible_point(&ineqs, nf)?;
    let mut c = vec![Rat::zero(); m];
    for (fi, &fcol) in free.iter().enumerate() {
        c[fcol] = cf[fi].clone();
    }
    for (pi, &pcol) in pivots.iter().enumerate() {
        let mut v = a[pi][m].clone();
        for (fi, &fcol) in free.iter().enumerate() {
            v -= &a[pi][fcol] * &c[fcol];
            let _ = fi;
        }
        c[pcol] = v;
    }
    Some(c)
}

// Strict separation always exists when q is outside the hull; a feasible
// point of the separation system is the certificate.
fn separating_covector(points: &[Vec<Rat>], q: &[Rat], r: usize) -> (Vec<Rat>, Rat, Rat) {
    // variables: xi (r entries), d (1 entry)
    let nv = r + 1;
    let mut cons: Vec<Constraint> = Vec::new();
    for p in points {
        let mut row: Vec<Rat> = p.to_vec();
        row.push(-Rat::one());
        cons.push(Constraint::new(row, Rel::Le, Rat::zero()));
    }
    let mut row: Vec<Rat> = q.to_vec();
    row.push(-Rat::one());
    cons.push(Constraint::new(row, Rel::Ge, Rat::one()));
    let point = lp::feasible_point(nv, &cons)
        .expect("separation system is feasible for points outside the hull");
    let covector = point[..r].to_vec();
    let bound = point[r].clone();
    let margin = vecops::dot(&covector, q) - &bound;
    debug_assert!(margin >= Rat::one());
    debug_assert!(points
        .iter()
        .all(|p| vecops::dot(&covector, p) <= bound));
    (covector, bound, margin)
}

/// Position of q relative to the hull, plus the hull's affine dimension.
pub fn hull_position(points: &[Vec<Rat>], q: &[Rat]) -> Result<(Position, usize), GeomError> {
    let r = check_dims(points, q)?;
    let dim = affine_dimension(points);
    if !hull_contains(points, q)?.is_inside() {
        return Ok((Position::Outside, dim));
    }
    // relative interior = a representation with every coefficient positive;
    // maximize the smallest coefficient
    let m = points.len();
    let nv = m + 1; // coefficients plus the floor t
    let mut cons = Vec::new();
    {
        let mut row = vec![Rat::one(); m];
        row.push(Rat::zero());
        cons.push(Constraint::new(row, Rel::Eq, Rat::one()));
    }
    for d in 0..r {
        let mut row: Vec<Rat> = points.iter().map(|p| p[d].clone()).collect();
        row.push(Rat::zero());
        cons.push(Constraint::new(row, Rel::Eq, q[d].clone()));
    }
    for i in 0..m {
        let mut row = vec![Rat::zero(); nv];
        row[i] = Rat::one();
        row[m] = -Rat::one();
        cons.push(Constraint::new(row, Rel::Ge, Rat::zero()));
    }
    let mut obj = vec![Rat::zero(); nv];
    obj[m] = Rat::one();
    let pos = match lp::solve(nv, &cons, &obj, Sense::Maximize) {
        LpOutcome::Optimal { value, .. } if value.is_positive() => Position::RelativeInterior,
        LpOutcome::Optimal { .. } => Position::RelativeBoundary,
        _ => unreachable!("membership holds, so t = 0 is feasible and t <= 1/m"),
    };
    Ok((pos, dim))
}

/// Dimension of the affine hull of the points.
pub fn affine_dimension(points: &[Vec<Rat>]) -> usize {
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| vecops::sub(p, &points[0]))
        .collect();
    vecops::rank(&diffs)
}

/// Parameters t > 0 where base + t direction meets the relative boundary of
/// the hull, i.e. the finite positive endpoints of the membership interval.
pub fn ray_boundary_crossings(
    points: &[Vec<Rat>],
    base: &[Rat],
    direction: &[Rat],
) -> Result<Vec<Rat>, GeomError> {
    let r = check_dims(points, base)?;
    if direction.len() != r {
        return Err(GeomError::DimensionMismatch {
            expected: r,
            got: direction.len(),
        });
    }
    if vecops::is_zero(direction) {
        return Ok(Vec::new());
    }
    // variables: coefficients c_1..c_m, then t
    let m = points.len();
    let nv = m + 1;
    let mut cons = Vec::new();
    {
        let mut row = vec![Rat::one(); m];
        row.push(Rat::zero());
        cons.push(Constraint::new(row, Rel::Eq, Rat::one()));
    }
    for d in 0..r {
        let mut row: Vec<Rat> = points.iter().map(|p| p[d].clone()).collect();
        row.push(-direction[d].clone());
        cons.push(Constraint::new(row, Rel::Eq, base[d].clone()));
    }
    for i in 0..m {
        let mut row = vec![Rat::zero(); nv];
        row[i] = Rat::one();
        cons.push(Constraint::new(row, Rel::Ge, Rat::zero()));
    }
    {
        let mut row = vec![Rat::zero(); nv];
        row[m] = Rat::one();
        cons.push(Constraint::new(row, Rel::Ge, Rat::zero()));
    }
    let mut obj = vec![Rat::zero(); nv];
    obj[m] = Rat::one();
    let lo = match lp::solve(nv, &cons, &obj, Sense::Minimize) {
        LpOutcome::Infeasible => return Ok(Vec::new()),
        LpOutcome::Optimal { value, .. } => value,
        LpOutcome::Unbounded => unreachable!("t is bounded below by 0"),
    };
    let hi = match lp::solve(nv, &cons, &obj, Sense::Maximize) {
        LpOutcome::Optimal { value, .. } => Some(value),
        LpOutcome::Unbounded => None,
        LpOutcome::Infeasible => unreachable!("feasibility already established"),
    };
    let mut out = Vec::new();
    if lo.is_positive() {
        out.push(lo.clone());
    }
    if let Some(h) = hi {
        if h.is_positive() && Some(&h) != out.first() {
            out.push(h);
        }
    }
    Ok(out)
}
