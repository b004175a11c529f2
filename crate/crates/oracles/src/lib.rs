//! Independent brute-force verifiers for the analytic modules: lattice
//! scans of the numerical stability criteria, grid detection of wall
//! crossings, and exhaustive generation of stable scaled-curve types.
//!
//! None of the oracles call the logic they check. Weights are re-evaluated
//! from scratch in cleared-denominator integer arithmetic, hull membership
//! is re-decided by solving for convex coefficients on small subsets, and
//! tree types are re-generated, re-validated and re-encoded from first
//! principles before being diffed against the enumerator.

mod trees;

use exact_geometry::rational::common_denominator;
use exact_geometry::{lattice_box, Rat};
use git_core::{OneParameterSubgroup, Support, WeightSystem};
use itertools::Itertools;
use mundet_core::GaugedMapDatum;
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

pub use trees::{exhaustive_tree_check, TreeCheckReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("invalid budget: {0}")]
    BadBudget(String),
    #[error("tree vertex cap {0} too small: a stable type uses every allowed vertex")]
    CapTooSmall(usize),
}

/// Search bounds for the brute-force scans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleBudget {
    /// Sup-norm bound on the scanned coweight lattice box.
    pub lattice_radius: i64,
    /// Strictly increasing positive polarization powers to probe.
    pub k_grid: Vec<Rat>,
    /// Upper bound on tree sizes for the exhaustive type generator.
    pub tree_vertex_cap: usize,
}

impl OracleBudget {
    pub fn new(
        lattice_radius: i64,
        k_grid: Vec<Rat>,
        tree_vertex_cap: usize,
    ) -> Result<Self, OracleError> {
        if lattice_radius < 1 {
            return Err(OracleError::BadBudget("lattice radius must be at least 1".into()));
        }
        if k_grid.iter().any(|k| !k.is_positive()) {
            return Err(OracleError::BadBudget("grid powers must be positive".into()));
        }
        if !k_grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(OracleError::BadBudget("grid must be strictly increasing".into()));
        }
        if tree_vertex_cap < 1 {
            return Err(OracleError::BadBudget("tree vertex cap must be at least 1".into()));
        }
        Ok(OracleBudget {
            lattice_radius,
            k_grid,
            tree_vertex_cap,
        })
    }
}

/// Scan verdict; the witness is the first scanned coweight with positive
/// weight, so reruns are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceVerdict {
    pub semistable: bool,
    pub witness: Option<OneParameterSubgroup>,
}

// Clears denominators across all rows at once; signs of integer linear
// functionals in the rows are unchanged by the common positive factor.
fn integerize(rows: &[Vec<Rat>]) -> Vec<Vec<i128>> {
    let flat: Vec<Rat> = rows.iter().flatten().cloned().collect();
    let d: BigInt = common_denominator(&flat);
    let d = Rat::from_integer(d);
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    (x * &d)
                        .to_integer()
                        .to_i128()
                        .expect("desk-scale data fits i128")
                })
                .collect()
        })
        .collect()
}

fn dot_int(row: &[i128], lam: &[i64]) -> i128 {
    row.iter().zip(lam).map(|(a, &b)| a * i128::from(b)).sum()
}

fn scan_for_positive(
    rank: usize,
    radius: i64,
    weight_sign: impl Fn(&[i64]) -> i128 + Sync,
) -> BruteForceVerdict {
    let points: Vec<Vec<i64>> = lattice_box(rank, radius).collect();
    let witness = points
        .par_iter()
        .find_map_first(|lam| (weight_sign(lam) > 0).then(|| OneParameterSubgroup::new(lam.clone())));
    BruteForceVerdict {
        semistable: witness.is_none(),
        witness,
    }
}

/// Exhaustive Hilbert-Mumford scan: semistable iff no coweight in the
/// lattice box has positive weight. Sound only when the radius dominates
/// the certificate radius reported by the analytic side.
pub fn brute_force_classify(ws: &WeightSystem, s: &Support, budget: &OracleBudget) -> BruteForceVerdict {
    let diffs: Vec<Vec<Rat>> = s
        .iter()
        .map(|i| {
            ws.theta()
                .iter()
                .zip(ws.weight(i))
                .map(|(t, m)| t - m)
                .collect()
        })
        .collect();
    let rows = integerize(&diffs);
    scan_for_positive(ws.rank(), budget.lattice_radius, |lam| {
        rows.iter().map(|row| dot_int(row, lam)).min().expect("support nonempty")
    })
}

/// Exhaustive scan of the combined bundle-plus-section weight
/// k min_i (theta - mu_i) . lambda - (d(P), lambda) at power k.
pub fn brute_force_mundet(d: &GaugedMapDatum, k: &Rat, budget: &OracleBudget) -> BruteForceVerdict {
    assert!(k.is_positive(), "polarization power must be positive");
    let ws = d.ws();
    let diffs: Vec<Vec<Rat>> = d
        .support()
        .iter()
        .map(|i| {
            ws.theta()
                .iter()
                .zip(ws.weight(i))
                .map(|(t, m)| t - m)
                .collect()
        })
        .collect();
    let section_rows = integerize(&diffs);
    let bundle_row = integerize(std::slice::from_ref(&d.dp_vee())).remove(0);
    // weight sign is invariant under scaling by b * D_section * D_bundle,
    // leaving a * D_bundle * section - b * D_section * bundle; the scale
    // factors are folded in by integerizing each part separately and cross
    // multiplying with k = a/b
    let a = k.numer().to_i128().expect("desk-scale k");
    let b = k.denom().to_i128().expect("desk-scale k");
    let section_scale = scale_of(&diffs);
    let bundle_scale = scale_of(std::slice::from_ref(&d.dp_vee()));
    scan_for_positive(ws.rank(), budget.lattice_radius, |lam| {
        let section = section_rows
            .iter()
            .map(|row| dot_int(row, lam))
            .min()
            .expect("support nonempty");
        let bundle = dot_int(&bundle_row, lam);
        a * bundle_scale * section - b * section_scale * bundle
    })
}

fn scale_of(rows: &[Vec<Rat>]) -> i128 {
    let flat: Vec<Rat> = rows.iter().flatten().cloned().collect();
    common_denominator(&flat).to_i128().expect("desk-scale data fits i128")
}

/// Membership verdicts of theta - d(P)^vee / k over the grid, paired into
/// brackets (k_lo, k_hi) of adjacent grid points whose verdicts differ.
/// Each bracket contains at least one exact wall.
pub fn scan_walls(ws: &WeightSystem, s: &Support, dp: &[i64], k_grid: &[Rat]) -> Vec<(Rat, Rat)> {
    assert!(k_grid.windows(2).all(|w| w[0] < w[1]), "grid must be strictly increasing");
    assert!(k_grid.iter().all(Signed::is_positive), "grid powers must be positive");
    let pts: Vec<Vec<Rat>> = s.iter().map(|i| ws.weight(i).to_vec()).collect();
    let dp_rats: Vec<Rat> = dp.iter().map(|&x| exact_geometry::rat_i(x)).collect();
    let dpv = ws.metric().apply(&dp_rats);
    let verdicts: Vec<bool> = k_grid
        .par_iter()
        .map(|k| {
            let q: Vec<Rat> = ws
                .theta()
                .iter()
                .zip(&dpv)
                .map(|(t, v)| t - v / k)
                .collect();
            caratheodory_contains(&pts, &q)
        })
        .collect();
    k_grid
        .windows(2)
        .zip(verdicts.windows(2))
        .filter(|(_, v)| v[0] != v[1])
        .map(|(w, _)| (w[0].clone(), w[1].clone()))
        .collect()
}

// Hull membership by direct search for convex coefficients: q is in the
// hull iff some affinely independent subset of at most dim + 1 points
// carries q with nonnegative coefficients summing to one. Dependent
// subsets are skipped; a smaller independent subset always covers them.
fn caratheodory_contains(points: &[Vec<Rat>], q: &[Rat]) -> bool {
    let dim = q.len();
    let idx: Vec<usize> = (0..points.len()).collect();
    for size in 1..=(dim + 1).min(points.len()) {
        for subset in idx.iter().combinations(size) {
            // one row per coordinate plus the affine row of ones
            let mut rows: Vec<Vec<Rat>> = (0..dim)
                .map(|c| subset.iter().map(|&&j| points[j][c].clone()).collect())
                .collect();
            rows.push(vec![Rat::one(); size]);
            let mut rhs: Vec<Rat> = q.to_vec();
            rhs.push(Rat::one());
            if let Some(coeffs) = solve_unique(&rows, &rhs) {
                if coeffs.iter().all(|c| !c.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

// Gaussian elimination on the augmented system; Some only when the system
// is consistent with full column rank, so the solution is unique.
fn solve_unique(rows: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let m = rows.len();
    let n = rows[0].len();
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].clone().recip();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=n {
                    let t = &aug[r][j] * &f;
                    aug[i][j] -= t;
                }
            }
        }
        pivot_rows.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    if pivot_rows.len() < n {
        return None; // dependent columns
    }
    if aug[r..].iter().any(|row| !row[n].is_zero()) {
        return None; // inconsistent
    }
    let mut sol = vec![Rat::zero(); n];
    for (row, &c) in pivot_rows.iter().enumerate() {
        sol[c] = aug[row][n].clone();
    }
    Some(sol)
}
