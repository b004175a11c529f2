//! Metric-closest point of a convex hull to the origin.

use crate::metric::InnerProduct;
use crate::rational::Rat;
use crate::{vecops, GeomError};
use num::Signed;

/// The unique point of conv(points) minimizing (x, x) in the given metric.
///
/// Every face is a hull of at most r + 1 affinely independent generators, so
/// enumerating generator subsets of that size and solving the affine
/// stationarity system on each covers the minimizing face. Desk-scale inputs
/// keep the subset count tiny.
pub fn closest_point(points: &[Vec<Rat>], metric: &InnerProduct) -> Result<Vec<Rat>, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyPoints);
    }
    let r = metric.dim();
    for p in points {
        if p.len() != r {
            return Err(GeomError::DimensionMismatch {
                expected: r,
                got: p.len(),
            });
        }
    }
    let mut best: Option<(Rat, Vec<Rat>)> = None;
    let idx: Vec<usize> = (0..points.len()).collect();
    for size in 1..=(r + 1).min(points.len()) {
        for subset in subsets_of_size(&idx, size) {
            if let Some(x) = face_minimum(points, metric, &subset) {
                let n = metric.norm_sq(&x);
                match &best {
                    Some((bn, _)) if *bn <= n => {}
                    _ => best = Some((n, x)),
                }
            }
        }
    }
    let (_, x) = best.expect("singleton subsets always produce a candidate");
    // variational inequality: (p - x, x) >= 0 for every generator p
    debug_assert!(points
        .iter()
        .all(|p| !metric.pairing(&vecops::sub(p, &x), &x).is_negative()));
    Ok(x)
}

// Stationary point of the norm on the affine span of a generator subset,
// expressed in barycentric coordinates. None when the system is singular
// (affinely dependent subset; a smaller subset covers that face) or when the
// stationary point leaves the face.
fn face_minimum(points: &[Vec<Rat>], metric: &InnerProduct, subset: &[usize]) -> Option<Vec<Rat>> {
    let s = subset.len();
    let f: Vec<&Vec<Rat>> = subset.iter().map(|&i| &points[i]).collect();
    // rows: sum a = 1; for j >= 1: (sum_l a_l f_l, f_j - f_0) = 0
    let mut a = Vec::with_capacity(s);
    let mut b = Vec::with_capacity(s);
    a.push(vec![Rat::from_integer(1.into()); s]);
    b.push(Rat::from_integer(1.into()));
    for j in 1..s {
        let d = vecops::sub(f[j], f[0]);
        a.push(f.iter().map(|fl| metric.pairing(fl, &d)).collect());
        b.push(Rat::from_integer(0.into()));
    }
    let coeffs = vecops::solve_square(&a, &b)?;
    if coeffs.iter().any(|c| c.is_negative()) {
        return None;
    }
    let mut x = vecops::zero(points[0].len());
    for (c, fl) in coeffs.iter().zip(&f) {
        x = vecops::add(&x, &vecops::scale(fl, c));
    }
    Some(x)
}

fn subsets_of_size(idx: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(idx: &[usize], start: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..idx.len() {
            cur.push(idx[i]);
            rec(idx, i + 1, size, cur, out);
            cur.pop();
        }
    }
    rec(idx, 0, size, &mut cur, &mut out);
    out
}
