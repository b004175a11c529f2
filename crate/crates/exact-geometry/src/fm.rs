//! Fourier-Motzkin elimination over the rationals.
//!
//! Used for hull-membership feasibility at low rank, where the projected
//! system stays tiny. Returns a feasible point by back-substitution through
//! the elimination levels.

use crate::rational::Rat;
use num::{Signed, Zero};

/// One inequality: coeffs . x <= rhs.
pub type Ineq = (Vec<Rat>, Rat);

/// A point satisfying every inequality over `n` variables, if any exists.
pub fn feasible_point(ineqs: &[Ineq], n: usize) -> Option<Vec<Rat>> {
    // levels[k] is a system over the first k variables
    let mut levels: Vec<Vec<Ineq>> = Vec::with_capacity(n + 1);
    levels.push(ineqs.to_vec());
    for k in (1..=n).rev() {
        let next = eliminate_last(levels.last().unwrap(), k);
        levels.push(next);
    }
    // constant level: every row must read 0 <= rhs
    if levels[n].iter().any(|(_, b)| b.is_negative()) {
        return None;
    }
    // back-substitute: x_0 from the 1-variable level, then upward
    let mut x: Vec<Rat> = Vec::with_capacity(n);
    for k in 1..=n {
        let sys = &levels[n - k];
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for (coeffs, rhs) in sys {
            let c = &coeffs[k - 1];
            if c.is_zero() {
                continue;
            }
            let mut rest = rhs.clone();
            for (j, a) in coeffs[..k - 1].iter().enumerate() {
                rest -= a * &x[j];
            }
            let bound = &rest / c;
            if c.is_positive() {
                hi = Some(match hi {
                    None => bound,
                    Some(h) => h.min(bound),
                });
            } else {
                lo = Some(match lo {
                    None => bound,
                    Some(l) => l.max(bound),
                });
            }
        }
        let v = match (lo, hi) {
            (None, None) => Rat::zero(),
            (Some(l), None) => l,
            (None, Some(h)) => h,
            (Some(l), Some(h)) => {
                debug_assert!(l <= h, "elimination guarantees a nonempty interval");
                (&l + &h) / Rat::from_integer(2.into())
            }
        };
        x.push(v);
    }
    debug_assert!(ineqs
        .iter()
        .all(|(a, b)| { crate::vecops::dot(a, &x) <= *b }));
    Some(x)
}

// Projects out variable k-1 from a system over k variables.
fn eliminate_last(sys: &[Ineq], k: usize) -> Vec<Ineq> {
    let mut zero_rows: Vec<Ineq> = Vec::new();
    let mut pos: Vec<&Ineq> = Vec::new();
    let mut neg: Vec<&Ineq> = Vec::new();
    for row in sys {
        let c = &row.0[k - 1];
        if c.is_zero() {
            zero_rows.push((row.0[..k - 1].to_vec(), row.1.clone()));
        } else if c.is_positive() {
            pos.push(row);
        } else {
            neg.push(row);
        }
    }
    for (pa, pb) in &pos {
        for (na, nb) in &neg {
            // scale so the eliminated coefficients cancel
            let cp = &pa[k - 1];
            let cn = &na[k - 1];
            let mut coeffs = Vec::with_capacity(k - 1);
            for j in 0..k - 1 {
                coeffs.push(&pa[j] / cp - &na[j] / cn);
            }
            let rhs = pb / cp - nb / cn;
            zero_rows.push((coeffs, rhs));
        }
    }
    zero_rows
}
