//! Exact two-phase simplex over the rationals, Bland's pivot rule.
//!
//! Variables are free; the standard-form split into nonnegative pairs plus
//! slack columns happens internally. Bland's rule makes cycling impossible,
//! so termination needs no perturbation and every verdict is exact.

use crate::rational::Rat;
use num::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, rel: Rel, rhs: Rat) -> Self {
        Constraint { coeffs, rel, rhs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, point: Vec<Rat> },
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, Copy)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Optimizes objective . x over { x : constraints }. x is free.
pub fn solve(
    num_vars: usize,
    constraints: &[Constraint],
    objective: &[Rat],
    sense: Sense,
) -> LpOutcome {
    assert_eq!(objective.len(), num_vars);
    for c in constraints {
        assert_eq!(c.coeffs.len(), num_vars);
    }
    let obj: Vec<Rat> = match sense {
        Sense::Maximize => objective.to_vec(),
        Sense::Minimize => objective.iter().map(|c| -c).collect(),
    };
    let out = maximize_split(num_vars, constraints, &obj);
    match (sense, out) {
        (Sense::Minimize, LpOutcome::Optimal { value, point }) => LpOutcome::Optimal {
            value: -value,
            point,
        },
        (_, other) => other,
    }
}

/// A point satisfying the constraints, if one exists.
pub fn feasible_point(num_vars: usize, constraints: &[Constraint]) -> Option<Vec<Rat>> {
    let zero_obj = vec![Rat::zero(); num_vars];
    match solve(num_vars, constraints, &zero_obj, Sense::Maximize) {
        LpOutcome::Optimal { point, .. } => Some(point),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

fn maximize_split(num_vars: usize, constraints: &[Constraint], obj: &[Rat]) -> LpOutcome {
    // columns 2j, 2j+1 hold the split x_j = y_{2j} - y_{2j+1}
    let nfree = 2 * num_vars;
    let nslack = constraints
        .iter()
        .filter(|c| c.rel != Rel::Eq)
        .count();
    let m = constraints.len();
    let ncols = nfree + nslack + m; // artificials occupy the last m columns
    let art0 = nfree + nslack;

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    let mut slack_idx = 0;
    for (i, c) in constraints.iter().enumerate() {
        let mut row = vec![Rat::zero(); ncols];
        for (j, a) in c.coeffs.iter().enumerate() {
            row[2 * j] = a.clone();
            row[2 * j + 1] = -a;
        }
        match c.rel {
            Rel::Le => {
                row[nfree + slack_idx] = Rat::from_integer(1.into());
                slack_idx += 1;
            }
            Rel::Ge => {
                row[nfree + slack_idx] = Rat::from_integer((-1).into());
                slack_idx += 1;
            }
            Rel::Eq => {}
        }
        let mut b = c.rhs.clone();
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
            b = -b;
        }
        row[art0 + i] = Rat::from_integer(1.into());
        rows.push(row);
        rhs.push(b);
    }

    let mut t = Tableau {
        rows,
        rhs,
        basis: (art0..art0 + m).collect(),
        ncols,
    };

    // phase 1: maximize -(sum of artificials)
    let mut cost1 = vec![Rat::zero(); ncols];
    for j in art0..art0 + m {
        cost1[j] = Rat::from_integer((-1).into());
    }
    let banned_none: Vec<bool> = vec![false; ncols];
    match t.run(&cost1, &banned_none) {
        RunEnd::Optimal(v) => {
            if v.is_negative() {
                return LpOutcome::Infeasible;
            }
        }
        RunEnd::Unbounded => unreachable!("phase 1 objective is bounded above by 0"),
    }
    t.evict_artificials(art0);

    // phase 2: real objective over the split columns, artificials banned
    let mut cost2 = vec![Rat::zero(); t.ncols];
    for j in 0..num_vars {
        cost2[2 * j] = obj[j].clone();
        cost2[2 * j + 1] = -&obj[j];
    }
    let mut banned = vec![false; t.ncols];
    for b in banned.iter_mut().skip(art0) {
        *b = true;
    }
    match t.run(&cost2, &banned) {
        RunEnd::Unbounded => LpOutcome::Unbounded,
        RunEnd::Optimal(value) => {
            let y = t.solution();
            let point = (0..num_vars).map(|j| &y[2 * j] - &y[2 * j + 1]).collect();
            LpOutcome::Optimal { value, point }
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
}

enum RunEnd {
    Optimal(Rat),
    Unbounded,
}

impl Tableau {
    fn run(&mut self, cost: &[Rat], banned: &[bool]) -> RunEnd {
        loop {
            let Some(enter) = self.entering(cost, banned) else {
                return RunEnd::Optimal(self.objective_value(cost));
            };
            let Some(leave) = self.leaving(enter) else {
                return RunEnd::Unbounded;
            };
            self.pivot(leave, enter);
        }
    }

    fn reduced_cost(&self, cost: &[Rat], j: usize) -> Rat {
        let mut rc = cost[j].clone();
        for (i, &bi) in self.basis.iter().enumerate() {
            if !cost[bi].is_zero() && !self.rows[i][j].is_zero() {
                rc -= &cost[bi] * &self.rows[i][j];
            }
        }
        rc
    }

    // Bland: smallest eligible column index.
    fn entering(&self, cost: &[Rat], banned: &[bool]) -> Option<usize> {
        (0..self.ncols).find(|&j| {
            !banned[j] && !self.basis.contains(&j) && self.reduced_cost(cost, j).is_positive()
        })
    }

    // Min-ratio; ties broken by smallest basis variable index (Bland).
    fn leaving(&self, enter: usize) -> Option<usize> {
        let mut best: Option<(Rat, usize)> = None;
        for i in 0..self.rows.len() {
            let a = &self.rows[i][enter];
            if !a.is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / a;
            best = match best {
                None => Some((ratio, i)),
                Some((r, bi)) => {
                    if ratio < r || (ratio == r && self.basis[i] < self.basis[bi]) {
                        Some((ratio, i))
                    } else {
                        Some((r, bi))
                    }
                }
            };
        }
        best.map(|(_, i)| i)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for v in self.rows[row].iter_mut() {
            *v = &*v * &inv;
        }
        self.rhs[row] = &self.rhs[row] * &inv;
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for j in 0..self.ncols {
                if !self.rows[row][j].is_zero() {
                    let t = &self.rows[row][j] * &f;
                    self.rows[i][j] = &self.rows[i][j] - t;
                }
            }
            let t = &self.rhs[row] * &f;
            self.rhs[i] = &self.rhs[i] - t;
        }
        self.basis[row] = col;
    }

    fn objective_value(&self, cost: &[Rat]) -> Rat {
        let mut v = Rat::zero();
        for (i, &bi) in self.basis.iter().enumerate() {
            if !cost[bi].is_zero() {
                v += &cost[bi] * &self.rhs[i];
            }
        }
        v
    }

    // After a feasible phase 1, pivot artificial variables out of the basis.
    // A row with no usable structural column is redundant and is dropped.
    fn evict_artificials(&mut self, art0: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < art0 {
                i += 1;
                continue;
            }
            debug_assert!(self.rhs[i].is_zero(), "artificial basic at positive level");
            match (0..art0).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }

    fn solution(&self) -> Vec<Rat> {
        let mut y = vec![Rat::zero(); self.ncols];
        for (i, &bi) in self.basis.iter().enumerate() {
            y[bi] = self.rhs[i].clone();
        }
        y
    }
}
