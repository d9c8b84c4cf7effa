//! Exact phase-I simplex on a dense rational tableau.
//!
//! Free variables are split as `x = p - q` with `p, q >= 0`, inequalities get a
//! slack column, and rows without a natural basic column get an artificial one.
//! Minimising the sum of artificials with Bland's rule terminates; the system is
//! feasible iff that minimum is zero.

use num_traits::{Signed, Zero};

use super::{FeasibilityResult, LinearConstraint, Relation};
use crate::scalar::Scalar;

struct Tableau {
    rows: Vec<Vec<Scalar>>,
    rhs: Vec<Scalar>,
    basis: Vec<usize>,
    /// Reduced costs of the phase-I objective.
    cost: Vec<Scalar>,
    /// Negated objective value.
    cost_rhs: Scalar,
}

impl Tableau {
    fn entering(&self) -> Option<usize> {
        self.cost.iter().position(Signed::is_negative)
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<(usize, Scalar)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[col].is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / &row[col];
            let better = match &best {
                None => true,
                Some((j, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*j]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for v in self.rows[row].iter_mut() {
            *v *= &inv;
        }
        self.rhs[row] *= &inv;

        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for (v, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        if !self.cost[col].is_zero() {
            let factor = self.cost[col].clone();
            for (v, p) in self.cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            self.cost_rhs -= &factor * &pivot_rhs;
        }
        self.basis[row] = col;
    }
}

pub(super) fn phase_one(constraints: &[&LinearConstraint], dim: usize) -> FeasibilityResult {
    let m = constraints.len();
    let slack_count = constraints
        .iter()
        .filter(|c| c.relation == Relation::LessEq)
        .count();

    // Column layout: p (dim) | q (dim) | slacks | artificials.
    let slack_base = 2 * dim;
    let art_base = slack_base + slack_count;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut needs_artificial = Vec::with_capacity(m);
    let mut next_slack = slack_base;

    for c in constraints {
        let mut row = vec![Scalar::zero(); art_base];
        for (j, a) in c.coefficients.iter().enumerate() {
            row[j] = a.clone();
            row[dim + j] = -a;
        }
        let slack = (c.relation == Relation::LessEq).then(|| {
            row[next_slack] = Scalar::from_integer(1.into());
            next_slack += 1;
            next_slack - 1
        });
        let mut b = c.rhs.clone();
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
            b = -b;
        }
        match slack {
            Some(s) if row[s].is_positive() => {
                basis.push(s);
                needs_artificial.push(false);
            }
            _ => {
                basis.push(usize::MAX);
                needs_artificial.push(true);
            }
        }
        rows.push(row);
        rhs.push(b);
    }

    let art_count = needs_artificial.iter().filter(|&&a| a).count();
    let width = art_base + art_count;
    let mut cost = vec![Scalar::zero(); width];
    let mut cost_rhs = Scalar::zero();
    let mut next_art = art_base;
    for i in 0..m {
        rows[i].resize(width, Scalar::zero());
        if needs_artificial[i] {
            rows[i][next_art] = Scalar::from_integer(1.into());
            basis[i] = next_art;
            next_art += 1;
            for (z, a) in cost.iter_mut().zip(&rows[i]).take(art_base) {
                *z -= a;
            }
            cost_rhs -= &rhs[i];
        }
    }

    let mut t = Tableau {
        rows,
        rhs,
        basis,
        cost,
        cost_rhs,
    };

    while let Some(col) = t.entering() {
        // Phase I is bounded below by zero, so a positive pivot always exists.
        let row = t
            .leaving(col)
            .expect("phase-I objective is bounded below");
        t.pivot(row, col);
    }

    if !t.cost_rhs.is_zero() {
        return FeasibilityResult::Empty;
    }

    let mut values = vec![Scalar::zero(); art_base];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < art_base {
            values[b] = t.rhs[i].clone();
        }
    }
    let witness = (0..dim).map(|j| &values[j] - &values[dim + j]).collect();
    FeasibilityResult::Nonempty { witness }
}
