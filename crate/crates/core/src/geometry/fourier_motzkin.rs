//! Fourier–Motzkin elimination, kept as an independent feasibility oracle.
//!
//! Equalities are used for Gaussian substitution whenever they mention the
//! variable being eliminated, so only genuine inequality pairs multiply.
//! Rows are normalised (leading coefficient magnitude one) and dominated
//! duplicates dropped after every step. Meant for test-scale systems only.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use super::{LinearConstraint, Relation};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone)]
struct Row {
    coeffs: Vec<Scalar>,
    rhs: Scalar,
}

impl Row {
    fn scaled(&self, k: &Scalar) -> Row {
        Row {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
            rhs: &self.rhs * k,
        }
    }

    fn minus(&self, other: &Row) -> Row {
        Row {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            rhs: &self.rhs - &other.rhs,
        }
    }

    fn plus(&self, other: &Row) -> Row {
        Row {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            rhs: &self.rhs + &other.rhs,
        }
    }

    /// Positive rescaling so the first nonzero coefficient has magnitude one.
    fn normalized(self) -> Row {
        match self.coeffs.iter().find(|a| !a.is_zero()) {
            Some(lead) => {
                let k = lead.abs().recip();
                self.scaled(&k)
            }
            None => self,
        }
    }
}

/// Decides feasibility of the system by eliminating every variable.
pub fn fourier_motzkin_feasible(constraints: &[LinearConstraint], dim: usize) -> Result<bool> {
    if dim == 0 {
        return Err(Error::malformed("dimension must be positive"));
    }
    if constraints.iter().any(|c| c.dim() != dim) {
        return Err(Error::malformed("constraint dimension mismatch"));
    }
    let mut eqs = Vec::new();
    let mut ineqs = Vec::new();
    for c in constraints {
        let row = Row {
            coeffs: c.coefficients.clone(),
            rhs: c.rhs.clone(),
        };
        match c.relation {
            Relation::Eq => eqs.push(row),
            Relation::LessEq => ineqs.push(row),
        }
    }

    for var in 0..dim {
        if let Some(pos) = eqs.iter().position(|r| !r.coeffs[var].is_zero()) {
            let pivot = eqs.swap_remove(pos);
            let pivot = pivot.scaled(&pivot.coeffs[var].recip());
            for r in eqs.iter_mut().chain(ineqs.iter_mut()) {
                if !r.coeffs[var].is_zero() {
                    let k = r.coeffs[var].clone();
                    *r = r.minus(&pivot.scaled(&k));
                }
            }
        } else {
            let (mut upper, mut lower, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for r in ineqs {
                if r.coeffs[var].is_positive() {
                    upper.push(r);
                } else if r.coeffs[var].is_negative() {
                    lower.push(r);
                } else {
                    rest.push(r);
                }
            }
            for u in &upper {
                let u = u.scaled(&u.coeffs[var].recip());
                for l in &lower {
                    let l = l.scaled(&(-&l.coeffs[var]).recip());
                    rest.push(u.plus(&l));
                }
            }
            ineqs = rest;
        }
        if !constant_rows_consistent(&mut eqs, &mut ineqs) {
            return Ok(false);
        }
        ineqs = dedupe(ineqs);
    }
    Ok(constant_rows_consistent(&mut eqs, &mut ineqs))
}

/// Checks and removes rows whose coefficients are all zero.
fn constant_rows_consistent(eqs: &mut Vec<Row>, ineqs: &mut Vec<Row>) -> bool {
    let is_const = |r: &Row| r.coeffs.iter().all(Zero::is_zero);
    if eqs.iter().any(|r| is_const(r) && !r.rhs.is_zero())
        || ineqs.iter().any(|r| is_const(r) && r.rhs.is_negative())
    {
        return false;
    }
    eqs.retain(|r| !is_const(r));
    ineqs.retain(|r| !is_const(r));
    true
}

/// Keeps, for each normalized direction, only the tightest right-hand side.
fn dedupe(ineqs: Vec<Row>) -> Vec<Row> {
    let mut tightest: HashMap<Vec<Scalar>, Scalar> = HashMap::new();
    let mut order = Vec::new();
    for r in ineqs.into_iter().map(Row::normalized) {
        match tightest.get_mut(&r.coeffs) {
            Some(b) => {
                if r.rhs < *b {
                    *b = r.rhs;
                }
            }
            None => {
                order.push(r.coeffs.clone());
                tightest.insert(r.coeffs, r.rhs);
            }
        }
    }
    order
        .into_iter()
        .map(|coeffs| {
            let rhs = tightest.remove(&coeffs).expect("inserted above");
            Row { coeffs, rhs }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn c(coeffs: &[i64], rel: Relation, rhs: i64) -> LinearConstraint {
        LinearConstraint::new(coeffs.iter().map(|&a| int(a)).collect(), rel, int(rhs))
    }

    #[test]
    fn small_cases() {
        let empty = [c(&[1], Relation::LessEq, 1), c(&[-1], Relation::LessEq, -2)];
        assert!(!fourier_motzkin_feasible(&empty, 1).unwrap());
        let triangle = [
            c(&[-1, 0], Relation::LessEq, 0),
            c(&[0, -1], Relation::LessEq, 0),
            c(&[1, 1], Relation::LessEq, 1),
        ];
        assert!(fourier_motzkin_feasible(&triangle, 2).unwrap());
        let lines = [
            c(&[1, 1], Relation::Eq, 1),
            c(&[1, -1], Relation::Eq, 0),
            c(&[1, 0], Relation::Eq, 1),
        ];
        assert!(!fourier_motzkin_feasible(&lines, 2).unwrap());
        assert!(fourier_motzkin_feasible(&[], 3).unwrap());
    }
}
