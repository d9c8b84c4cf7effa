//! Convex sets as linear-constraint systems and exact nonemptiness decisions.

mod fourier_motzkin;
mod general_position;
mod simplex;

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use fourier_motzkin::fourier_motzkin_feasible;
pub use general_position::{is_general_position, rank};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    LessEq,
    Eq,
}

impl Relation {
    pub fn token(self) -> &'static str {
        match self {
            Relation::LessEq => "<=",
            Relation::Eq => "=",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// `coefficients · x  (<= | =)  rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    pub coefficients: Vec<Scalar>,
    pub relation: Relation,
    pub rhs: Scalar,
}

impl LinearConstraint {
    pub fn new(coefficients: Vec<Scalar>, relation: Relation, rhs: Scalar) -> Self {
        LinearConstraint {
            coefficients,
            relation,
            rhs,
        }
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        self.coefficients
            .iter()
            .zip(point)
            .fold(Scalar::zero(), |acc, (a, x)| acc + a * x)
    }

    pub fn is_satisfied_by(&self, point: &[Scalar]) -> bool {
        if point.len() != self.dim() {
            return false;
        }
        let lhs = self.evaluate(point);
        match self.relation {
            Relation::LessEq => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// A convex subset of `R^dim`. No constraints means the whole space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvexSet {
    dim: usize,
    constraints: Vec<LinearConstraint>,
}

impl ConvexSet {
    pub fn new(dim: usize, constraints: Vec<LinearConstraint>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::malformed("dimension must be positive"));
        }
        if let Some(c) = constraints.iter().find(|c| c.dim() != dim) {
            return Err(Error::malformed(format!(
                "constraint has {} coefficients in dimension {dim}",
                c.dim()
            )));
        }
        Ok(ConvexSet { dim, constraints })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn is_whole_space(&self) -> bool {
        self.constraints.is_empty()
    }

    /// True when the set is a single equality, i.e. a hyperplane as built by
    /// [`make_hyperplane`].
    pub fn as_hyperplane(&self) -> Option<&LinearConstraint> {
        match self.constraints.as_slice() {
            [c] if c.relation == Relation::Eq && c.coefficients.iter().any(|a| !a.is_zero()) => {
                Some(c)
            }
            _ => None,
        }
    }

    pub fn contains(&self, point: &[Scalar]) -> bool {
        point.len() == self.dim && self.constraints.iter().all(|c| c.is_satisfied_by(point))
    }
}

pub fn make_whole_space(dim: usize) -> Result<ConvexSet> {
    ConvexSet::new(dim, Vec::new())
}

pub fn make_hyperplane(coefficients: Vec<Scalar>, rhs: Scalar) -> Result<ConvexSet> {
    if coefficients.iter().all(Zero::is_zero) {
        return Err(Error::malformed("hyperplane with zero coefficient vector"));
    }
    let dim = coefficients.len();
    ConvexSet::new(dim, vec![LinearConstraint::new(coefficients, Relation::Eq, rhs)])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityResult {
    Nonempty { witness: Vec<Scalar> },
    Empty,
}

impl FeasibilityResult {
    pub fn is_nonempty(&self) -> bool {
        matches!(self, FeasibilityResult::Nonempty { .. })
    }

    pub fn witness(&self) -> Option<&[Scalar]> {
        match self {
            FeasibilityResult::Nonempty { witness } => Some(witness),
            FeasibilityResult::Empty => None,
        }
    }

    pub fn into_witness(self) -> Option<Vec<Scalar>> {
        match self {
            FeasibilityResult::Nonempty { witness } => Some(witness),
            FeasibilityResult::Empty => None,
        }
    }
}

/// Decides whether the system has a rational solution, returning one if so.
pub fn feasible<'a, I>(constraints: I, dim: usize) -> Result<FeasibilityResult>
where
    I: IntoIterator<Item = &'a LinearConstraint>,
{
    let constraints: Vec<&LinearConstraint> = constraints.into_iter().collect();
    if dim == 0 {
        return Err(Error::malformed("dimension must be positive"));
    }
    if let Some(c) = constraints.iter().find(|c| c.dim() != dim) {
        return Err(Error::malformed(format!(
            "constraint has {} coefficients, expected {dim}",
            c.dim()
        )));
    }
    let result = simplex::phase_one(&constraints, dim);
    if let FeasibilityResult::Nonempty { witness } = &result {
        debug_assert!(constraints.iter().all(|c| c.is_satisfied_by(witness)));
    }
    Ok(result)
}

/// Feasibility of the concatenated constraint systems of `sets`.
pub fn intersect_sets<'a, I>(sets: I) -> Result<FeasibilityResult>
where
    I: IntoIterator<Item = &'a ConvexSet>,
{
    let sets: Vec<&ConvexSet> = sets.into_iter().collect();
    let Some(first) = sets.first() else {
        return Err(Error::malformed("intersection of zero sets"));
    };
    let dim = first.dim();
    if sets.iter().any(|s| s.dim() != dim) {
        return Err(Error::malformed("sets of different dimensions"));
    }
    feasible(sets.iter().flat_map(|s| s.constraints()), dim)
}

/// Outcome of running the simplex path and the Fourier–Motzkin oracle on the
/// same seeded systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialSummary {
    pub total: usize,
    pub agree: usize,
    /// Seed and system of the first disagreement, if any.
    pub first_disagreement: Option<(u64, Vec<LinearConstraint>)>,
}

impl DifferentialSummary {
    pub fn all_agree(&self) -> bool {
        self.agree == self.total
    }
}

/// Compares [`feasible`] with [`fourier_motzkin_feasible`] on `count` random
/// systems in dimension `dim` (seeds `seed, seed + 1, ...`). A simplex witness
/// that fails to satisfy its system also counts as a disagreement.
pub fn differential_check(dim: usize, count: usize, seed: u64) -> Result<DifferentialSummary> {
    if dim == 0 || dim > 3 {
        return Err(Error::malformed("differential check supports 1 <= d <= 3"));
    }
    let mut summary = DifferentialSummary {
        total: count,
        agree: 0,
        first_disagreement: None,
    };
    for k in 0..count as u64 {
        let case_seed = seed.wrapping_add(k);
        let system = crate::generators::gen_random_system(dim, 10, case_seed);
        let lp = feasible(&system, dim)?;
        let sound = lp
            .witness()
            .is_none_or(|w| system.iter().all(|c| c.is_satisfied_by(w)));
        let fm = fourier_motzkin_feasible(&system, dim)?;
        if sound && lp.is_nonempty() == fm {
            summary.agree += 1;
        } else if summary.first_disagreement.is_none() {
            summary.first_disagreement = Some((case_seed, system));
        }
    }
    Ok(summary)
}
