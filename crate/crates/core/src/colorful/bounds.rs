//! Exact comparisons against `max{a/(d+1), 1 - (d+1)(1-a)^(1/(d+1))}` and
//! `1 - (1-a)^(1/(d+1))`.
//!
//! With `t = (1 - alpha)^(1/(d+1)) >= 0`, every comparison `t <= y` or `t >= y`
//! against a rational `y` is restated as `y >= 0 && y^(d+1) >= 1 - alpha`
//! (resp. `y < 0 || y^(d+1) <= 1 - alpha`), so no root is ever taken.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{exact_root, pow, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    alpha: Scalar,
    d: usize,
    /// `1 - alpha`, the radicand.
    deficit: Scalar,
}

impl BoundValue {
    pub fn new(alpha: Scalar, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::malformed("dimension must be positive"));
        }
        if !alpha.is_positive() || alpha > Scalar::one() {
            return Err(Error::malformed(format!("alpha = {alpha} outside (0, 1]")));
        }
        let deficit = Scalar::one() - &alpha;
        Ok(BoundValue { alpha, d, deficit })
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn d(&self) -> usize {
        self.d
    }

    fn k(&self) -> usize {
        self.d + 1
    }

    fn k_scalar(&self) -> Scalar {
        Scalar::from_integer(self.k().into())
    }

    fn root_at_most(&self, y: &Scalar) -> bool {
        !y.is_negative() && pow(y, self.k()) >= self.deficit
    }

    fn root_at_least(&self, y: &Scalar) -> bool {
        y.is_negative() || pow(y, self.k()) <= self.deficit
    }

    /// `alpha / (d + 1)`.
    pub fn linear_term(&self) -> Scalar {
        &self.alpha / self.k_scalar()
    }

    /// `1 - (d+1)(1-alpha)^(1/(d+1))` when the root is rational.
    pub fn root_term_exact(&self) -> Option<Scalar> {
        exact_root(&self.deficit, self.k()).map(|t| Scalar::one() - self.k_scalar() * t)
    }

    /// Is `1 - (d+1) t <= x`?
    pub fn root_term_at_most(&self, x: &Scalar) -> bool {
        self.root_at_least(&((Scalar::one() - x) / self.k_scalar()))
    }

    /// Is `1 - (d+1) t >= x`?
    pub fn root_term_at_least(&self, x: &Scalar) -> bool {
        self.root_at_most(&((Scalar::one() - x) / self.k_scalar()))
    }

    /// Is `1 - t <= x`?
    pub fn upper_term_at_most(&self, x: &Scalar) -> bool {
        self.root_at_least(&(Scalar::one() - x))
    }

    /// Is `1 - t >= x`?
    pub fn upper_term_at_least(&self, x: &Scalar) -> bool {
        self.root_at_most(&(Scalar::one() - x))
    }

    /// `beta >= max{alpha/(d+1), 1 - (d+1) t}`.
    pub fn lower_bound_holds(&self, beta: &Scalar) -> bool {
        *beta >= self.linear_term() && self.root_term_at_most(beta)
    }

    /// `beta <= 1 - t`.
    pub fn upper_bound_holds(&self, beta: &Scalar) -> bool {
        self.upper_term_at_least(beta)
    }

    /// `beta - (1 - t) <= slack`, i.e. `(1 - beta + slack)^(d+1) >= 1 - alpha`.
    pub fn upper_gap_within(&self, beta: &Scalar, slack: &Scalar) -> bool {
        self.upper_term_at_least(&(beta - slack))
    }

    /// Which term attains the maximum; ties go to the linear term.
    pub fn linear_term_dominates(&self) -> bool {
        self.root_term_at_most(&self.linear_term())
    }

    /// The lower bound as a rational, if it is one.
    pub fn lower_bound_exact(&self) -> Option<Scalar> {
        if self.linear_term_dominates() {
            Some(self.linear_term())
        } else {
            self.root_term_exact()
        }
    }

    pub fn upper_bound_exact(&self) -> Option<Scalar> {
        exact_root(&self.deficit, self.k()).map(|t| Scalar::one() - t)
    }

    /// Rational interval of width at most `2^-bits` containing the lower bound.
    pub fn lower_bound_enclosure(&self, bits: u32) -> (Scalar, Scalar) {
        if let Some(v) = self.lower_bound_exact() {
            return (v.clone(), v);
        }
        let lo = Scalar::one() - self.k_scalar();
        bisect(lo, Scalar::one(), bits, |x| self.root_term_at_most(x))
    }

    /// Rational interval of width at most `2^-bits` containing `1 - t`.
    pub fn upper_bound_enclosure(&self, bits: u32) -> (Scalar, Scalar) {
        if let Some(v) = self.upper_bound_exact() {
            return (v.clone(), v);
        }
        bisect(Scalar::zero(), Scalar::one(), bits, |x| self.upper_term_at_most(x))
    }
}

/// Shrinks `[lo, hi]` around the value characterised by `value_at_most`.
fn bisect(
    mut lo: Scalar,
    mut hi: Scalar,
    bits: u32,
    value_at_most: impl Fn(&Scalar) -> bool,
) -> (Scalar, Scalar) {
    let width = Scalar::new(1.into(), num_bigint::BigInt::from(2u8).pow(bits));
    let two = Scalar::from_integer(2.into());
    while &hi - &lo > width {
        let mid = (&lo + &hi) / &two;
        if value_at_most(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

fn check_beta(beta: &Scalar) -> Result<()> {
    if beta.is_negative() || *beta > Scalar::one() {
        return Err(Error::malformed(format!("beta = {beta} outside [0, 1]")));
    }
    Ok(())
}

/// `beta >= max{alpha/(d+1), 1 - (d+1)(1-alpha)^(1/(d+1))}`, decided exactly.
pub fn beta_lower_bound_holds(beta: &Scalar, alpha: &Scalar, d: usize) -> Result<bool> {
    check_beta(beta)?;
    Ok(BoundValue::new(alpha.clone(), d)?.lower_bound_holds(beta))
}

/// `beta <= 1 - (1-alpha)^(1/(d+1))`, decided exactly.
pub fn beta_upper_bound_holds(beta: &Scalar, alpha: &Scalar, d: usize) -> Result<bool> {
    check_beta(beta)?;
    Ok(BoundValue::new(alpha.clone(), d)?.upper_bound_holds(beta))
}
