//! Exact rational scalars and the few numeric helpers the bound algebra needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational. `BigRational` keeps itself reduced with a
/// positive denominator, so structural equality is value equality.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q` or a bare integer. Zero denominators are rejected.
pub fn parse(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::malformed(format!("not a rational literal: {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::malformed(format!("zero denominator in {text:?}")));
            }
            Ok(Scalar::new(p, q))
        }
        None => Ok(Scalar::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// Shortest literal: integers print bare, everything else as `p/q`.
pub fn to_literal(v: &Scalar) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Always `p/q`, including `1/1`. Used in reports and CSV.
pub fn to_ratio_string(v: &Scalar) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn floor_to_i64(v: &Scalar) -> Option<i64> {
    let f = v.numer().div_floor(v.denom());
    i64::try_from(f).ok()
}

pub fn pow(v: &Scalar, exp: usize) -> Scalar {
    let mut out = Scalar::one();
    for _ in 0..exp {
        out *= v;
    }
    out
}

/// The exact `k`-th root of a non-negative rational, if it is rational.
pub fn exact_root(v: &Scalar, k: usize) -> Option<Scalar> {
    if v.is_negative() || k == 0 {
        return None;
    }
    let k32 = u32::try_from(k).ok()?;
    let p = v.numer().nth_root(k32);
    let q = v.denom().nth_root(k32);
    let candidate = Scalar::new(p, q);
    (pow(&candidate, k) == *v).then_some(candidate)
}

pub(crate) mod serde_ratio {
    use serde::Serializer;

    use super::{to_ratio_string, Scalar};

    pub fn serialize<S: Serializer>(v: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_ratio_string(v))
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Scalar>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.serialize_str(&to_ratio_string(v)),
                None => s.serialize_none(),
            }
        }
    }

    pub mod vec {
        use serde::ser::SerializeSeq;

        use super::*;

        pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&to_ratio_string(x))?;
            }
            seq.end()
        }
    }
}
