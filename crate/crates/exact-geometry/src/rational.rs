//! Rational scalars and their JSON encoding.
//!
//! Rationals serialize as the string "p/q" (reduced, q > 0) or as a bare
//! JSON integer when the denominator is 1 and the value fits in i64. Both
//! forms are accepted on input. No decimal notation anywhere.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};
use std::fmt;

use crate::GeomError;

/// Exact rational scalar. BigRational keeps gcd(p, q) = 1 and q > 0.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// p/q as a rational; q must be nonzero.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses "p/q" or a bare integer string.
pub fn parse_rat(s: &str) -> Result<Rat, GeomError> {
    let bad = || GeomError::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
        Some((ps, qs)) => {
            let p: BigInt = ps.trim().parse().map_err(|_| bad())?;
            let q: BigInt = qs.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Renders "p" when integral, "p/q" otherwise. Inverse of `parse_rat`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn serialize<S: Serializer>(r: &Rat, ser: S) -> Result<S::Ok, S::Error> {
    if r.denom().is_one() {
        if let Some(n) = to_i64(r.numer()) {
            return ser.serialize_i64(n);
        }
    }
    ser.serialize_str(&format_rat(r))
}

fn to_i64(n: &BigInt) -> Option<i64> {
    num::ToPrimitive::to_i64(n)
}

struct RatVisitor;

impl<'de> Visitor<'de> for RatVisitor {
    type Value = Rat;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "an integer or a \"p/q\" string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
        Ok(rat_i(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
        Ok(Rat::from_integer(BigInt::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
        parse_rat(v).map_err(|e| E::custom(e.to_string()))
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
    de.deserialize_any(RatVisitor)
}

/// serde adapter for Vec<Rat>.
pub mod rat_vec {
    use super::{Rat, RatVisitor};
    use serde::de::{SeqAccess, Visitor};
    use serde::ser::SerializeSeq;
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(v: &[Rat], ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&super::SerdeRat(r))?;
        }
        seq.end()
    }

    struct VecVisitor;

    impl<'de> Visitor<'de> for VecVisitor {
        type Value = Vec<Rat>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            write!(f, "an array of rationals")
        }

        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vec<Rat>, A::Error> {
            let mut out = Vec::new();
            while let Some(r) = seq.next_element_seed(super::RatSeed)? {
                out.push(r)
            }
            Ok(out)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rat>, D::Error> {
        de.deserialize_seq(VecVisitor)
    }

    // keep RatVisitor reachable from the parent adapter
    #[allow(dead_code)]
    fn _anchor() {
        let _ = RatVisitor;
    }
}

/// serde adapter for Vec<Vec<Rat>> (matrices).
pub mod rat_mat {
    use super::Rat;
    use serde::de::{SeqAccess, Visitor};
    use serde::ser::SerializeSeq;
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(m: &[Vec<Rat>], ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(m.len()))?;
        for row in m {
            seq.serialize_element(&super::SerdeRatVec(row))?;
        }
        seq.end()
    }

    struct MatVisitor;

    impl<'de> Visitor<'de> for MatVisitor {
        type Value = Vec<Vec<Rat>>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            write!(f, "an array of rational rows")
        }

        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
            let mut out = Vec::new();
            while let Some(r) = seq.next_element_seed(super::RatVecSeed)? {
                out.push(r)
            }
            Ok(out)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Vec<Rat>>, D::Error> {
        de.deserialize_seq(MatVisitor)
    }
}

/// Owned rational with the "p/q" string (or bare integer) JSON encoding,
/// for use as a map value or inside derived containers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RatLit(pub Rat);

impl serde::Serialize for RatLit {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        serialize(&self.0, ser)
    }
}

impl<'de> serde::Deserialize<'de> for RatLit {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        deserialize(de).map(RatLit)
    }
}

/// Wrapper giving a Serialize impl to a borrowed rational.
pub struct SerdeRat<'a>(pub &'a Rat);

impl serde::Serialize for SerdeRat<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        serialize(self.0, ser)
    }
}

/// Wrapper giving a Serialize impl to a borrowed rational vector.
pub struct SerdeRatVec<'a>(pub &'a [Rat]);

impl serde::Serialize for SerdeRatVec<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        rat_vec::serialize(self.0, ser)
    }
}

struct RatSeed;

impl<'de> de::DeserializeSeed<'de> for RatSeed {
    type Value = Rat;
    fn deserialize<D: Deserializer<'de>>(self, de: D) -> Result<Rat, D::Error> {
        deserialize(de)
    }
}

struct RatVecSeed;

impl<'de> de::DeserializeSeed<'de> for RatVecSeed {
    type Value = Vec<Rat>;
    fn deserialize<D: Deserializer<'de>>(self, de: D) -> Result<Vec<Rat>, D::Error> {
        rat_vec::deserialize(de)
    }
}

/// Smallest positive integer multiplier clearing all denominators.
pub fn common_denominator(vals: &[Rat]) -> BigInt {
    let mut acc = BigInt::one();
    for v in vals {
        acc = num::integer::lcm(acc, v.denom().clone());
    }
    acc.abs()
}
