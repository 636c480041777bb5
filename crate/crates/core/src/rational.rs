//! Exact rational scalars and vectors.
//!
//! Everything in this crate is computed over `BigRational`; lattice vectors
//! are small `i64` tuples that are lifted into `Q` whenever a polyhedral
//! routine needs them. Rationals travel through JSON as strings `"p/q"`
//! (or `"p"` when the denominator is one).

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

pub type Q = BigRational;
pub type QVec = Vec<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(v: &[i64]) -> QVec {
    v.iter().map(|&x| q(x)).collect()
}

pub fn zero_vec(n: usize) -> QVec {
    vec![Q::zero(); n]
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_qi(a: &[Q], b: &[i64]) -> Q {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter()
        .zip(b)
        .fold(Q::zero(), |acc, (x, &y)| acc + x * BigInt::from(y))
}

pub fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Q, a: &[Q]) -> QVec {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Q]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Integer vector if every entry is integral and fits in `i64`.
pub fn to_int_vec(a: &[Q]) -> Option<Vec<i64>> {
    a.iter()
        .map(|x| {
            if x.is_integer() {
                x.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

/// The primitive integer vector on the ray through `a`.
///
/// Returns `None` for the zero vector.
pub fn primitive_on_ray(a: &[Q]) -> Option<Vec<i64>> {
    if is_zero_vec(a) {
        return None;
    }
    let lcm = a
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = a.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter().map(|x| (x / &g).to_i64()).collect()
}

/// Positive rescaling of `a` to a primitive integer vector, kept in `Q`.
pub fn normalize_ray(a: &[Q]) -> QVec {
    match primitive_on_ray(a) {
        Some(v) => qvec(&v),
        None => a.to_vec(),
    }
}

pub fn gcd_i(a: &[i64]) -> i64 {
    a.iter().fold(0i64, |acc, &x| acc.gcd(&x))
}

pub fn is_primitive(a: &[i64]) -> bool {
    gcd_i(a) == 1
}

/// `true` when `a = c * b` for some rational `c > 0`.
pub fn positively_parallel(a: &[i64], b: &[i64]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (ga, gb) = (gcd_i(a), gcd_i(b));
    if ga == 0 || gb == 0 {
        return false;
    }
    a.iter().zip(b).all(|(x, y)| x / ga == y / gb)
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn format_qvec(v: &[Q]) -> String {
    let mut out = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{}", format_q(x));
    }
    out.push(')');
    out
}

pub fn parse_q(s: &str) -> Result<Q, Error> {
    let s = s.trim();
    let bad = || Error::MalformedRational(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(n))
        }
    }
}

/// Parses `"1,2/3,-1"` (brackets optional) into a rational vector.
pub fn parse_qvec(s: &str) -> Result<QVec, Error> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(parse_q).collect()
}

pub fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Serde adapter: `Vec<Q>` as a JSON array of `"p/q"` strings.
pub mod serde_qvec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QVec, D::Error> {
        let raw: Vec<serde_json::Value> = Vec::deserialize(d)?;
        raw.iter().map(value_to_q).collect::<Result<_, _>>().map_err(serde::de::Error::custom)
    }

    pub(crate) fn value_to_q(v: &serde_json::Value) -> Result<Q, Error> {
        match v {
            serde_json::Value::String(s) => parse_q(s),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(q)
                .ok_or_else(|| Error::MalformedRational(n.to_string())),
            other => Err(Error::MalformedRational(other.to_string())),
        }
    }
}

/// Serde adapter: `Vec<Vec<Q>>`.
pub mod serde_qmat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[QVec], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter().map(|row| row.iter().map(format_q).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<QVec>, D::Error> {
        let raw: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        raw.iter()
            .map(|row| row.iter().map(super::serde_qvec::value_to_q).collect())
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}
