//! Rational scalars.
//!
//! `Q` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator (the normal form maintained by `num_rational`).
//! Serialization uses the strings `"p/q"` or `"p"`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use super::ExactError;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q, ExactError> {
    let s = s.trim();
    let err = || ExactError::Parse(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Q::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| err())?;
        Ok(Q::from_integer(n))
    }
}

pub fn format_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(format_q).collect();
    format!("({})", parts.join(","))
}

/// Scales a nonzero vector by a positive factor to coprime integer entries.
pub fn primitive(v: &[Q]) -> Vec<Q> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

/// Like [`primitive`], additionally flipping the sign so the first nonzero
/// entry is positive. Only valid for directions whose sign is irrelevant
/// (lineality and equation bases).
pub fn primitive_unsigned(v: &[Q]) -> Vec<Q> {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => p.into_iter().map(|x| -x).collect(),
        _ => p,
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Q, v: &[Q]) -> Vec<Q> {
    v.iter().map(|x| c * x).collect()
}

pub fn neg_vec(v: &[Q]) -> Vec<Q> {
    v.iter().map(|x| -x).collect()
}

pub fn unit(n: usize, j: usize) -> Vec<Q> {
    (0..n).map(|i| if i == j { Q::one() } else { Q::zero() }).collect()
}

/// Coordinates where `v` is nonzero.
pub fn support(v: &[Q]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}

/// Serde adapters: rationals as strings.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = RationalRepr::deserialize(d)?;
        s.into_q().map_err(serde::de::Error::custom)
    }

    /// Accepts `"p/q"` strings and plain JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalRepr {
        Str(String),
        Int(i64),
    }

    impl RationalRepr {
        pub(crate) fn into_q(self) -> Result<Q, ExactError> {
            match self {
                RationalRepr::Str(s) => parse_q(&s),
                RationalRepr::Int(i) => Ok(q(i)),
            }
        }
    }
}

pub mod serde_qvec {
    use super::serde_q::RationalRepr;
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&format_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let raw = Vec::<RationalRepr>::deserialize(d)?;
        raw.into_iter().map(|r| r.into_q().map_err(serde::de::Error::custom)).collect()
    }
}

pub mod serde_qmat {
    use super::serde_q::RationalRepr;
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(m: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            let strs: Vec<String> = row.iter().map(format_q).collect();
            seq.serialize_element(&strs)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        let raw = Vec::<Vec<RationalRepr>>::deserialize(d)?;
        raw.into_iter()
            .map(|row| row.into_iter().map(|r| r.into_q().map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

pub mod serde_opt_qvec {
    use super::serde_q::RationalRepr;
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Q>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.iter().map(format_q).collect::<Vec<_>>()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Q>>, D::Error> {
        let raw = Option::<Vec<RationalRepr>>::deserialize(d)?;
        raw.map(|v| v.into_iter().map(|r| r.into_q().map_err(serde::de::Error::custom)).collect()).transpose()
    }
}
