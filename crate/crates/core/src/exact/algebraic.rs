//! Real algebraic numbers of degree at most two.
//!
//! A number is either rational or the unique root of a monic irreducible
//! quadratic inside an open rational isolating interval. Comparisons and
//! sign evaluations are exact: intervals are refined by bisection, and the
//! two conjugate roots of a quadratic are separated by its axis `-b/2`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;
use super::rational::{format_q, q, serde_q, Q};
use super::ExactError;

#[derive(Clone)]
pub struct AlgebraicNumber {
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    Rational(Q),
    /// Root of `poly` (monic, degree 2, no rational roots) in `(lo, hi)`.
    Quadratic { poly: Poly, lo: Q, hi: Q },
}

fn sign(x: &Q) -> Ordering {
    x.cmp(&Q::zero())
}

fn perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    Some(Q::new(perfect_square(x.numer())?, perfect_square(x.denom())?))
}

impl AlgebraicNumber {
    pub fn rational(x: Q) -> Self {
        AlgebraicNumber { repr: Repr::Rational(x) }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(q(n))
    }

    /// All real roots of a polynomial of degree 1 or 2, ascending.
    pub fn roots_of(p: &Poly) -> Vec<AlgebraicNumber> {
        match p.degree() {
            Some(1) => vec![Self::rational(-p.coeff(0) / p.coeff(1))],
            Some(2) => {
                let m = p.monic();
                let (b, c) = (m.coeff(1), m.coeff(0));
                let disc = &b * &b - Q::from_integer(4.into()) * &c;
                if disc.is_negative() {
                    return Vec::new();
                }
                let half = Q::new(1.into(), 2.into());
                if let Some(s) = rational_sqrt(&disc) {
                    let r1 = (-&b - &s) * &half;
                    let r2 = (-&b + &s) * &half;
                    if s.is_zero() {
                        return vec![Self::rational(r1)];
                    }
                    return vec![Self::rational(r1), Self::rational(r2)];
                }
                // sqrt(n/d) lies strictly between s/d and (s+1)/d with s = isqrt(n d) >= 1.
                let nd = disc.numer() * disc.denom();
                let s = nd.sqrt();
                let d = disc.denom().clone();
                let lo_sqrt = Q::new(s.clone(), d.clone());
                let hi_sqrt = Q::new(s + 1, d);
                let minus = Repr::Quadratic {
                    poly: m.clone(),
                    lo: (-&b - &hi_sqrt) * &half,
                    hi: (-&b - &lo_sqrt) * &half,
                };
                let plus = Repr::Quadratic {
                    poly: m,
                    lo: (-&b + &lo_sqrt) * &half,
                    hi: (-&b + &hi_sqrt) * &half,
                };
                vec![AlgebraicNumber { repr: minus }, AlgebraicNumber { repr: plus }]
            }
            _ => Vec::new(),
        }
    }

    /// Builds the root of `defining` inside `[lo, hi]`; the interval must
    /// contain exactly one root.
    pub fn from_isolator(defining: &Poly, lo: &Q, hi: &Q) -> Result<Self, ExactError> {
        if defining.degree().is_none_or(|d| d == 0 || d > 2) {
            return Err(ExactError::Algebraic(format!("defining polynomial {defining} must have degree 1 or 2")));
        }
        if lo > hi {
            return Err(ExactError::Algebraic("isolating interval has lo > hi".into()));
        }
        let inside: Vec<_> = Self::roots_of(defining)
            .into_iter()
            .filter(|r| r.cmp_q(lo) != Ordering::Less && r.cmp_q(hi) != Ordering::Greater)
            .collect();
        match inside.len() {
            1 => Ok(inside.into_iter().next().unwrap()),
            n => Err(ExactError::Algebraic(format!("interval [{}, {}] holds {n} roots of {defining}", format_q(lo), format_q(hi)))),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.repr, Repr::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match &self.repr {
            Repr::Rational(x) => Some(x),
            Repr::Quadratic { .. } => None,
        }
    }

    /// Minimal polynomial (monic).
    pub fn defining(&self) -> Poly {
        match &self.repr {
            Repr::Rational(x) => Poly::linear(-x.clone(), Q::one()),
            Repr::Quadratic { poly, .. } => poly.clone(),
        }
    }

    /// Rational bounds `lo <= self <= hi` (strict when irrational).
    pub fn bounds(&self) -> (Q, Q) {
        match &self.repr {
            Repr::Rational(x) => (x.clone(), x.clone()),
            Repr::Quadratic { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }

    /// Halves the isolating interval.
    pub fn refine(&mut self) {
        if let Repr::Quadratic { poly, lo, hi } = &mut self.repr {
            let mid = (&*lo + &*hi) / Q::from_integer(2.into());
            // poly has no rational roots, so the sign at mid is nonzero
            if sign(&poly.eval(&mid)) == sign(&poly.eval(lo)) {
                *lo = mid;
            } else {
                *hi = mid;
            }
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_q(&self, r: &Q) -> Ordering {
        match &self.repr {
            Repr::Rational(x) => x.cmp(r),
            Repr::Quadratic { .. } => {
                let mut a = self.clone();
                loop {
                    let (lo, hi) = a.bounds();
                    if *r <= lo {
                        return Ordering::Greater;
                    }
                    if *r >= hi {
                        return Ordering::Less;
                    }
                    a.refine();
                }
            }
        }
    }

    /// Sign of `p(self)`, exactly.
    pub fn sign_of(&self, p: &Poly) -> Ordering {
        match &self.repr {
            Repr::Rational(x) => sign(&p.eval(x)),
            Repr::Quadratic { poly, .. } => {
                let r = p.rem(poly);
                let (c0, c1) = (r.coeff(0), r.coeff(1));
                if c1.is_zero() {
                    return sign(&c0);
                }
                // sign(c1 * (self - (-c0/c1)))
                let s = self.cmp_q(&(-c0 / &c1));
                if c1.is_negative() {
                    s.reverse()
                } else {
                    s
                }
            }
        }
    }

    pub fn is_root_of(&self, p: &Poly) -> bool {
        self.sign_of(p) == Ordering::Equal
    }

    /// A rational strictly between `a < b`.
    pub fn rational_between(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Q {
        debug_assert!(a < b);
        let (mut a, mut b) = (a.clone(), b.clone());
        loop {
            let (_, ahi) = a.bounds();
            let (blo, _) = b.bounds();
            if ahi < blo {
                let mid = (&ahi + &blo) / Q::from_integer(2.into());
                return mid;
            }
            if ahi == blo && a.cmp_q(&ahi) == Ordering::Less && b.cmp_q(&blo) == Ordering::Greater {
                return ahi;
            }
            a.refine();
            b.refine();
        }
    }

    /// A decimal approximation for human-readable reports only.
    pub fn approx(&self) -> f64 {
        let mut a = self.clone();
        for _ in 0..60 {
            a.refine();
        }
        let (lo, hi) = a.bounds();
        let mid = (lo + hi) / Q::from_integer(2.into());
        mid.numer().to_string().parse::<f64>().unwrap_or(f64::NAN) / mid.denom().to_string().parse::<f64>().unwrap_or(f64::NAN)
    }
}

impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Rational(x), _) => other.cmp_q(x).reverse(),
            (_, Repr::Rational(y)) => self.cmp_q(y),
            (Repr::Quadratic { poly: p1, .. }, Repr::Quadratic { poly: p2, .. }) => {
                if p1 == p2 {
                    let axis = -p1.coeff(1) / Q::from_integer(2.into());
                    let s1 = self.cmp_q(&axis);
                    let s2 = other.cmp_q(&axis);
                    return s1.cmp(&s2);
                }
                // distinct minimal polynomials: distinct numbers
                let (mut a, mut b) = (self.clone(), other.clone());
                loop {
                    let (alo, ahi) = a.bounds();
                    let (blo, bhi) = b.bounds();
                    if ahi <= blo {
                        return Ordering::Less;
                    }
                    if bhi <= alo {
                        return Ordering::Greater;
                    }
                    a.refine();
                    b.refine();
                }
            }
        }
    }
}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicNumber {}

impl From<Q> for AlgebraicNumber {
    fn from(x: Q) -> Self {
        AlgebraicNumber::rational(x)
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(x) => write!(f, "{}", format_q(x)),
            Repr::Quadratic { poly, lo, hi } => {
                write!(f, "root({}) in [{}, {}] ~ {:.6}", poly, format_q(lo), format_q(hi), self.approx())
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    poly: Vec<WireQ>,
    lo: WireQ,
    hi: WireQ,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct WireQ(#[serde(with = "serde_q")] Q);

impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if let Some(x) = self.as_rational() {
            return WireQ(x.clone()).serialize(s);
        }
        let poly = self.defining();
        let mut cs: Vec<WireQ> = poly.coeffs().iter().cloned().map(WireQ).collect();
        cs.resize_with(3, || WireQ(Q::zero()));
        let (lo, hi) = self.bounds();
        Wire { poly: cs, lo: WireQ(lo), hi: WireQ(hi) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Either {
            Plain(#[serde(with = "serde_q")] Q),
            Full(Wire),
        }
        match Either::deserialize(d)? {
            Either::Plain(x) => Ok(AlgebraicNumber::rational(x)),
            Either::Full(w) => {
                let poly = Poly::new(w.poly.into_iter().map(|c| c.0).collect());
                AlgebraicNumber::from_isolator(&poly, &w.lo.0, &w.hi.0).map_err(serde::de::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qf;

    fn sqrt_half() -> AlgebraicNumber {
        // root of t^2 - 1/2 in [0, 1]
        AlgebraicNumber::from_isolator(&Poly::new(vec![qf(-1, 2), q(0), q(1)]), &q(0), &q(1)).unwrap()
    }

    #[test]
    fn half_below_sqrt_half() {
        let a = AlgebraicNumber::rational(qf(1, 2));
        assert_eq!(a.cmp(&sqrt_half()), Ordering::Less);
        assert_eq!(sqrt_half().cmp(&sqrt_half()), Ordering::Equal);
        assert!(AlgebraicNumber::rational(qf(-1, 2)) < AlgebraicNumber::rational(qf(1, 2)));
    }

    #[test]
    fn conjugates_ordered() {
        let rs = AlgebraicNumber::roots_of(&Poly::from_ints(&[-2, 0, 1]));
        assert_eq!(rs.len(), 2);
        assert!(rs[0] < rs[1]);
        assert_eq!(rs[0].cmp_q(&q(0)), Ordering::Less);
        assert!(rs[1].is_root_of(&Poly::from_ints(&[-2, 0, 1])));
    }

    #[test]
    fn rational_roots_detected() {
        let rs = AlgebraicNumber::roots_of(&Poly::new(vec![qf(-1, 4), q(0), q(1)]));
        assert_eq!(rs, vec![AlgebraicNumber::rational(qf(-1, 2)), AlgebraicNumber::rational(qf(1, 2))]);
        assert!(rs.iter().all(|r| r.is_rational()));
    }

    #[test]
    fn distinct_minimal_polys() {
        let r2 = AlgebraicNumber::roots_of(&Poly::from_ints(&[-2, 0, 1]))[1].clone(); // sqrt 2
        let r3 = AlgebraicNumber::roots_of(&Poly::from_ints(&[-3, 0, 1]))[1].clone(); // sqrt 3
        assert!(r2 < r3);
        let between = AlgebraicNumber::rational_between(&r2, &r3);
        assert!(r2.cmp_q(&between) == Ordering::Less && r3.cmp_q(&between) == Ordering::Greater);
    }

    #[test]
    fn sign_at_irrational() {
        let s = sqrt_half();
        assert_eq!(s.sign_of(&Poly::from_ints(&[0, 1])), Ordering::Greater);
        // t^2 - 1/2 vanishes, 2t^3 - t = t(2t^2 - 1) vanishes too
        assert!(s.is_root_of(&Poly::from_ints(&[0, -1, 0, 2])));
        assert_eq!(s.sign_of(&Poly::from_ints(&[-1, 0, 1])), Ordering::Less);
    }

    #[test]
    fn serde_roundtrip() {
        let s = sqrt_half();
        let j = serde_json::to_string(&s).unwrap();
        let back: AlgebraicNumber = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        let r: AlgebraicNumber = serde_json::from_str("\"-1/2\"").unwrap();
        assert_eq!(r, AlgebraicNumber::rational(qf(-1, 2)));
    }

    proptest::proptest! {
        #[test]
        fn total_order(a in 1i64..30, b in 1i64..30, c in 1i64..30, sa in proptest::bool::ANY, sb in proptest::bool::ANY) {
            let mk = |n: i64, s: bool| {
                let rs = AlgebraicNumber::roots_of(&Poly::new(vec![Q::new((-n).into(), 7.into()), q(0), q(1)]));
                rs[if s { 1 } else { 0 }].clone()
            };
            let x = mk(a, sa);
            let y = mk(b, sb);
            let z = AlgebraicNumber::rational(Q::new(c.into(), 13.into()));
            proptest::prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
            if x <= y && y <= z { proptest::prop_assert!(x <= z); }
            if z <= x && x <= y { proptest::prop_assert!(z <= y); }
        }
    }
}
