//! Sturm-sequence sign analysis and root isolation on intervals with
//! algebraic endpoints.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::algebraic::AlgebraicNumber;
use super::poly::Poly;
use super::rational::Q;
use super::ExactError;

/// Sign behaviour of a polynomial on a closed interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignClass {
    AllPositive,
    AllNegative,
    IdenticallyZero,
    AllNonnegWithZeros,
    AllNonposWithZeros,
    Mixed,
}

impl SignClass {
    pub fn is_nonneg(self) -> bool {
        matches!(self, SignClass::AllPositive | SignClass::IdenticallyZero | SignClass::AllNonnegWithZeros)
    }

    pub fn is_nonpos(self) -> bool {
        matches!(self, SignClass::AllNegative | SignClass::IdenticallyZero | SignClass::AllNonposWithZeros)
    }
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    chain
}

fn variations(chain: &[Poly], x: &AlgebraicNumber) -> usize {
    let signs: Vec<Ordering> = chain.iter().map(|p| x.sign_of(p)).filter(|s| *s != Ordering::Equal).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct roots of `p` (nonzero) strictly inside `(a, b)`.
pub fn count_roots_open(p: &Poly, a: &AlgebraicNumber, b: &AlgebraicNumber) -> usize {
    if a >= b || p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let mut ps = p.squarefree();
    let mut extra = 0;
    // Divide out endpoint roots (with their conjugates) so Sturm's theorem
    // applies at non-root endpoints, then add back conjugates inside.
    for e in [a, b] {
        if e.is_root_of(&ps) {
            let m = e.defining();
            ps = ps.div_rem(&m).0;
            for r in AlgebraicNumber::roots_of(&m) {
                if &r > a && &r < b {
                    extra += 1;
                }
            }
        }
    }
    if ps.degree().unwrap_or(0) == 0 {
        return extra;
    }
    let chain = sturm_chain(&ps);
    variations(&chain, a) - variations(&chain, b) + extra
}

/// Rationals strictly inside `(a, b)`, at least `k` of them, pairwise distinct.
fn interior_points(a: &AlgebraicNumber, b: &AlgebraicNumber, k: usize) -> Vec<Q> {
    let mut pts = vec![AlgebraicNumber::rational_between(a, b)];
    while pts.len() < k {
        let last = AlgebraicNumber::rational(pts.last().unwrap().clone());
        pts.push(AlgebraicNumber::rational_between(&last, b));
    }
    pts
}

/// Classifies the sign of `p` on the closed interval `[a, b]`, exactly.
pub fn sturm_sign(p: &Poly, a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<SignClass, ExactError> {
    if a >= b {
        return Err(ExactError::DegenerateInterval);
    }
    if p.is_zero() {
        return Ok(SignClass::IdenticallyZero);
    }
    let interior_zero = count_roots_open(p, a, b) > 0;
    let end_zero = a.is_root_of(p) || b.is_root_of(p);
    let odd: Poly = p
        .squarefree_factors()
        .into_iter()
        .filter(|(m, _)| m % 2 == 1)
        .fold(Poly::constant(Q::one()), |acc, (_, f)| &acc * &f);
    if count_roots_open(&odd, a, b) > 0 {
        return Ok(SignClass::Mixed);
    }
    let deg = p.degree().unwrap_or(0);
    let s = interior_points(a, b, deg + 1)
        .into_iter()
        .map(|t| p.eval(&t))
        .find(|v| !v.is_zero())
        .expect("a nonzero polynomial has at most deg roots");
    let with_zeros = interior_zero || end_zero;
    Ok(match (s.is_positive(), with_zeros) {
        (true, false) => SignClass::AllPositive,
        (true, true) => SignClass::AllNonnegWithZeros,
        (false, false) => SignClass::AllNegative,
        (false, true) => SignClass::AllNonposWithZeros,
    })
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, ExactError> {
    let n = n.abs().to_u64().ok_or(ExactError::UnsupportedDegree)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Distinct rational roots of `p` via the rational root theorem.
fn rational_roots(p: &Poly) -> Result<Vec<Q>, ExactError> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Q::zero());
    }
    let a0 = &ints[low];
    let an = ints.last().unwrap();
    if ints.len() - low > 1 {
        for num in divisors(a0)? {
            for den in divisors(an)? {
                for s in [1, -1] {
                    let r = Q::new(&num * s, den.clone());
                    if p.eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    Ok(roots)
}

/// All real roots of `p` in the closed interval `[a, b]`, ascending.
///
/// Roots must have degree at most two over `Q`; a factor of higher degree
/// with a root in the interval yields [`ExactError::UnsupportedDegree`].
pub fn isolate_roots(p: &Poly, a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<Vec<AlgebraicNumber>, ExactError> {
    if a > b {
        return Err(ExactError::DegenerateInterval);
    }
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let mut rest = p.squarefree();
    let mut roots: Vec<AlgebraicNumber> = Vec::new();
    for r in rational_roots(&rest)? {
        rest = rest.div_rem(&Poly::linear(-r.clone(), Q::one())).0;
        roots.push(AlgebraicNumber::rational(r));
    }
    match rest.degree().unwrap_or(0) {
        0 => {}
        2 => roots.extend(AlgebraicNumber::roots_of(&rest)),
        _ => {
            let inside = count_roots_open(&rest, a, b) > 0 || a.is_root_of(&rest) || b.is_root_of(&rest);
            if inside {
                return Err(ExactError::UnsupportedDegree);
            }
        }
    }
    roots.retain(|r| r >= a && r <= b);
    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qf};

    fn alg(x: Q) -> AlgebraicNumber {
        AlgebraicNumber::rational(x)
    }

    fn quarter_poly() -> Poly {
        Poly::new(vec![qf(-1, 4), q(0), q(1)])
    }

    #[test]
    fn sign_examples() {
        let p = quarter_poly();
        assert_eq!(sturm_sign(&p, &alg(qf(-1, 2)), &alg(qf(1, 2))).unwrap(), SignClass::AllNonposWithZeros);
        assert_eq!(sturm_sign(&Poly::zero(), &alg(q(0)), &alg(q(1))).unwrap(), SignClass::IdenticallyZero);
        assert_eq!(sturm_sign(&Poly::from_ints(&[0, 1]), &alg(qf(1, 4)), &alg(q(1))).unwrap(), SignClass::AllPositive);
        assert_eq!(sturm_sign(&p, &alg(q(-1)), &alg(q(1))).unwrap(), SignClass::Mixed);
        // double root inside: (t - 1/3)^2 on [0, 1]
        let sq = Poly::from_roots(&[qf(1, 3), qf(1, 3)]);
        assert_eq!(sturm_sign(&sq, &alg(q(0)), &alg(q(1))).unwrap(), SignClass::AllNonnegWithZeros);
    }

    #[test]
    fn roots_examples() {
        let rs = isolate_roots(&quarter_poly(), &alg(q(-1)), &alg(q(1))).unwrap();
        assert_eq!(rs, vec![alg(qf(-1, 2)), alg(qf(1, 2))]);
        assert!(isolate_roots(&Poly::from_ints(&[1, 0, 1]), &alg(q(-5)), &alg(q(5))).unwrap().is_empty());
        let cubic = Poly::from_roots(&[qf(-2, 3), qf(1, 5), q(2)]).scale(&q(15));
        let rs = isolate_roots(&cubic, &alg(q(-3)), &alg(q(3))).unwrap();
        assert_eq!(rs, vec![alg(qf(-2, 3)), alg(qf(1, 5)), alg(q(2))]);
    }

    #[test]
    fn irrational_endpoints() {
        let rs = AlgebraicNumber::roots_of(&Poly::from_ints(&[-2, 0, 1]));
        // t^2 - 2 on [-sqrt2, sqrt2] is nonpositive, zero at both ends
        let p = Poly::from_ints(&[-2, 0, 1]);
        assert_eq!(sturm_sign(&p, &rs[0], &rs[1]).unwrap(), SignClass::AllNonposWithZeros);
        assert_eq!(count_roots_open(&p, &rs[0], &rs[1]), 0);
        // t on [-sqrt2, sqrt2] has one interior root
        assert_eq!(count_roots_open(&Poly::from_ints(&[0, 1]), &rs[0], &rs[1]), 1);
    }

    #[test]
    fn quartic_without_rational_roots() {
        let p = Poly::from_ints(&[-2, 0, 1]) * Poly::from_ints(&[-3, 0, 1]);
        assert_eq!(isolate_roots(&p, &alg(q(-1)), &alg(q(1))).unwrap(), vec![]);
        assert_eq!(isolate_roots(&p, &alg(q(0)), &alg(q(2))), Err(ExactError::UnsupportedDegree));
    }
}
