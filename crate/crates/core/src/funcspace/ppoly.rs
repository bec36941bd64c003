//! Continuous piecewise polynomials of degree at most two on `[a, b]`.
//!
//! The representation is canonical: adjacent pieces always differ, so two
//! functions are equal exactly when their representations are.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::intervals::{Interval, IntervalSet};
use super::FuncError;
use crate::exact::rational::{format_q, serde_q, Q};
use crate::exact::{isolate_roots, sturm_sign, AlgebraicNumber, Poly};

pub const MAX_DEGREE: usize = 2;

#[derive(Clone, PartialEq, Eq)]
pub struct PPoly {
    a: Q,
    b: Q,
    breakpoints: Vec<AlgebraicNumber>,
    pieces: Vec<Poly>,
}

impl PPoly {
    pub fn new(a: Q, b: Q, breakpoints: Vec<AlgebraicNumber>, pieces: Vec<Poly>) -> Result<Self, FuncError> {
        let bad = |m: &str| Err(FuncError::InvalidPPoly(m.to_string()));
        if a >= b {
            return bad("empty domain");
        }
        if breakpoints.len() != pieces.len() + 1 {
            return bad("need one more breakpoint than pieces");
        }
        if breakpoints[0].cmp_q(&a) != Ordering::Equal || breakpoints[pieces.len()].cmp_q(&b) != Ordering::Equal {
            return bad("breakpoints must start at a and end at b");
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return bad("breakpoints must increase strictly");
        }
        if pieces.iter().any(|p| p.degree().unwrap_or(0) > MAX_DEGREE) {
            return Err(FuncError::DegreeTooHigh);
        }
        for i in 1..pieces.len() {
            if !breakpoints[i].is_root_of(&(&pieces[i - 1] - &pieces[i])) {
                return bad("pieces disagree at a breakpoint");
            }
        }
        Ok(PPoly { a, b, breakpoints, pieces }.merged())
    }

    /// Breakpoints and pieces with rational knots.
    pub fn from_knots(knots: &[Q], pieces: Vec<Poly>) -> Result<Self, FuncError> {
        if knots.len() < 2 {
            return Err(FuncError::InvalidPPoly("need at least two knots".into()));
        }
        let bps = knots.iter().cloned().map(AlgebraicNumber::rational).collect();
        Self::new(knots[0].clone(), knots[knots.len() - 1].clone(), bps, pieces)
    }

    pub fn poly(a: Q, b: Q, p: Poly) -> Result<Self, FuncError> {
        Self::from_knots(&[a, b], vec![p])
    }

    pub fn constant(a: Q, b: Q, c: Q) -> Self {
        Self::poly(a, b, Poly::constant(c)).expect("nonempty domain")
    }

    pub fn zero(a: Q, b: Q) -> Self {
        Self::constant(a, b, Q::zero())
    }

    /// The piecewise-linear interpolant through `(t_k, v_k)`.
    pub fn interpolate(knots: &[Q], values: &[Q]) -> Result<Self, FuncError> {
        if knots.len() != values.len() {
            return Err(FuncError::InvalidPPoly("knot/value count mismatch".into()));
        }
        let pieces = (1..knots.len())
            .map(|i| {
                let slope = (&values[i] - &values[i - 1]) / (&knots[i] - &knots[i - 1]);
                Poly::linear(&values[i - 1] - &slope * &knots[i - 1], slope)
            })
            .collect();
        Self::from_knots(knots, pieces)
    }

    fn merged(mut self) -> Self {
        let mut bps = vec![self.breakpoints[0].clone()];
        let mut pieces: Vec<Poly> = Vec::new();
        for (i, p) in self.pieces.into_iter().enumerate() {
            if pieces.last() == Some(&p) {
                *bps.last_mut().expect("nonempty") = self.breakpoints[i + 1].clone();
            } else {
                pieces.push(p);
                bps.push(self.breakpoints[i + 1].clone());
            }
        }
        self.breakpoints = bps;
        self.pieces = pieces;
        self
    }

    pub fn domain(&self) -> (&Q, &Q) {
        (&self.a, &self.b)
    }

    pub fn breakpoints(&self) -> &[AlgebraicNumber] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].is_zero()
    }

    pub fn is_affine(&self) -> bool {
        self.pieces.iter().all(|p| p.degree().unwrap_or(0) <= 1)
    }

    fn check_domain(&self, other: &PPoly) -> Result<(), FuncError> {
        if self.a == other.a && self.b == other.b {
            Ok(())
        } else {
            Err(FuncError::DomainMismatch)
        }
    }

    fn common_grid(&self, other: &PPoly) -> Vec<AlgebraicNumber> {
        let mut g: Vec<AlgebraicNumber> = self.breakpoints.iter().chain(&other.breakpoints).cloned().collect();
        g.sort();
        g.dedup();
        g
    }

    /// Pieces of `self` on each cell of a finer grid.
    fn pieces_on(&self, grid: &[AlgebraicNumber]) -> Vec<Poly> {
        let mut i = 0;
        grid.windows(2)
            .map(|w| {
                while self.breakpoints[i + 1] < w[1] {
                    i += 1;
                }
                self.pieces[i].clone()
            })
            .collect()
    }

    fn zip_with(&self, other: &PPoly, op: impl Fn(&Poly, &Poly) -> Poly) -> Result<PPoly, FuncError> {
        self.check_domain(other)?;
        let grid = self.common_grid(other);
        let pieces = self.pieces_on(&grid).iter().zip(other.pieces_on(&grid)).map(|(p, q)| op(p, &q)).collect();
        Ok(PPoly { a: self.a.clone(), b: self.b.clone(), breakpoints: grid, pieces }.merged())
    }

    pub fn add(&self, other: &PPoly) -> Result<PPoly, FuncError> {
        self.zip_with(other, |p, q| p + q)
    }

    pub fn sub(&self, other: &PPoly) -> Result<PPoly, FuncError> {
        self.zip_with(other, |p, q| p - q)
    }

    pub fn scale(&self, c: &Q) -> PPoly {
        PPoly { pieces: self.pieces.iter().map(|p| p.scale(c)).collect(), ..self.clone() }.merged()
    }

    pub fn neg(&self) -> PPoly {
        self.scale(&-Q::one())
    }

    /// Index of a piece whose closed cell contains `t`.
    fn cell_of(&self, t: &AlgebraicNumber) -> usize {
        (0..self.pieces.len()).find(|&i| t <= &self.breakpoints[i + 1]).unwrap_or(self.pieces.len() - 1)
    }

    pub fn in_domain(&self, t: &Q) -> bool {
        &self.a <= t && t <= &self.b
    }

    pub fn eval(&self, t: &Q) -> Result<Q, FuncError> {
        if !self.in_domain(t) {
            return Err(FuncError::OutOfDomain(format_q(t)));
        }
        Ok(self.pieces[self.cell_of(&t.clone().into())].eval(t))
    }

    pub fn sign_at(&self, t: &AlgebraicNumber) -> Ordering {
        t.sign_of(&self.pieces[self.cell_of(t)])
    }

    /// Piece governing `(t - ε, t]`; `None` at the left end.
    pub fn piece_left_of(&self, t: &Q) -> Option<&Poly> {
        if t <= &self.a {
            return None;
        }
        let tt: AlgebraicNumber = t.clone().into();
        (0..self.pieces.len()).find(|&i| self.breakpoints[i] < tt && tt <= self.breakpoints[i + 1]).map(|i| &self.pieces[i])
    }

    /// Piece governing `[t, t + ε)`; `None` at the right end.
    pub fn piece_right_of(&self, t: &Q) -> Option<&Poly> {
        if t >= &self.b {
            return None;
        }
        let tt: AlgebraicNumber = t.clone().into();
        (0..self.pieces.len()).find(|&i| self.breakpoints[i] <= tt && tt < self.breakpoints[i + 1]).map(|i| &self.pieces[i])
    }

    /// Constant on a neighborhood of `t` (relative to the domain).
    pub fn germ_constant_at(&self, t: &Q) -> bool {
        let flat = |p: Option<&Poly>| p.is_none_or(|p| p.degree().unwrap_or(0) == 0);
        flat(self.piece_left_of(t)) && flat(self.piece_right_of(t))
    }

    /// Zero on a neighborhood of `t` (relative to the domain).
    pub fn germ_zero_at(&self, t: &Q) -> bool {
        let zero = |p: Option<&Poly>| p.is_none_or(Poly::is_zero);
        zero(self.piece_left_of(t)) && zero(self.piece_right_of(t))
    }

    /// Continuously differentiable across every interior breakpoint.
    pub fn is_c1(&self) -> bool {
        (1..self.pieces.len()).all(|i| self.breakpoints[i].is_root_of(&(self.pieces[i - 1].derivative() - self.pieces[i].derivative())))
    }

    /// `self <= other` pointwise.
    pub fn leq(&self, other: &PPoly) -> Result<bool, FuncError> {
        let d = other.sub(self)?;
        for (i, p) in d.pieces.iter().enumerate() {
            if !sturm_sign(p, &d.breakpoints[i], &d.breakpoints[i + 1])?.is_nonneg() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn join(&self, other: &PPoly) -> Result<PPoly, FuncError> {
        self.check_domain(other)?;
        let grid = self.common_grid(other);
        let (fs, gs) = (self.pieces_on(&grid), other.pieces_on(&grid));
        let mut bps = vec![grid[0].clone()];
        let mut pieces = Vec::new();
        for (k, (f, g)) in fs.iter().zip(&gs).enumerate() {
            let (lo, hi) = (&grid[k], &grid[k + 1]);
            let d = f - g;
            let mut cuts: Vec<AlgebraicNumber> = if d.is_zero() { Vec::new() } else { isolate_roots(&d, lo, hi)? };
            cuts.retain(|r| r > lo && r < hi);
            cuts.push(hi.clone());
            let mut left = lo.clone();
            for c in cuts {
                let mid = AlgebraicNumber::rational_between(&left, &c);
                let pick = if d.eval(&mid) >= Q::zero() { f } else { g };
                pieces.push(pick.clone());
                bps.push(c.clone());
                left = c;
            }
        }
        Ok(PPoly { a: self.a.clone(), b: self.b.clone(), breakpoints: bps, pieces }.merged())
    }

    pub fn meet(&self, other: &PPoly) -> Result<PPoly, FuncError> {
        Ok(self.neg().join(&other.neg())?.neg())
    }

    pub fn abs(&self) -> PPoly {
        self.join(&self.neg()).expect("same domain")
    }

    pub fn positive_part(&self) -> PPoly {
        self.join(&PPoly::zero(self.a.clone(), self.b.clone())).expect("same domain")
    }

    /// `{t : f(t) = 0}`.
    pub fn zero_set(&self) -> Result<IntervalSet, FuncError> {
        let mut parts = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let (lo, hi) = (&self.breakpoints[i], &self.breakpoints[i + 1]);
            if p.is_zero() {
                parts.push(Interval::new(lo.clone(), hi.clone()));
            } else {
                parts.extend(isolate_roots(p, lo, hi)?.into_iter().map(Interval::point));
            }
        }
        Ok(IntervalSet::from_parts(parts))
    }

    /// Closure of `{t : f(t) != 0}`.
    pub fn support(&self) -> Result<IntervalSet, FuncError> {
        Ok(self.zero_set()?.closure_of_complement(&self.a, &self.b))
    }

    /// Supports meet in a set with empty interior.
    pub fn disjoint(&self, other: &PPoly) -> Result<bool, FuncError> {
        self.check_domain(other)?;
        Ok(!self.support()?.intersect(&other.support()?).has_interior())
    }
}

impl fmt::Display for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            (0..self.pieces.len()).map(|i| format!("[{}, {}]: {}", self.breakpoints[i], self.breakpoints[i + 1], self.pieces[i])).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl fmt::Debug for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    domain: [WireQ; 2],
    breakpoints: Vec<AlgebraicNumber>,
    pieces: Vec<Poly>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct WireQ(#[serde(with = "serde_q")] Q);

impl Serialize for PPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            domain: [WireQ(self.a.clone()), WireQ(self.b.clone())],
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let [a, b] = w.domain;
        PPoly::new(a.0, b.0, w.breakpoints, w.pieces).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qf};

    fn t() -> Poly {
        Poly::from_ints(&[0, 1])
    }

    fn quarter() -> PPoly {
        PPoly::poly(q(-1), q(1), Poly::new(vec![qf(-1, 4), q(0), q(1)])).unwrap()
    }

    #[test]
    fn join_of_t_and_minus_t() {
        let f = PPoly::poly(q(-1), q(1), t()).unwrap();
        let j = f.join(&f.neg()).unwrap();
        assert_eq!(j.breakpoints().len(), 3);
        assert_eq!(j.breakpoints()[1], AlgebraicNumber::int(0));
        assert_eq!(j, f.abs());
        assert_eq!(j.eval(&qf(-1, 2)).unwrap(), qf(1, 2));
    }

    #[test]
    fn positive_part_of_quarter() {
        let p = quarter().positive_part();
        assert_eq!(p.zero_set().unwrap(), IntervalSet::interval(qf(-1, 2), qf(1, 2)));
        assert_eq!(p.eval(&q(1)).unwrap(), qf(3, 4));
        assert_eq!(quarter().support().unwrap(), IntervalSet::interval(q(-1), q(1)));
        assert!(p.leq(&p).unwrap());
    }

    #[test]
    fn order_and_lattice() {
        let a = PPoly::poly(q(0), q(1), t()).unwrap();
        let b = PPoly::poly(q(0), q(1), Poly::from_ints(&[0, 0, 1])).unwrap();
        assert!(!a.leq(&b).unwrap());
        assert!(b.leq(&a).unwrap());
        assert_eq!(a.join(&b).unwrap().add(&a.meet(&b).unwrap()).unwrap(), a.add(&b).unwrap());
    }

    #[test]
    fn irrational_breakpoint() {
        let f = PPoly::poly(q(0), q(1), Poly::new(vec![qf(-1, 2), q(0), q(1)])).unwrap();
        let p = f.positive_part();
        assert_eq!(p.breakpoints().len(), 3);
        assert!(!p.breakpoints()[1].is_rational());
        assert!(f.meet(&PPoly::zero(q(0), q(1))).unwrap().add(&p).unwrap() == f);
    }

    #[test]
    fn validation() {
        assert!(PPoly::from_knots(&[q(0), q(1), q(2)], vec![t(), Poly::constant(q(2))]).is_err());
        assert!(PPoly::from_knots(&[q(0), q(1)], vec![Poly::from_ints(&[0, 0, 0, 1])]).is_err());
        let h = PPoly::interpolate(&[q(0), q(1), q(2)], &[q(0), q(1), q(1)]).unwrap();
        assert!(h.germ_constant_at(&qf(3, 2)) && !h.germ_constant_at(&q(1)));
        assert!(!h.is_c1());
    }

    #[test]
    fn canonical_merge() {
        let f = PPoly::from_knots(&[q(0), q(1), q(2)], vec![t(), t()]).unwrap();
        assert_eq!(f.pieces().len(), 1);
    }

    #[test]
    fn serde_round_trip() {
        let f = quarter().positive_part();
        let s = serde_json::to_string(&f).unwrap();
        let g: PPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
