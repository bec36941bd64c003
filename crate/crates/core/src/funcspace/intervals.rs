//! Finite unions of closed intervals with algebraic endpoints.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::AlgebraicNumber;
use crate::exact::Q;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: AlgebraicNumber,
    pub hi: AlgebraicNumber,
}

impl Interval {
    pub fn new(lo: AlgebraicNumber, hi: AlgebraicNumber) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(p: AlgebraicNumber) -> Self {
        Interval { lo: p.clone(), hi: p }
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, t: &AlgebraicNumber) -> bool {
        &self.lo <= t && t <= &self.hi
    }
}

/// Sorted, pairwise disjoint, non-touching closed intervals (points allowed).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Interval>", into = "Vec<Interval>")]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl From<Vec<Interval>> for IntervalSet {
    fn from(parts: Vec<Interval>) -> Self {
        IntervalSet::from_parts(parts)
    }
}

impl From<IntervalSet> for Vec<Interval> {
    fn from(s: IntervalSet) -> Self {
        s.parts
    }
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn from_parts(mut parts: Vec<Interval>) -> Self {
        parts.sort_by(|x, y| x.lo.cmp(&y.lo).then(x.hi.cmp(&y.hi)));
        let mut out: Vec<Interval> = Vec::new();
        for p in parts {
            match out.last_mut() {
                Some(last) if p.lo <= last.hi => {
                    if p.hi > last.hi {
                        last.hi = p.hi;
                    }
                }
                _ => out.push(p),
            }
        }
        IntervalSet { parts: out }
    }

    pub fn interval(lo: Q, hi: Q) -> Self {
        Self::from_parts(vec![Interval::new(lo.into(), hi.into())])
    }

    pub fn points(ps: &[Q]) -> Self {
        Self::from_parts(ps.iter().map(|p| Interval::point(p.clone().into())).collect())
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        Self::from_parts(self.parts.iter().chain(&other.parts).cloned().collect())
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for x in &self.parts {
            for y in &other.parts {
                let lo = (&x.lo).max(&y.lo);
                let hi = (&x.hi).min(&y.hi);
                if lo <= hi {
                    out.push(Interval::new(lo.clone(), hi.clone()));
                }
            }
        }
        Self::from_parts(out)
    }

    pub fn contains(&self, t: &AlgebraicNumber) -> bool {
        self.parts.iter().any(|p| p.contains(t))
    }

    pub fn contains_q(&self, t: &Q) -> bool {
        self.contains(&t.clone().into())
    }

    pub fn has_interior(&self) -> bool {
        self.parts.iter().any(|p| !p.is_degenerate())
    }

    /// Whether `t` is interior relative to the domain `[a, b]`.
    pub fn interior_contains(&self, t: &AlgebraicNumber, a: &Q, b: &Q) -> bool {
        self.parts.iter().any(|p| {
            !p.is_degenerate()
                && (&p.lo < t || (p.lo == *t && p.lo.cmp_q(a).is_eq()))
                && (t < &p.hi || (p.hi == *t && p.hi.cmp_q(b).is_eq()))
        })
    }

    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.parts.iter().all(|p| other.parts.iter().any(|o| o.lo <= p.lo && p.hi <= o.hi))
    }

    /// Closure of `[a, b] \ self`.
    pub fn closure_of_complement(&self, a: &Q, b: &Q) -> IntervalSet {
        let mut out = Vec::new();
        let mut cursor: AlgebraicNumber = a.clone().into();
        for p in &self.parts {
            if cursor < p.lo {
                out.push(Interval::new(cursor.clone(), p.lo.clone()));
            }
            cursor = p.hi.clone();
        }
        let end: AlgebraicNumber = b.clone().into();
        if cursor < end {
            out.push(Interval::new(cursor, end));
        }
        Self::from_parts(out)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| if p.is_degenerate() { format!("{{{}}}", p.lo) } else { format!("[{}, {}]", p.lo, p.hi) })
            .collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qf};

    #[test]
    fn merge_and_complement() {
        let z = IntervalSet::interval(qf(-1, 2), q(0)).union(&IntervalSet::points(&[q(-1), q(1)]));
        assert_eq!(z.parts().len(), 3);
        let c = z.closure_of_complement(&q(-1), &q(1));
        assert_eq!(c, IntervalSet::interval(q(-1), qf(-1, 2)).union(&IntervalSet::interval(q(0), q(1))));
        let touching = IntervalSet::interval(q(0), q(1)).union(&IntervalSet::interval(q(1), q(2)));
        assert_eq!(touching, IntervalSet::interval(q(0), q(2)));
    }

    #[test]
    fn isolated_point_vanishes_in_closure() {
        let z = IntervalSet::points(&[q(0)]);
        assert_eq!(z.closure_of_complement(&q(-1), &q(1)), IntervalSet::interval(q(-1), q(1)));
        assert!(IntervalSet::empty().closure_of_complement(&q(0), &q(1)) == IntervalSet::interval(q(0), q(1)));
    }

    #[test]
    fn interior_relative_to_domain() {
        let z = IntervalSet::interval(q(-1), q(0));
        assert!(z.interior_contains(&q(-1).into(), &q(-1), &q(1)));
        assert!(!z.interior_contains(&q(0).into(), &q(-1), &q(1)));
        assert!(!z.intersect(&IntervalSet::interval(q(0), q(1))).has_interior());
    }
}
