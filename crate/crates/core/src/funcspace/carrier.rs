//! Function carriers: linear subspaces of the piecewise-quadratic functions
//! on a fixed interval, described by a base class and local constraints.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::ppoly::PPoly;
use crate::exact::rational::{format_q, serde_q, serde_qvec, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Base {
    /// Continuous piecewise polynomials of degree at most two.
    PP2,
    /// Continuous piecewise affine functions.
    PA,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Constraint {
    /// Constant on some neighborhood of each point.
    GermConstantAt(#[serde(with = "serde_qvec")] Vec<Q>),
    MaxDegree(usize),
    /// Continuously differentiable.
    C1,
    /// `Σ c_k f(t_k) = 0`.
    PointRelation {
        #[serde(with = "serde_qvec")]
        points: Vec<Q>,
        #[serde(with = "serde_qvec")]
        coeffs: Vec<Q>,
    },
    /// `f - λq` is affine and constant near `at` for some `λ`.
    SpanX0PlusQ {
        q: PPoly,
        #[serde(with = "serde_q")]
        at: Q,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Carrier {
    pub name: String,
    #[serde(with = "serde_q")]
    pub a: Q,
    #[serde(with = "serde_q")]
    pub b: Q,
    pub base: Base,
    pub constraints: Vec<Constraint>,
}

impl Carrier {
    pub fn new(name: &str, a: Q, b: Q, base: Base, constraints: Vec<Constraint>) -> Self {
        Carrier { name: name.to_string(), a, b, base, constraints }
    }

    pub fn pp2(a: Q, b: Q) -> Self {
        Self::new("PP2", a, b, Base::PP2, vec![])
    }

    pub fn pa(a: Q, b: Q) -> Self {
        Self::new("PA", a, b, Base::PA, vec![])
    }

    pub fn c1_pp2(a: Q, b: Q) -> Self {
        Self::new("C1-PP2", a, b, Base::PP2, vec![Constraint::C1])
    }

    /// The same carrier on the same interval with another name and base.
    pub fn with(&self, name: &str, base: Base, constraints: Vec<Constraint>) -> Self {
        Self::new(name, self.a.clone(), self.b.clone(), base, constraints)
    }

    pub fn contains(&self, f: &PPoly) -> bool {
        let (a, b) = f.domain();
        if a != &self.a || b != &self.b {
            return false;
        }
        if self.base == Base::PA && !f.is_affine() {
            return false;
        }
        self.constraints.iter().all(|c| satisfies(c, f))
    }

    pub fn has_c1(&self) -> bool {
        self.constraints.iter().any(|c| matches!(c, Constraint::C1))
    }

    pub fn has_span_plus(&self) -> bool {
        self.constraints.iter().any(|c| matches!(c, Constraint::SpanX0PlusQ { .. }))
    }

    /// Points where every member is locally constant.
    pub fn germ_points(&self) -> Vec<Q> {
        let mut out: Vec<Q> = self
            .constraints
            .iter()
            .filter_map(|c| match c {
                Constraint::GermConstantAt(ps) => Some(ps.clone()),
                _ => None,
            })
            .flatten()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn relations(&self) -> Vec<(&[Q], &[Q])> {
        self.constraints
            .iter()
            .filter_map(|c| match c {
                Constraint::PointRelation { points, coeffs } => Some((points.as_slice(), coeffs.as_slice())),
                _ => None,
            })
            .collect()
    }

    /// Points near which a witness construction must stay flat.
    pub fn special_points(&self) -> Vec<Q> {
        let mut out = self.germ_points();
        for c in &self.constraints {
            match c {
                Constraint::PointRelation { points, .. } => out.extend(points.iter().cloned()),
                Constraint::SpanX0PlusQ { at, .. } => out.push(at.clone()),
                _ => {}
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn max_degree(&self) -> usize {
        let cap = self.constraints.iter().filter_map(|c| if let Constraint::MaxDegree(d) = c { Some(*d) } else { None }).min();
        let base = if self.base == Base::PA { 1 } else { 2 };
        cap.map_or(base, |d| d.min(base))
    }
}

fn satisfies(c: &Constraint, f: &PPoly) -> bool {
    match c {
        Constraint::GermConstantAt(ps) => ps.iter().all(|p| f.germ_constant_at(p)),
        Constraint::MaxDegree(d) => f.pieces().iter().all(|p| p.degree().unwrap_or(0) <= *d),
        Constraint::C1 => f.is_c1(),
        Constraint::PointRelation { points, coeffs } => {
            let mut total = Q::zero();
            for (t, c) in points.iter().zip(coeffs) {
                match f.eval(t) {
                    Ok(v) => total += c * v,
                    Err(_) => return false,
                }
            }
            total.is_zero()
        }
        Constraint::SpanX0PlusQ { q, at } => match span_coefficient(f, q) {
            Some(lambda) => f.sub(&q.scale(&lambda)).is_ok_and(|h| h.is_affine() && h.germ_constant_at(at)),
            None => false,
        },
    }
}

/// The `λ` for which `f - λq` can be affine: matches the quadratic
/// coefficient on the first quadratic piece of `q`.
pub fn span_coefficient(f: &PPoly, q: &PPoly) -> Option<Q> {
    let (i, qp) = q.pieces().iter().enumerate().find(|(_, p)| p.degree() == Some(2))?;
    let mid = crate::exact::AlgebraicNumber::rational_between(&q.breakpoints()[i], &q.breakpoints()[i + 1]);
    let fp = f.piece_right_of(&mid)?;
    Some(fp.coeff(2) / qp.coeff(2))
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on [{}, {}]", self.name, format_q(&self.a), format_q(&self.b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qf};
    use crate::exact::Poly;

    #[test]
    fn namioka_relation() {
        let c = Carrier::pa(q(-1), q(1)).with(
            "Namioka",
            Base::PA,
            vec![Constraint::PointRelation { points: vec![q(-1), q(0), q(1)], coeffs: vec![q(1), q(-2), q(1)] }],
        );
        assert!(c.contains(&PPoly::constant(q(-1), q(1), q(3))));
        let f = PPoly::interpolate(&[q(-1), q(0), q(1)], &[q(-1), q(0), q(1)]).unwrap();
        assert!(c.contains(&f));
        assert!(!c.contains(&f.abs()));
    }

    #[test]
    fn span_plus_membership() {
        let quad = Poly::new(vec![qf(-1, 4), q(0), q(1)]);
        let qq = PPoly::poly(q(-1), q(1), quad).unwrap().positive_part();
        let c = Carrier::pp2(q(-1), q(1)).with("X", Base::PP2, vec![Constraint::SpanX0PlusQ { q: qq.clone(), at: q(0) }]);
        assert!(c.contains(&qq));
        assert!(c.contains(&qq.scale(&q(3)).add(&PPoly::constant(q(-1), q(1), q(2))).unwrap()));
        let t = PPoly::poly(q(-1), q(1), Poly::from_ints(&[0, 1])).unwrap();
        assert!(!c.contains(&t));
    }
}
