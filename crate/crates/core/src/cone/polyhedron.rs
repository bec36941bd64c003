//! Polyhedra `{x : a_i . x >= b_i}` with their V-representation, and the
//! upper-bound sets `{±a}^u` of a cone order.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dd::dd_convert;
use super::PolyCone;
use crate::exact::rational::{dot, neg_vec, primitive, scale_vec, serde_qmat, serde_qvec, Q};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfSpace {
    #[serde(with = "serde_qvec")]
    pub normal: Vec<Q>,
    #[serde(with = "crate::exact::rational::serde_q")]
    pub offset: Q,
}

impl HalfSpace {
    pub fn holds(&self, x: &[Q]) -> bool {
        dot(&self.normal, x) >= self.offset
    }
}

/// `conv(vertices) + cone(rays) + span(lineality)`; empty iff there are
/// no vertices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Polyhedron {
    dim: usize,
    #[serde(with = "serde_qmat")]
    vertices: Vec<Vec<Q>>,
    #[serde(with = "serde_qmat")]
    rays: Vec<Vec<Q>>,
    #[serde(with = "serde_qmat")]
    lineality: Vec<Vec<Q>>,
    constraints: Vec<HalfSpace>,
}

impl Polyhedron {
    pub fn from_constraints(dim: usize, constraints: Vec<HalfSpace>) -> Self {
        let mut homog: Vec<Vec<Q>> = constraints
            .iter()
            .map(|h| {
                let mut row = h.normal.clone();
                row.push(-h.offset.clone());
                row
            })
            .collect();
        let mut t = vec![Q::zero(); dim + 1];
        t[dim] = Q::one();
        homog.push(t);
        let g = dd_convert(dim + 1, &homog);
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in g.rays {
            let (x, last) = r.split_at(dim);
            if last[0].is_positive() {
                vertices.push(scale_vec(&(Q::one() / &last[0]), x));
            } else {
                rays.push(primitive(x));
            }
        }
        vertices.sort();
        rays.sort();
        let lineality = g.lineality.iter().map(|l| l[..dim].to_vec()).collect();
        if vertices.is_empty() {
            rays.clear();
        }
        Polyhedron { dim, vertices, rays, lineality, constraints }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<Q>] {
        &self.rays
    }

    pub fn constraints(&self) -> &[HalfSpace] {
        &self.constraints
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.constraints.iter().all(|h| h.holds(x))
    }

    fn recedes(&self, r: &[Q]) -> bool {
        self.constraints.iter().all(|h| !dot(&h.normal, r).is_negative())
    }

    fn fixes(&self, l: &[Q]) -> bool {
        self.constraints.iter().all(|h| dot(&h.normal, l).is_zero())
    }

    /// Every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Polyhedron) -> bool {
        self.is_empty()
            || (self.vertices.iter().all(|v| other.contains(v))
                && self.rays.iter().all(|r| other.recedes(r))
                && self.lineality.iter().all(|l| other.fixes(l)))
    }
}

pub fn polyhedron_equal(p: &Polyhedron, q: &Polyhedron) -> bool {
    p.dim == q.dim && p.is_subset_of(q) && q.is_subset_of(p)
}

/// `{w : w >= a, w >= -a}` in the order of `cone`.
pub fn upper_set(cone: &PolyCone, a: &[Q]) -> Polyhedron {
    let mut cons = Vec::new();
    for f in cone.facets() {
        let v = dot(f, a).abs();
        cons.push(HalfSpace { normal: f.clone(), offset: v });
    }
    for e in cone.equations() {
        let v = dot(e, a).abs();
        cons.push(HalfSpace { normal: e.clone(), offset: v.clone() });
        cons.push(HalfSpace { normal: neg_vec(e), offset: v });
    }
    Polyhedron::from_constraints(cone.dim(), cons)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{add_vec, qvec, sub_vec};

    #[test]
    fn zero_gives_cone() {
        let c = PolyCone::standard(2);
        let p = upper_set(&c, &qvec(&[0, 0]));
        assert_eq!(p.vertices(), &[qvec(&[0, 0])]);
        assert_eq!(p.rays(), &[qvec(&[0, 1]), qvec(&[1, 0])]);
    }

    #[test]
    fn componentwise_max() {
        let c = PolyCone::standard(2);
        let p = upper_set(&c, &qvec(&[1, -1]));
        assert_eq!(p.vertices(), &[qvec(&[1, 1])]);
        assert_eq!(p.rays().len(), 2);
        assert!(polyhedron_equal(&p, &upper_set(&c, &qvec(&[-1, 1]))));
    }

    #[test]
    fn permuted_generators_same_set() {
        let c1 = PolyCone::from_generators(2, &[qvec(&[1, 0]), qvec(&[0, 1])]).unwrap();
        let c2 = PolyCone::from_generators(2, &[qvec(&[0, 1]), qvec(&[1, 0])]).unwrap();
        assert!(polyhedron_equal(&upper_set(&c1, &qvec(&[1, 0])), &upper_set(&c2, &qvec(&[1, 0]))));
    }

    #[test]
    fn k4_non_disjoint_pair() {
        let v = [qvec(&[1, 0, 1]), qvec(&[0, 1, 1]), qvec(&[-1, 0, 1]), qvec(&[0, -1, 1])];
        let c = PolyCone::from_generators(3, &v).unwrap();
        let (v1, v2, v4) = (&v[0], &v[1], &v[3]);
        assert!(!polyhedron_equal(&upper_set(&c, &add_vec(v1, v4)), &upper_set(&c, &sub_vec(v1, v4))));
        assert!(polyhedron_equal(&upper_set(&c, &add_vec(v2, v4)), &upper_set(&c, &sub_vec(v2, v4))));
    }

    #[test]
    fn empty_polyhedron() {
        let p = Polyhedron::from_constraints(
            1,
            vec![HalfSpace { normal: qvec(&[1]), offset: Q::one() }, HalfSpace { normal: qvec(&[-1]), offset: Q::zero() }],
        );
        assert!(p.is_empty());
        let q = Polyhedron::from_constraints(1, vec![HalfSpace { normal: qvec(&[0]), offset: Q::one() }]);
        assert!(polyhedron_equal(&p, &q));
    }
}
