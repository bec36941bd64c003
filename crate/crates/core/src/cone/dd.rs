//! Double description conversion for polyhedral cones.
//!
//! Converts `{x : a_i . x >= 0}` into generators: a lineality basis plus
//! extreme rays of the pointed part. Rays are combined only for pairs that
//! pass the combinatorial adjacency test; a final rank test removes any
//! redundant ray so the output is irredundant.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::exact::linalg::rref;
use crate::exact::rational::{dot, is_zero_vec, primitive, primitive_unsigned, scale_vec, sub_vec, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    /// Basis of `C ∩ -C`, canonical (reduced row echelon, primitive).
    pub lineality: Vec<Vec<Q>>,
    /// Extreme rays of `C` modulo the lineality space, primitive.
    pub rays: Vec<Vec<Q>>,
}

fn tight_set(r: &[Q], constraints: &[Vec<Q>]) -> BTreeSet<usize> {
    constraints.iter().enumerate().filter(|(_, a)| dot(a, r).is_zero()).map(|(i, _)| i).collect()
}

/// Reduces `v` modulo the row space of `basis` (an RREF basis with the
/// given pivots): the result has zeros in every pivot column.
pub(crate) fn reduce_mod(v: &[Q], basis: &[Vec<Q>], pivots: &[usize]) -> Vec<Q> {
    let mut out = v.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        if !out[p].is_zero() {
            let f = out[p].clone();
            out = sub_vec(&out, &scale_vec(&f, row));
        }
    }
    out
}

pub fn dd_convert(dim: usize, inequalities: &[Vec<Q>]) -> Generators {
    let mut lin: Vec<Vec<Q>> = (0..dim).map(|i| crate::exact::rational::unit(dim, i)).collect();
    let mut rays: Vec<Vec<Q>> = Vec::new();
    let mut processed: Vec<Vec<Q>> = Vec::new();

    for a in inequalities.iter().filter(|a| !is_zero_vec(a)) {
        assert_eq!(a.len(), dim, "inequality width");
        if let Some(k) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lin.remove(k);
            if dot(a, &l0).is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
            }
            let al0 = dot(a, &l0);
            let project = |v: &Vec<Q>| {
                let c = dot(a, v) / &al0;
                sub_vec(v, &scale_vec(&c, &l0))
            };
            lin = lin.iter().map(project).collect();
            rays = rays.iter().map(project).map(|r| primitive(&r)).collect();
            rays.push(primitive(&l0));
        } else {
            let vals: Vec<Q> = rays.iter().map(|r| dot(a, r)).collect();
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
            let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
            let zero: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_zero()).collect();
            let tights: Vec<BTreeSet<usize>> = rays.iter().map(|r| tight_set(r, &processed)).collect();
            let mut next: Vec<Vec<Q>> = pos.iter().chain(&zero).map(|&i| rays[i].clone()).collect();
            for &p in &pos {
                for &n in &neg {
                    let common: BTreeSet<usize> = tights[p].intersection(&tights[n]).copied().collect();
                    let adjacent = (0..rays.len()).all(|r| r == p || r == n || !common.is_subset(&tights[r]));
                    if adjacent {
                        let v = sub_vec(&scale_vec(&vals[p], &rays[n]), &scale_vec(&vals[n], &rays[p]));
                        if !is_zero_vec(&v) {
                            next.push(primitive(&v));
                        }
                    }
                }
            }
            rays = next;
        }
        processed.push(a.clone());
    }

    let (lin_basis, pivots) = rref(&lin, dim);
    let lineality: Vec<Vec<Q>> = lin_basis.iter().map(|l| primitive_unsigned(l)).collect();
    let (lin_rref, _) = rref(&lineality, dim);
    let pointed_dim = dim - lineality.len();
    let mut out: Vec<Vec<Q>> = Vec::new();
    for r in rays {
        let r = primitive(&reduce_mod(&r, &lin_rref, &pivots));
        if is_zero_vec(&r) || out.contains(&r) {
            continue;
        }
        let tight: Vec<Vec<Q>> = processed.iter().filter(|a| dot(a, &r).is_zero()).cloned().collect();
        if rref(&tight, dim).0.len() + 1 == pointed_dim {
            out.push(r);
        }
    }
    Generators { lineality, rays: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qvec;

    #[test]
    fn orthant() {
        let g = dd_convert(2, &[qvec(&[1, 0]), qvec(&[0, 1])]);
        assert!(g.lineality.is_empty());
        let mut rays = g.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![qvec(&[0, 1]), qvec(&[1, 0])]);
    }

    #[test]
    fn half_space_has_lineality() {
        let g = dd_convert(2, &[qvec(&[1, 1])]);
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.rays.len(), 1);
        assert!(dot(&qvec(&[1, 1]), &g.lineality[0]).is_zero());
    }

    #[test]
    fn empty_system_is_whole_space() {
        let g = dd_convert(3, &[]);
        assert_eq!(g.lineality.len(), 3);
        assert!(g.rays.is_empty());
    }

    #[test]
    fn k4_from_functionals() {
        let fs = [qvec(&[-1, -1, 1]), qvec(&[1, -1, 1]), qvec(&[1, 1, 1]), qvec(&[-1, 1, 1])];
        let g = dd_convert(3, &fs);
        let mut rays = g.rays.clone();
        rays.sort();
        let mut expect = vec![qvec(&[1, 0, 1]), qvec(&[0, 1, 1]), qvec(&[-1, 0, 1]), qvec(&[0, -1, 1])];
        expect.sort();
        assert_eq!(rays, expect);
    }

    #[test]
    fn contradictory_pair_gives_zero_cone() {
        let g = dd_convert(1, &[qvec(&[1]), qvec(&[-1])]);
        assert!(g.lineality.is_empty() && g.rays.is_empty());
    }
}
