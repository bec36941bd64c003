//! Fourier–Motzkin elimination, used as an independent oracle for the
//! double description conversion.
//!
//! `cone(G)` is the projection onto `x` of `{(x, mu) : x = G^T mu, mu >= 0}`.
//! Eliminating each `mu_k` with Chernikov's rule yields an inequality
//! description of the cone.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::exact::rational::{add_vec, is_zero_vec, primitive, scale_vec, Q};

type Row = (Vec<Q>, BTreeSet<usize>);

/// Eliminates the last `eliminate` variables from `rows . z >= 0`.
pub fn fm_eliminate(rows: &[Vec<Q>], eliminate: usize) -> Vec<Vec<Q>> {
    let width = rows.first().map_or(0, Vec::len);
    let keep = width - eliminate;
    let mut sys: Vec<Row> = rows.iter().enumerate().map(|(i, r)| (primitive(r), BTreeSet::from([i]))).collect();
    for (step, var) in (keep..width).rev().enumerate() {
        let (mut next, mut pos, mut neg) = (Vec::new(), Vec::new(), Vec::new());
        for row in sys {
            match row.0[var].is_zero() {
                true => next.push(row),
                false if row.0[var].is_positive() => pos.push(row),
                false => neg.push(row),
            }
        }
        for (p, hp) in &pos {
            for (n, hn) in &neg {
                let hist: BTreeSet<usize> = hp.union(hn).copied().collect();
                if hist.len() > step + 2 {
                    continue;
                }
                let r = primitive(&add_vec(&scale_vec(&-n[var].clone(), p), &scale_vec(&p[var], n)));
                next.push((r, hist));
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.len().cmp(&b.1.len())));
        next.dedup_by(|a, b| a.0 == b.0);
        sys = next;
    }
    let mut out: Vec<Vec<Q>> = sys.into_iter().map(|(r, _)| r[..keep].to_vec()).filter(|r| !is_zero_vec(r)).collect();
    out.sort();
    out.dedup();
    out
}

/// Inequalities `a . x >= 0` whose solution set is `cone(generators)`.
pub fn fm_cone_inequalities(dim: usize, generators: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let k = generators.len();
    let mut rows = Vec::new();
    for i in 0..dim {
        let mut row = vec![Q::zero(); dim + k];
        row[i] = Q::from_integer(1.into());
        for (j, g) in generators.iter().enumerate() {
            row[dim + j] = -g[i].clone();
        }
        rows.push(row.iter().map(|x| -x).collect());
        rows.push(row);
    }
    for j in 0..k {
        let mut row = vec![Q::zero(); dim + k];
        row[dim + j] = Q::from_integer(1.into());
        rows.push(row);
    }
    fm_eliminate(&rows, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::PolyCone;
    use crate::exact::rational::qvec;

    #[test]
    fn k4_agrees_with_dd() {
        let v = [qvec(&[1, 0, 1]), qvec(&[0, 1, 1]), qvec(&[-1, 0, 1]), qvec(&[0, -1, 1])];
        let fm = fm_cone_inequalities(3, &v);
        let a = PolyCone::from_inequalities(3, &fm).unwrap();
        let b = PolyCone::from_generators(3, &v).unwrap();
        assert!(a.same_cone(&b));
    }

    #[test]
    fn ray_in_plane() {
        let fm = fm_cone_inequalities(2, &[qvec(&[1, 1])]);
        let c = PolyCone::from_inequalities(2, &fm).unwrap();
        assert_eq!(c.rays(), &[qvec(&[1, 1])]);
        assert!(c.is_pointed());
    }
}
