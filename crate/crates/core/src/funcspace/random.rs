//! Seeded random piecewise functions for property checks.

use rand::Rng;

use super::ppoly::PPoly;
use crate::exact::rational::{q, Q};
use crate::exact::Poly;

fn knots<R: Rng>(rng: &mut R, a: i64, b: i64, denom: i64, count: usize) -> Vec<Q> {
    let mut ts: Vec<i64> = (1..count).map(|_| rng.gen_range(a * denom + 1..b * denom)).collect();
    ts.push(a * denom);
    ts.push(b * denom);
    ts.sort_unstable();
    ts.dedup();
    ts.into_iter().map(|t| Q::new(t.into(), denom.into())).collect()
}

/// A continuous piecewise affine function on `[a, b]`.
pub fn random_pa<R: Rng>(rng: &mut R, a: i64, b: i64) -> PPoly {
    let k = rng.gen_range(2..6);
    let ts = knots(rng, a, b, 8, k);
    let vs: Vec<Q> = ts.iter().map(|_| q(rng.gen_range(-3..=3))).collect();
    PPoly::interpolate(&ts, &vs).expect("valid knots")
}

/// A nonnegative piecewise affine function.
pub fn random_pa_nonneg<R: Rng>(rng: &mut R, a: i64, b: i64) -> PPoly {
    let k = rng.gen_range(2..6);
    let ts = knots(rng, a, b, 8, k);
    let vs: Vec<Q> = ts.iter().map(|_| q(rng.gen_range(0..=3))).collect();
    PPoly::interpolate(&ts, &vs).expect("valid knots")
}

/// A continuous piecewise quadratic function.
pub fn random_pp2<R: Rng>(rng: &mut R, a: i64, b: i64) -> PPoly {
    let k = rng.gen_range(2..5);
    let ts = knots(rng, a, b, 4, k);
    let mut value = q(rng.gen_range(-2..=2));
    let mut pieces = Vec::new();
    for w in ts.windows(2) {
        let local = Poly::new(vec![value.clone(), q(rng.gen_range(-2..=2)), q(rng.gen_range(-2..=2))]);
        let p = local.shift(&-w[0].clone());
        value = p.eval(&w[1]);
        pieces.push(p);
    }
    PPoly::from_knots(&ts, pieces).expect("continuous by construction")
}
