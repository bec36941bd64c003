//! The function-space examples: Namioka's space, the `C^1` band and the
//! piecewise-affine space with a quadratic adjoined.

use num_traits::Zero;

use super::carrier::{Base, Carrier, Constraint};
use super::descriptor::SubspaceDescriptor;
use super::intervals::IntervalSet;
use super::ppoly::PPoly;
use crate::exact::lp::{LinearProgram, Relation};
use crate::exact::rational::{q, qf, Q};
use crate::exact::Poly;

/// `{f ∈ PA[-1,1] : f(0) = (f(-1) + f(1)) / 2}`.
pub fn namioka_carrier() -> Carrier {
    Carrier::new(
        "Namioka",
        q(-1),
        q(1),
        Base::PA,
        vec![Constraint::PointRelation { points: vec![q(-1), q(0), q(1)], coeffs: vec![q(1), q(-2), q(1)] }],
    )
}

/// `I`: members vanishing on `[-1/2, 0] ∪ {-1, 1}`.
pub fn namioka_ideal() -> SubspaceDescriptor {
    let z = IntervalSet::interval(qf(-1, 2), q(0)).union(&IntervalSet::points(&[q(-1), q(1)]));
    SubspaceDescriptor::new(z, vec![], namioka_carrier())
}

/// `B_I`: members vanishing on `[-1/2, 0]`.
pub fn namioka_band() -> SubspaceDescriptor {
    SubspaceDescriptor::new(IntervalSet::interval(qf(-1, 2), q(0)), vec![], namioka_carrier())
}

/// `g = (t - 1/2)^+` on `[0, 1]`.
pub fn ex2_g() -> PPoly {
    PPoly::from_knots(&[q(0), qf(1, 2), q(1)], vec![Poly::zero(), Poly::linear(qf(-1, 2), q(1))]).expect("valid")
}

/// Members of `carrier` on `[0, 1]` vanishing on `[0, 1/2]`.
pub fn ex2_band(carrier: Carrier) -> SubspaceDescriptor {
    SubspaceDescriptor::new(IntervalSet::interval(q(0), qf(1, 2)), vec![], carrier)
}

/// `q = (t^2 - 1/4)^+` on `[-1, 1]`.
pub fn quadratic_q() -> PPoly {
    PPoly::poly(q(-1), q(1), Poly::new(vec![qf(-1, 4), q(0), q(1)])).expect("valid").positive_part()
}

/// `a_1 = (-t - 1/2)^+`.
pub fn a1() -> PPoly {
    PPoly::from_knots(&[q(-1), qf(-1, 2), q(1)], vec![Poly::linear(qf(-1, 2), q(-1)), Poly::zero()]).expect("valid")
}

/// `a_2 = (t - 1/2)^+`.
pub fn a2() -> PPoly {
    PPoly::from_knots(&[q(-1), qf(1, 2), q(1)], vec![Poly::zero(), Poly::linear(qf(-1, 2), q(1))]).expect("valid")
}

/// `Y`: the piecewise-quadratic surrogate of `C[-1,1]`.
pub fn cover_y() -> Carrier {
    Carrier::pp2(q(-1), q(1))
}

/// `X_0`: piecewise affine, constant near `0`.
pub fn x0() -> Carrier {
    Carrier::new("X0", q(-1), q(1), Base::PA, vec![Constraint::GermConstantAt(vec![q(0)])])
}

/// `X = X_0 + span{q}`.
pub fn x_span() -> Carrier {
    Carrier::new("X", q(-1), q(1), Base::PP2, vec![Constraint::SpanX0PlusQ { q: quadratic_q(), at: q(0) }])
}

/// Surrogate for the Riesz completion of `X`: piecewise quadratic and
/// constant near `0`.
pub fn x_rho() -> Carrier {
    Carrier::new("X^rho surrogate", q(-1), q(1), Base::PP2, vec![Constraint::GermConstantAt(vec![q(0)])])
}

/// `B`: members of `X` vanishing on `[-1, 0]` and near `0`.
pub fn band_b() -> SubspaceDescriptor {
    SubspaceDescriptor::new(IntervalSet::interval(q(-1), q(0)), vec![q(0)], x0())
}

/// `x = t^+`.
pub fn t_plus() -> PPoly {
    PPoly::from_knots(&[q(-1), q(0), q(1)], vec![Poly::zero(), Poly::from_ints(&[0, 1])]).expect("valid")
}

/// Decomposition system for `q = q_1 + q_2`, `q_1 <= a_1`, `q_2 <= a_2`,
/// `q_i = x_i + λ_i q` with affine `x_i`, sampled at `points`.
///
/// Variables: `λ_1, λ_2`, then `x_1(t_k)`, then `x_2(t_k)`.
pub fn rdp_failure_lp(points: &[Q]) -> LinearProgram {
    let n = points.len();
    let (qq, f1, f2) = (quadratic_q(), a1(), a2());
    let mut lp = LinearProgram::new(2 + 2 * n);
    let mut row = vec![Q::zero(); 2 + 2 * n];
    row[0] = q(1);
    row[1] = q(1);
    lp.add(row, Relation::Eq, q(1));
    for (k, t) in points.iter().enumerate() {
        let qt = qq.eval(t).expect("in domain");
        let mut sum = vec![Q::zero(); 2 + 2 * n];
        sum[0] = qt.clone();
        sum[1] = qt.clone();
        sum[2 + k] = q(1);
        sum[2 + n + k] = q(1);
        lp.add(sum, Relation::Eq, qt.clone());
        let mut first = vec![Q::zero(); 2 + 2 * n];
        first[0] = qt.clone();
        first[2 + k] = q(1);
        lp.add(first, Relation::Le, f1.eval(t).expect("in domain"));
        let mut second = vec![Q::zero(); 2 + 2 * n];
        second[1] = qt;
        second[2 + n + k] = q(1);
        lp.add(second, Relation::Le, f2.eval(t).expect("in domain"));
    }
    lp
}

pub fn rdp_probe_points() -> Vec<Q> {
    vec![q(-1), qf(-1, 2), q(0), qf(1, 2), q(1)]
}
