//! Witness-producing deciders on function carriers: majorization,
//! directedness certificates, pervasiveness, sup-disjointness and order
//! density.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::carrier::Carrier;
use super::descriptor::{band_generated_descriptor, Source, SubspaceDescriptor};
use super::intervals::IntervalSet;
use super::ppoly::PPoly;
use super::FuncError;
use crate::exact::lp::{FarkasCertificate, LinearProgram, Relation};
use crate::exact::rational::{format_q, q, qf, serde_q, serde_qvec, Q};
use crate::exact::{AlgebraicNumber, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Why no member of a descriptor lies above `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MajorizationCertificate {
    /// `g(t) > 0` at a point where every member vanishes.
    PositiveOnVanishingSet { t: AlgebraicNumber },
    /// `g` is positive arbitrarily close to a germ-zero point.
    PositiveNearGermZero {
        #[serde(with = "serde_q")]
        p: Q,
    },
    /// Members are `C^1` and vanish on an interval ending at `p`, so near `p`
    /// they equal `c(t - p)^2`, while `g(p) = 0` with outward slope `slope > 0`.
    LocalExpansion {
        #[serde(with = "serde_q")]
        p: Q,
        side: Side,
        #[serde(with = "serde_q")]
        slope: Q,
    },
}

impl MajorizationCertificate {
    pub fn explain(&self) -> String {
        match self {
            Self::PositiveOnVanishingSet { t } => format!("g({t}) > 0 but every member vanishes there"),
            Self::PositiveNearGermZero { p } => format!("g > 0 arbitrarily near {} where members vanish locally", format_q(p)),
            Self::LocalExpansion { p, side, slope } => {
                let dir = if *side == Side::Right { "t > p" } else { "t < p" };
                format!(
                    "members satisfy f(p) = f'(p) = 0 at p = {} so f(t) = c(t-p)^2 near p, while g(t) = {}|t-p| + O((t-p)^2) for {dir}; g <= f fails near p",
                    format_q(p),
                    format_q(slope)
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Majorization {
    Dominator(PPoly),
    Infeasible(MajorizationCertificate),
}

/// Some rational `t` in `(lo, hi)` with `f(t) > 0`, if `f > 0` somewhere
/// there; found by bisection since `f` has finitely many roots.
fn positive_point(f: &PPoly, lo: &AlgebraicNumber, hi: &AlgebraicNumber) -> Option<Q> {
    let mut frontier = vec![(lo.clone(), hi.clone())];
    for _ in 0..6 {
        let mut next = Vec::new();
        for (l, h) in frontier {
            let m = AlgebraicNumber::rational_between(&l, &h);
            if f.eval(&m).is_ok_and(|v| v.is_positive()) {
                return Some(m);
            }
            let mm: AlgebraicNumber = m.into();
            next.push((l, mm.clone()));
            next.push((mm, h));
        }
        frontier = next;
    }
    None
}

pub fn membership_witness_majorized(g: &PPoly, d: &SubspaceDescriptor) -> Result<Majorization, FuncError> {
    let c = &d.carrier;
    if g.domain() != (&c.a, &c.b) {
        return Err(FuncError::DomainMismatch);
    }
    let gp = g.positive_part();
    let pos_support = gp.support()?;
    for part in d.zero_set.parts() {
        if part.is_degenerate() {
            if g.sign_at(&part.lo) == Ordering::Greater {
                return Ok(Majorization::Infeasible(MajorizationCertificate::PositiveOnVanishingSet { t: part.lo.clone() }));
            }
            continue;
        }
        let overlap = pos_support.intersect(&IntervalSet::from_parts(vec![part.clone()]));
        for o in overlap.parts().iter().filter(|o| !o.is_degenerate()) {
            if let Some(t) = positive_point(g, &o.lo, &o.hi) {
                return Ok(Majorization::Infeasible(MajorizationCertificate::PositiveOnVanishingSet { t: t.into() }));
            }
        }
    }
    for p in &d.germ_zero {
        if !gp.germ_zero_at(p) {
            return Ok(Majorization::Infeasible(MajorizationCertificate::PositiveNearGermZero { p: p.clone() }));
        }
    }
    if c.has_c1() {
        if let Some(cert) = local_expansion(g, d) {
            return Ok(Majorization::Infeasible(cert));
        }
    }
    if d.contains(&gp) {
        return Ok(Majorization::Dominator(gp));
    }
    Err(FuncError::UnsupportedCarrier(format!("no dominator construction in {}", c)))
}

fn local_expansion(g: &PPoly, d: &SubspaceDescriptor) -> Option<MajorizationCertificate> {
    let (a, b) = g.domain();
    for part in d.zero_set.parts().iter().filter(|p| !p.is_degenerate()) {
        if let Some(p) = part.hi.as_rational().filter(|p| *p < b) {
            let s = g.piece_right_of(p)?.derivative().eval(p);
            if g.eval(p).ok()?.is_zero() && s.is_positive() {
                return Some(MajorizationCertificate::LocalExpansion { p: p.clone(), side: Side::Right, slope: s });
            }
        }
        if let Some(p) = part.lo.as_rational().filter(|p| *p > a) {
            let s = -g.piece_left_of(p)?.derivative().eval(p);
            if g.eval(p).ok()?.is_zero() && s.is_positive() {
                return Some(MajorizationCertificate::LocalExpansion { p: p.clone(), side: Side::Left, slope: s });
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DirectedRule {
    /// `f ↦ |f|` stays in the subspace, and `|f| >= f, 0`.
    AbsoluteValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Directedness {
    DirectedWitnessRule { rule: DirectedRule },
    /// `f` is a member with no upper bound `g >= f, 0` in the subspace: the
    /// point-value system over `points` is infeasible.
    NotDirected {
        f: PPoly,
        #[serde(with = "serde_qvec")]
        points: Vec<Q>,
        certificate: FarkasCertificate,
    },
}

impl Directedness {
    /// Rebuilds the point-value system and checks the certificate against it.
    pub fn check(&self, d: &SubspaceDescriptor) -> bool {
        match self {
            Directedness::DirectedWitnessRule { .. } => abs_closed(d),
            Directedness::NotDirected { f, points, certificate } => {
                let lp = probe_lp(d, f, points);
                d.contains(f) && certificate.verify() && lp.farkas_certificate().is_some_and(|c| c.rows == certificate.rows)
            }
        }
    }
}

fn abs_closed(d: &SubspaceDescriptor) -> bool {
    let c = &d.carrier;
    !c.has_c1()
        && !c.has_span_plus()
        && c.relations().iter().all(|(pts, cs)| pts.iter().zip(cs.iter()).all(|(t, k)| k.is_zero() || d.zero_set.contains_q(t)))
}

/// Variables `g(t_k)`: `g >= f`, `g >= 0`, vanishing data and relations.
fn probe_lp(d: &SubspaceDescriptor, f: &PPoly, points: &[Q]) -> LinearProgram {
    let n = points.len();
    let e = |k: usize| {
        let mut row = vec![Q::zero(); n];
        row[k] = Q::one();
        row
    };
    let mut lp = LinearProgram::new(n);
    for (k, t) in points.iter().enumerate() {
        lp.add(e(k), Relation::Ge, f.eval(t).unwrap_or_default());
        lp.add(e(k), Relation::Ge, Q::zero());
        if d.zero_set.contains_q(t) || d.germ_zero.contains(t) {
            lp.add(e(k), Relation::Eq, Q::zero());
        }
    }
    for (pts, cs) in d.carrier.relations() {
        let mut row = vec![Q::zero(); n];
        for (t, c) in pts.iter().zip(cs) {
            if let Some(k) = points.iter().position(|p| p == t) {
                row[k] += c;
            }
        }
        lp.add(row, Relation::Eq, Q::zero());
    }
    lp
}

fn sign_patterns(k: usize) -> impl Iterator<Item = Vec<Q>> {
    (0..3usize.pow(k as u32)).map(move |mut code| {
        let mut v = vec![Q::zero(); k];
        for slot in v.iter_mut().rev() {
            *slot = q(code as i64 % 3 - 1);
            code /= 3;
        }
        v
    })
}

/// An affine member taking the given values at the free relation points
/// and vanishing on all vanishing data.
fn pattern_member(d: &SubspaceDescriptor, free: &[Q], values: &[Q]) -> Option<PPoly> {
    let c = &d.carrier;
    let mut knots: BTreeMap<Q, Q> = BTreeMap::new();
    for part in d.zero_set.parts() {
        knots.insert(part.lo.as_rational()?.clone(), Q::zero());
        knots.insert(part.hi.as_rational()?.clone(), Q::zero());
    }
    for (t, v) in free.iter().zip(values) {
        knots.insert(t.clone(), v.clone());
    }
    for t in [&c.a, &c.b] {
        knots.entry(t.clone()).or_insert_with(Q::zero);
    }
    let flat: Vec<Q> = c.germ_points().into_iter().chain(d.germ_zero.iter().cloned()).collect();
    for p in &flat {
        knots.entry(p.clone()).or_insert_with(Q::zero);
    }
    let ts: Vec<Q> = knots.keys().cloned().collect();
    let gap = ts.windows(2).map(|w| &w[1] - &w[0]).min().unwrap_or_else(Q::one);
    let delta = gap / q(4);
    for p in &flat {
        let v = knots[p].clone();
        for t in [p - &delta, p + &delta] {
            if c.a <= t && t <= c.b {
                knots.insert(t, v.clone());
            }
        }
    }
    let (ts, vs): (Vec<Q>, Vec<Q>) = knots.into_iter().unzip();
    let f = PPoly::interpolate(&ts, &vs).ok()?;
    d.contains(&f).then_some(f)
}

/// Either a rule showing `D` is directed or a member with no upper bound
/// above `0` in `D`, certified by an infeasible point-value system.
pub fn directedness_certificate(d: &SubspaceDescriptor, probe_points: &[Q]) -> Result<Directedness, FuncError> {
    if abs_closed(d) {
        return Ok(Directedness::DirectedWitnessRule { rule: DirectedRule::AbsoluteValue });
    }
    let mut free: Vec<Q> = Vec::new();
    let mut points: Vec<Q> = probe_points.to_vec();
    for (pts, _) in d.carrier.relations() {
        for t in pts {
            points.push(t.clone());
            if !d.zero_set.contains_q(t) {
                free.push(t.clone());
            }
        }
    }
    free.sort();
    free.dedup();
    points.extend(d.carrier.germ_points());
    points.extend(d.germ_zero.iter().cloned());
    points.sort();
    points.dedup();
    if free.is_empty() {
        return Err(FuncError::InconclusiveProbe);
    }
    for values in sign_patterns(free.len()).filter(|v| v.iter().any(|x| !x.is_zero())) {
        let Some(f) = pattern_member(d, &free, &values) else { continue };
        if let Some(certificate) = probe_lp(d, &f, &points).farkas_certificate() {
            return Ok(Directedness::NotDirected { f, points, certificate });
        }
    }
    Err(FuncError::InconclusiveProbe)
}

/// A tent of height `peak` on `[t0 - δ, t0 + δ]`, or a `C^1` quadratic
/// B-spline bump with the same support and peak when `smooth`.
pub fn bump(a: &Q, b: &Q, t0: &Q, delta: &Q, peak: &Q, smooth: bool) -> Result<PPoly, FuncError> {
    let l = t0 - delta;
    let r = t0 + delta;
    if !smooth {
        return PPoly::interpolate(&[a.clone(), l, t0.clone(), r, b.clone()], &[Q::zero(), Q::zero(), peak.clone(), Q::zero(), Q::zero()]);
    }
    let h = delta * qf(2, 3);
    let scale = peak / qf(3, 4);
    let in_t = |cs: [Q; 3]| {
        let s = Poly::new(vec![cs[0].clone(), &cs[1] / &h, &cs[2] / (&h * &h)]);
        s.shift(&-l.clone()).scale(&scale)
    };
    let pieces = vec![
        Poly::zero(),
        in_t([q(0), q(0), qf(1, 2)]),
        in_t([qf(-3, 2), q(3), q(-1)]),
        in_t([qf(9, 2), q(-3), qf(1, 2)]),
        Poly::zero(),
    ];
    let knots = [a.clone(), l.clone(), &l + &h, &l + &h * q(2), r, b.clone()];
    PPoly::from_knots(&knots, pieces)
}

/// Some `g` in the carrier with `0 < g <= f`.
pub fn pervasive_witness(carrier: &Carrier, f: &PPoly) -> Result<PPoly, FuncError> {
    let (a, b) = (carrier.a.clone(), carrier.b.clone());
    let zero = PPoly::zero(a.clone(), b.clone());
    if f.domain() != (&a, &b) {
        return Err(FuncError::DomainMismatch);
    }
    if f.is_zero() || !zero.leq(f)? {
        return Err(FuncError::NoWitness("f must be positive and nonzero".into()));
    }
    if f.pieces().len() == 1 && f.pieces()[0].degree().unwrap_or(0) == 0 {
        let g = f.scale(&qf(1, 2));
        if carrier.contains(&g) {
            return Ok(g);
        }
    }
    let specials = carrier.special_points();
    let bps = f.breakpoints();
    for i in (0..f.pieces().len()).rev() {
        if f.pieces()[i].is_zero() {
            continue;
        }
        let Some(t0) = positive_point(f, &bps[i], &bps[i + 1]).filter(|t| !specials.contains(t)) else { continue };
        let t0a: AlgebraicNumber = t0.clone().into();
        let lo = AlgebraicNumber::rational_between(&bps[i], &t0a);
        let hi = AlgebraicNumber::rational_between(&t0a, &bps[i + 1]);
        let mut delta = (&t0 - &lo).min(&hi - &t0);
        for s in &specials {
            delta = delta.min((s - &t0).abs() / q(2));
        }
        let peak = f.eval(&t0)? / q(2);
        for _ in 0..64 {
            let g = bump(&a, &b, &t0, &delta, &peak, carrier.has_c1())?;
            if carrier.contains(&g) && g.leq(f)? {
                return Ok(g);
            }
            delta /= q(2);
        }
    }
    Err(FuncError::NoWitness("no bump fits under f".into()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupCheck {
    pub a_perp_s: bool,
    pub sup_exists: bool,
    pub a_perp_sup: bool,
    pub sup_in_band: bool,
    pub sup: PPoly,
}

impl SupCheck {
    /// `a ⊥ S` forces `a ⊥ sup S`.
    pub fn consistent(&self) -> bool {
        !(self.a_perp_s && self.sup_exists && !self.a_perp_sup)
    }
}

pub fn sup_disjoint_check(a: &PPoly, s: &[PPoly], carrier: &Carrier) -> Result<SupCheck, FuncError> {
    let mut sup = PPoly::zero(carrier.a.clone(), carrier.b.clone());
    let mut a_perp_s = true;
    for (k, x) in s.iter().enumerate() {
        sup = if k == 0 { x.clone() } else { sup.join(x)? };
        a_perp_s &= a.disjoint(x)?;
    }
    let sup_exists = carrier.contains(&sup);
    let a_perp_sup = a.disjoint(&sup)?;
    let band = band_generated_descriptor(Source::Generators(s), carrier)?;
    let sup_in_band = band.contains(&sup);
    Ok(SupCheck { a_perp_s, sup_exists, a_perp_sup, sup_in_band, sup })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DensityWitness {
    InfEqualsY,
    /// No member lies above `y`; `t_star` is a point where the obstruction
    /// is visible.
    Gap { t_star: AlgebraicNumber, certificate: MajorizationCertificate },
}

pub fn order_density_witness(d: &SubspaceDescriptor, cover: &SubspaceDescriptor, y: &PPoly) -> Result<DensityWitness, FuncError> {
    if !cover.contains(y) {
        return Err(FuncError::Precondition("y is not in the cover descriptor".into()));
    }
    if d.contains(y) {
        return Ok(DensityWitness::InfEqualsY);
    }
    match membership_witness_majorized(y, d)? {
        Majorization::Infeasible(certificate) => {
            let t_star = match &certificate {
                MajorizationCertificate::PositiveOnVanishingSet { t } => t.clone(),
                MajorizationCertificate::PositiveNearGermZero { p } => p.clone().into(),
                MajorizationCertificate::LocalExpansion { p, side, .. } => {
                    let (a, b) = y.domain();
                    let room = if *side == Side::Right { b - p } else { p - a };
                    let eps = room.min(qf(1, 4)) / q(2);
                    (if *side == Side::Right { p + eps } else { p - eps }).into()
                }
            };
            Ok(DensityWitness::Gap { t_star, certificate })
        }
        Majorization::Dominator(_) => Err(FuncError::UnsupportedCarrier("dominators exist; the infimum is not decided at witness level".into())),
    }
}
