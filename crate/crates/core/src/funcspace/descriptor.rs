//! Ideals and bands of a carrier described by a vanishing set and
//! germ-zero flags, with the disjoint complement rule system.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::carrier::{Carrier, Constraint};
use super::intervals::IntervalSet;
use super::ppoly::PPoly;
use super::FuncError;
use crate::exact::rational::{format_q, serde_qvec, Q};

/// `{f ∈ carrier : f = 0 on zero_set, f = 0 near each germ_zero point}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubspaceDescriptor {
    pub zero_set: IntervalSet,
    #[serde(with = "serde_qvec")]
    pub germ_zero: Vec<Q>,
    pub carrier: Carrier,
}

/// Input of the complement operation.
#[derive(Debug, Clone)]
pub enum Source<'a> {
    Generators(&'a [PPoly]),
    Descriptor(&'a SubspaceDescriptor),
}

impl SubspaceDescriptor {
    pub fn new(zero_set: IntervalSet, germ_zero: Vec<Q>, carrier: Carrier) -> Self {
        SubspaceDescriptor { zero_set, germ_zero, carrier }.canonical()
    }

    pub fn full(carrier: Carrier) -> Self {
        Self::new(IntervalSet::empty(), vec![], carrier)
    }

    pub fn zero(carrier: Carrier) -> Self {
        let z = IntervalSet::interval(carrier.a.clone(), carrier.b.clone());
        Self::new(z, vec![], carrier)
    }

    /// Implied flags are added at the carrier's locally constant points in
    /// the vanishing set; flags interior to the vanishing set are dropped.
    fn canonical(mut self) -> Self {
        let (a, b) = (self.carrier.a.clone(), self.carrier.b.clone());
        for p in self.carrier.germ_points() {
            if self.zero_set.contains_q(&p) {
                self.germ_zero.push(p);
            }
        }
        self.germ_zero.sort();
        self.germ_zero.dedup();
        let z = self.zero_set.clone();
        self.germ_zero.retain(|p| !z.interior_contains(&p.clone().into(), &a, &b));
        self
    }

    /// The same vanishing data read in another carrier.
    pub fn in_carrier(&self, carrier: Carrier) -> Self {
        Self::new(self.zero_set.clone(), self.germ_zero.clone(), carrier)
    }

    pub fn contains(&self, f: &PPoly) -> bool {
        self.carrier.contains(f)
            && f.zero_set().is_ok_and(|z| self.zero_set.is_subset_of(&z))
            && self.germ_zero.iter().all(|p| f.germ_zero_at(p))
    }

    /// Whether every member of `self` is a member of `other` (same
    /// carrier).
    pub fn is_subset_of(&self, other: &SubspaceDescriptor) -> bool {
        self.carrier == other.carrier
            && other.zero_set.is_subset_of(&self.zero_set)
            && other.germ_zero.iter().all(|p| {
                self.germ_zero.contains(p) || self.zero_set.interior_contains(&p.clone().into(), &self.carrier.a, &self.carrier.b)
            })
    }
}

impl fmt::Display for SubspaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flags: Vec<String> = self.germ_zero.iter().map(format_q).collect();
        write!(f, "{{f ∈ {} : f = 0 on {}", self.carrier, self.zero_set)?;
        if !flags.is_empty() {
            write!(f, ", germ-zero at {{{}}}", flags.join(", "))?;
        }
        write!(f, "}}")
    }
}

fn check_rules(carrier: &Carrier) -> Result<(), FuncError> {
    for c in &carrier.constraints {
        if let Constraint::MaxDegree(0) = c {
            return Err(FuncError::UnsupportedCarrier("constant carriers have no complement rule".into()));
        }
    }
    Ok(())
}

/// The disjoint complement within `carrier`.
///
/// Members may be nonzero on any open set avoiding the input's vanishing
/// data, so the union of realizable supports is the closure of the
/// complement of the vanishing set (or the union of generator supports).
pub fn dcomp(source: Source<'_>, carrier: &Carrier) -> Result<SubspaceDescriptor, FuncError> {
    check_rules(carrier)?;
    let z1 = match source {
        Source::Generators(gens) => {
            let mut z = IntervalSet::empty();
            for g in gens {
                z = z.union(&g.support()?);
            }
            z
        }
        Source::Descriptor(d) => {
            check_rules(&d.carrier)?;
            d.zero_set.closure_of_complement(&d.carrier.a, &d.carrier.b)
        }
    };
    Ok(SubspaceDescriptor::new(z1, vec![], carrier.clone()))
}

pub fn band_generated_descriptor(source: Source<'_>, carrier: &Carrier) -> Result<SubspaceDescriptor, FuncError> {
    let d = dcomp(source, carrier)?;
    dcomp(Source::Descriptor(&d), carrier)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qf};
    use crate::exact::Poly;
    use crate::funcspace::carrier::Base;

    fn y() -> Carrier {
        Carrier::pp2(q(-1), q(1))
    }

    fn x_rho() -> Carrier {
        y().with("X^rho surrogate", Base::PP2, vec![Constraint::GermConstantAt(vec![q(0)])])
    }

    #[test]
    fn generator_support_rule() {
        let a2 = PPoly::from_knots(&[q(-1), qf(1, 2), q(1)], vec![Poly::zero(), Poly::linear(qf(-1, 2), q(1))]).unwrap();
        let d = dcomp(Source::Generators(&[a2]), &y()).unwrap();
        assert_eq!(d.zero_set, IntervalSet::interval(qf(1, 2), q(1)));
        let e = dcomp(Source::Generators(&[]), &y()).unwrap();
        assert!(e.zero_set.is_empty());
    }

    #[test]
    fn band_in_two_carriers() {
        let b = SubspaceDescriptor::new(IntervalSet::interval(q(-1), q(0)), vec![q(0)], y());
        let band_y = band_generated_descriptor(Source::Descriptor(&b), &y()).unwrap();
        assert_eq!(band_y.zero_set, IntervalSet::interval(q(-1), q(0)));
        assert!(band_y.germ_zero.is_empty());
        assert!(b.is_subset_of(&band_y) && !band_y.is_subset_of(&b));

        let b_rho = b.in_carrier(x_rho());
        let d = dcomp(Source::Descriptor(&b_rho), &x_rho()).unwrap();
        assert_eq!(d.zero_set, IntervalSet::interval(q(0), q(1)));
        let band_rho = dcomp(Source::Descriptor(&d), &x_rho()).unwrap();
        assert_eq!(band_rho, b_rho);
    }

    #[test]
    fn triple_complement() {
        let b = SubspaceDescriptor::new(IntervalSet::interval(qf(-1, 2), q(0)).union(&IntervalSet::points(&[q(-1), q(1)])), vec![], y());
        let d1 = dcomp(Source::Descriptor(&b), &y()).unwrap();
        let d2 = dcomp(Source::Descriptor(&d1), &y()).unwrap();
        let d3 = dcomp(Source::Descriptor(&d2), &y()).unwrap();
        assert_eq!(d1, d3);
        assert_eq!(d2.zero_set, IntervalSet::interval(qf(-1, 2), q(0)));
    }

    #[test]
    fn constant_carrier_unsupported() {
        let c = y().with("const", Base::PP2, vec![Constraint::MaxDegree(0)]);
        assert!(matches!(dcomp(Source::Generators(&[]), &c), Err(FuncError::UnsupportedCarrier(_))));
    }
}
