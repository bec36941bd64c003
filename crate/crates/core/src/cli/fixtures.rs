//! End-to-end checks of the six worked examples.

use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use super::spec_file::SpaceSpecFile;
use super::CliError;
use crate::exact::linalg::Subspace;
use crate::exact::rational::{primitive, q, qf, qvec, Q};
use crate::fdspace::density::{inf_upper_set, is_majorizing, is_order_dense};
use crate::fdspace::{FdSpace, InfResult};
use crate::funcspace::examples::*;
use crate::funcspace::{
    band_generated_descriptor, directedness_certificate, ideal_extension_descriptor, membership_witness_majorized,
    Carrier, DirectedRule, Directedness, Majorization, MajorizationCertificate, Source,
};
use crate::funcspace::deciders::Side;

pub const K4_JSON: &str = include_str!("../../data/k4.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub diff: String,
}

fn check<T: PartialEq + Debug>(name: &str, expected: T, got: T) -> Check {
    let pass = expected == got;
    let diff = if pass { String::new() } else { format!("expected {expected:?}, got {got:?}") };
    Check { name: name.to_string(), pass, diff }
}

fn holds(name: &str, cond: bool) -> Check {
    check(name, true, cond)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureResult {
    pub name: String,
    pub checks: Vec<Check>,
}

impl FixtureResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub type Fixture = (&'static str, fn() -> Result<Vec<Check>, CliError>);

/// The K4 space and its named rays `v1..v4`.
pub fn k4_space() -> Result<(FdSpace, [Vec<Q>; 4]), CliError> {
    let spec = SpaceSpecFile::parse(K4_JSON)?;
    let named = spec.named_vectors();
    let v = ["v1", "v2", "v3", "v4"].map(|k| named[k].clone());
    Ok((spec.space()?, v))
}

fn fordability() -> Result<Vec<Check>, CliError> {
    let (s, [v1, v2, _, v4]) = k4_space()?;
    let expected = [qvec(&[-1, -1, 1]), qvec(&[1, -1, 1]), qvec(&[1, 1, 1]), qvec(&[-1, 1, 1])];
    let got: Vec<Vec<Q>> = s.functionals().iter().map(|f| primitive(f)).collect();
    let s_set = [v1.clone(), v4.clone()];
    let (ext, ok) = s.extension_band(&s_set)?;
    let restricted = s.restrict(&ext.subspace);
    Ok(vec![
        check("functionals are f1..f4", expected.to_vec(), got),
        check("embed(v2) ∝ (0,0,1,1)", qvec(&[0, 0, 1, 1]), primitive(&s.embed(&v2))),
        holds("embedding is bipositive", s.is_bipositive()),
        check("band generated by {v1,v4} is X", Subspace::full(3), s.band_generated(&s_set)?.subspace),
        check("restriction of the cover band is span{v1,v4}", Subspace::span(3, &s_set)?, restricted.clone()),
        holds("restriction differs from X", !restricted.is_full()),
        check("extension band restricts correctly", false, ok),
        check("fordable", false, s.is_fordable()),
    ])
}

fn example1() -> Result<Vec<Check>, CliError> {
    let (s, [v1, _, _, v4]) = k4_space()?;
    let s_set = [v1, v4];
    let ii = s.image_of(&s.ideal_generated(&s_set)?.subspace);
    let j = s.extension_ideal(&s_set)?.subspace;
    let z = qvec(&[1, 0, 1, 0]);
    let d = is_order_dense(&ii, &j, Some(&z))?;
    Ok(vec![
        check("extension ideal is span{e1,e2,e3}", Subspace::coordinate(4, &[0, 1, 2]), j.clone()),
        check("majorizing", true, is_majorizing(&ii, &j)?),
        check("inf at z", InfResult::Point(qvec(&[1, 2, 1, 0])), inf_upper_set(&ii, &z)),
        check("order dense", false, d.dense),
        check("witness", Some(z), d.witness),
    ])
}

fn example2() -> Result<Vec<Check>, CliError> {
    let (s, [_, v2, _, _]) = k4_space()?;
    let b = Subspace::span(3, std::slice::from_ref(&v2))?;
    let (ext, _) = s.extension_band(&[v2])?;
    let ib = s.image_of(&b);
    let w = qvec(&[0, 0, 0, 1]);
    let d = is_order_dense(&ib, &ext.subspace, Some(&w))?;
    Ok(vec![
        holds("span{v2} is a band", s.is_band(&b)),
        check("cover band is span{e3,e4}", Subspace::coordinate(4, &[2, 3]), ext.subspace.clone()),
        check("majorizing", true, is_majorizing(&ib, &ext.subspace)?),
        check("order dense", false, d.dense),
        check("witness", Some(w), d.witness),
    ])
}

fn namioka() -> Result<Vec<Check>, CliError> {
    let probes = [q(-1), q(0), q(1)];
    let i = namioka_ideal();
    let band = namioka_band();
    let cert = directedness_certificate(&band, &probes)?;
    let lp_ok = matches!(&cert, Directedness::NotDirected { certificate, .. } if certificate.verify());
    Ok(vec![
        check(
            "I is directed by the absolute value rule",
            Directedness::DirectedWitnessRule { rule: DirectedRule::AbsoluteValue },
            directedness_certificate(&i, &probes)?,
        ),
        holds("band is not directed with a verified LP certificate", lp_ok && cert.check(&band)),
    ])
}

fn ex2() -> Result<Vec<Check>, CliError> {
    let c1 = ex2_band(Carrier::c1_pp2(q(0), q(1)));
    let pp2 = ex2_band(Carrier::pp2(q(0), q(1)));
    let expansion = MajorizationCertificate::LocalExpansion { p: qf(1, 2), side: Side::Right, slope: q(1) };
    Ok(vec![
        check("C1 band has no dominator", Majorization::Infeasible(expansion), membership_witness_majorized(&ex2_g(), &c1)?),
        check("PP2 band has a dominator", Majorization::Dominator(ex2_g()), membership_witness_majorized(&ex2_g(), &pp2)?),
    ])
}

fn closedness() -> Result<Vec<Check>, CliError> {
    let b = band_b();
    let (y, rho) = (cover_y(), x_rho());
    let ideal_y = ideal_extension_descriptor(&b, &y, &[])?;
    let band_y = band_generated_descriptor(Source::Descriptor(&b), &y)?;
    let ideal_rho = ideal_extension_descriptor(&b, &rho, &[])?;
    let band_rho = band_generated_descriptor(Source::Descriptor(&b), &rho)?;
    let x = t_plus();
    let rdp = rdp_failure_lp(&rdp_probe_points()).farkas_certificate();
    Ok(vec![
        holds("ideal is inside the band in Y", ideal_y.is_subset_of(&band_y)),
        holds("t+ lies in the band in Y", band_y.contains(&x)),
        holds("t+ lies outside the ideal in Y", !ideal_y.contains(&x)),
        check("ideal equals band in the X^rho surrogate", band_rho, ideal_rho),
        holds("RDP decomposition system is infeasible", rdp.is_some_and(|c| c.verify())),
    ])
}

pub fn registry() -> Vec<Fixture> {
    vec![
        ("Namioka", namioka),
        ("fordability", fordability),
        ("ex2", ex2),
        ("example1", example1),
        ("example2", example2),
        ("closedness", closedness),
    ]
}

pub fn run_registry(registry: &[Fixture]) -> Result<Vec<FixtureResult>, CliError> {
    if registry.is_empty() {
        return Err(CliError::Field("fixture registry is empty".into()));
    }
    registry.iter().map(|(name, f)| Ok(FixtureResult { name: name.to_string(), checks: f()? })).collect()
}

pub fn fixtures() -> Result<Vec<FixtureResult>, CliError> {
    run_registry(&registry())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_pass() {
        let rs = fixtures().unwrap();
        assert_eq!(rs.len(), 6);
        for r in &rs {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn empty_registry() {
        assert!(run_registry(&[]).is_err());
    }
}
