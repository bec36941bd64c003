//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use riesz_cover::cli::fixtures::k4_space;
use riesz_cover::cli::properties::random_pointed_generators;
use riesz_cover::cli::{properties, PropertyConfig};
use riesz_cover::cone::fourier_motzkin::fm_cone_inequalities;
use riesz_cover::cone::PolyCone;
use riesz_cover::exact::lp::{LinearProgram, Relation};
use riesz_cover::exact::rational::{dot, primitive, q, qf, qvec};
use riesz_cover::exact::{sturm_sign, AlgebraicNumber, Poly, SignClass, Subspace, Q};
use riesz_cover::fdspace::density::{inf_upper_set, is_majorizing, is_order_dense};
use riesz_cover::fdspace::InfResult;
use riesz_cover::funcspace::deciders::Side;
use riesz_cover::funcspace::examples::*;
use riesz_cover::funcspace::{
    band_generated_descriptor, directedness_certificate, ideal_extension_descriptor, membership_witness_majorized, Carrier,
    DirectedRule, Directedness, Majorization, MajorizationCertificate, Source,
};

type Outcome = Result<(), String>;

fn ensure(cond: bool, what: &str) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn within(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    f()?;
    let took = start.elapsed();
    ensure(took < limit, &format!("took {took:?}, limit {limit:?}"))
}

fn criterion1() -> Outcome {
    within(Duration::from_secs(1), || {
        let (s, [_, v2, _, _]) = k4_space().map_err(|e| e.to_string())?;
        let f = [qvec(&[-1, -1, 1]), qvec(&[1, -1, 1]), qvec(&[1, 1, 1]), qvec(&[-1, 1, 1])];
        ensure(s.m() == 4, "expected 4 functionals")?;
        for (got, want) in s.functionals().iter().zip(&f) {
            ensure(primitive(got) == *want, &format!("functional {got:?} is not a positive multiple of {want:?}"))?;
        }
        ensure(primitive(&s.embed(&v2)) == qvec(&[0, 0, 1, 1]), "embed(v2) not proportional to (0,0,1,1)")?;
        let h = PolyCone::from_inequalities(3, s.functionals()).map_err(|e| e.to_string())?;
        ensure(h.same_cone(s.cone()) && s.is_bipositive(), "H-representation differs from K")
    })
}

fn criterion2() -> Outcome {
    within(Duration::from_secs(1), || {
        let (s, [v1, _, _, v4]) = k4_space().map_err(|e| e.to_string())?;
        let set = [v1, v4];
        let ext = s.extension_ideal(&set).map_err(|e| e.to_string())?.subspace;
        ensure(ext == Subspace::coordinate(4, &[0, 1, 2]), "extension ideal is not span{e1,e2,e3}")?;
        let ii = s.image_of(&s.ideal_generated(&set).map_err(|e| e.to_string())?.subspace);
        ensure(is_majorizing(&ii, &ext) == Ok(true), "i(I) not majorizing")?;
        let z = qvec(&[1, 0, 1, 0]);
        ensure(inf_upper_set(&ii, &z) == InfResult::Point(qvec(&[1, 2, 1, 0])), "inf at z is not (1,2,1,0)")?;
        let r = is_order_dense(&ii, &ext, Some(&z)).map_err(|e| e.to_string())?;
        ensure(!r.dense && r.witness.as_deref() == Some(&z[..]), "expected non-density with witness z")?;
        let w = is_order_dense(&ii, &ext, None).map_err(|e| e.to_string())?;
        let wit = w.witness.ok_or("no witness without probe")?;
        ensure(!w.dense && inf_upper_set(&ii, &wit) != InfResult::Point(wit.clone()), "free witness has no gap")
    })
}

fn criterion3() -> Outcome {
    let (s, [v1, _, _, v4]) = k4_space().map_err(|e| e.to_string())?;
    let set = [v1, v4];
    ensure(s.band_generated(&set).map_err(|e| e.to_string())?.subspace.is_full(), "band generated by {v1,v4} is not X")?;
    let (ext, ok) = s.extension_band(&set).map_err(|e| e.to_string())?;
    let r = s.restrict(&ext.subspace);
    ensure(r == Subspace::span(3, &set).map_err(|e| e.to_string())? && !r.is_full(), "restriction is not span{v1,v4}")?;
    ensure(!ok, "extension band restricts correctly")?;
    ensure(!s.is_fordable(), "K4 reported fordable")
}

fn criterion4() -> Outcome {
    let (s, [_, v2, _, _]) = k4_space().map_err(|e| e.to_string())?;
    let b = Subspace::span(3, std::slice::from_ref(&v2)).map_err(|e| e.to_string())?;
    ensure(s.is_band(&b), "span{v2} is not a band")?;
    let (ext, _) = s.extension_band(&[v2]).map_err(|e| e.to_string())?;
    ensure(ext.subspace == Subspace::coordinate(4, &[2, 3]), "cover band is not span{e3,e4}")?;
    let ib = s.image_of(&b);
    ensure(is_majorizing(&ib, &ext.subspace) == Ok(true), "not majorizing")?;
    let w = qvec(&[0, 0, 0, 1]);
    let r = is_order_dense(&ib, &ext.subspace, Some(&w)).map_err(|e| e.to_string())?;
    ensure(!r.dense && r.witness == Some(w), "expected non-density with witness (0,0,0,1)")
}

fn criterion5() -> Outcome {
    let probes = [q(-1), q(0), q(1)];
    let i = namioka_ideal();
    let rule = directedness_certificate(&i, &probes).map_err(|e| e.to_string())?;
    ensure(rule == Directedness::DirectedWitnessRule { rule: DirectedRule::AbsoluteValue }, "I not directed by |f|")?;
    let band = namioka_band();
    let cert = directedness_certificate(&band, &probes).map_err(|e| e.to_string())?;
    match &cert {
        Directedness::NotDirected { f, certificate, .. } => {
            ensure(band.contains(f), "f is not in the band")?;
            ensure(certificate.verify() && cert.check(&band), "certificate does not verify")
        }
        other => Err(format!("expected NotDirected, got {other:?}")),
    }
}

fn criterion6() -> Outcome {
    let c1 = ex2_band(Carrier::c1_pp2(q(0), q(1)));
    let want = MajorizationCertificate::LocalExpansion { p: qf(1, 2), side: Side::Right, slope: q(1) };
    let got = membership_witness_majorized(&ex2_g(), &c1).map_err(|e| e.to_string())?;
    ensure(got == Majorization::Infeasible(want), &format!("C1 band: {got:?}"))?;
    let pp2 = ex2_band(Carrier::pp2(q(0), q(1)));
    match membership_witness_majorized(&ex2_g(), &pp2).map_err(|e| e.to_string())? {
        Majorization::Dominator(d) => ensure(pp2.contains(&d) && ex2_g().leq(&d) == Ok(true), "dominator invalid"),
        other => Err(format!("PP2 band: {other:?}")),
    }
}

fn criterion7() -> Outcome {
    let b = band_b();
    let (y, rho) = (cover_y(), x_rho());
    let err = |e: riesz_cover::funcspace::FuncError| e.to_string();
    let ideal_y = ideal_extension_descriptor(&b, &y, &[]).map_err(err)?;
    let band_y = band_generated_descriptor(Source::Descriptor(&b), &y).map_err(err)?;
    let x = t_plus();
    ensure(ideal_y.is_subset_of(&band_y) && band_y.contains(&x) && !ideal_y.contains(&x), "I_B^Y is not strictly inside B_B^Y via t+")?;
    let ideal_rho = ideal_extension_descriptor(&b, &rho, &[]).map_err(err)?;
    let band_rho = band_generated_descriptor(Source::Descriptor(&b), &rho).map_err(err)?;
    ensure(ideal_rho == band_rho, "I_B^Xrho differs from B_B^Xrho")?;
    let cert = rdp_failure_lp(&rdp_probe_points()).farkas_certificate().ok_or("RDP system is feasible")?;
    ensure(cert.verify(), "RDP certificate does not verify")
}

fn criterion8() -> Outcome {
    within(Duration::from_secs(60), || {
        let mut cfg = PropertyConfig::new(42, 100);
        cfg.function_trials = 0;
        let r = properties(&cfg);
        ensure(r.rejected.is_empty(), &format!("rejected spaces: {:?}", r.rejected))?;
        match r.properties.iter().find(|p| p.failed > 0) {
            Some(p) => Err(format!("{}: {:?}", p.name, p.counterexample)),
            None => ensure(r.properties.len() == 7, "missing properties"),
        }
    })
}

fn criterion9() -> Outcome {
    within(Duration::from_secs(60), || {
        let mut cfg = PropertyConfig::new(42, 0);
        cfg.function_trials = 200;
        let r = properties(&cfg);
        match r.properties.iter().find(|p| p.failed > 0) {
            Some(p) => Err(format!("{}: {:?}", p.name, p.counterexample)),
            None => ensure(r.properties.iter().all(|p| p.passed >= 190), "too few trials ran"),
        }
    })
}

/// `f = Σ λ_k g_k`, `λ >= 0` over the facets.
fn implied_by(f: &[Q], facets: &[Vec<Q>]) -> bool {
    let mut lp = LinearProgram::new(facets.len());
    lp.all_nonneg();
    for (i, fi) in f.iter().enumerate() {
        lp.add(facets.iter().map(|g| g[i].clone()).collect(), Relation::Eq, fi.clone());
    }
    lp.is_feasible()
}

fn dd_vs_fm(rng: &mut ChaCha8Rng) -> Outcome {
    for trial in 0..50 {
        let n = rng.gen_range(2..=4);
        let gens = random_pointed_generators(rng, n);
        let dd = PolyCone::from_generators(n, &gens).map_err(|e| e.to_string())?;
        let fm = fm_cone_inequalities(n, &gens);
        let ctx = || format!("trial {trial}: generators {gens:?}");
        for f in dd.facets() {
            ensure(fm.contains(&primitive(f)), &format!("{}: DD facet {f:?} missing from FM", ctx()))?;
        }
        for r in &fm {
            ensure(gens.iter().all(|g| !dot(r, g).is_negative()), &format!("{}: FM row {r:?} invalid", ctx()))?;
            ensure(implied_by(r, dd.facets()), &format!("{}: FM row {r:?} not implied by DD", ctx()))?;
        }
    }
    Ok(())
}

fn sampled_class(p: &Poly, grid: &[Q]) -> SignClass {
    let (mut pos, mut neg, mut zero) = (false, false, false);
    for t in grid {
        let v = p.eval(t);
        pos |= v.is_positive();
        neg |= v.is_negative();
        zero |= v.is_zero();
    }
    match (pos, neg, zero) {
        (true, true, _) => SignClass::Mixed,
        (true, false, false) => SignClass::AllPositive,
        (false, true, false) => SignClass::AllNegative,
        (true, false, true) => SignClass::AllNonnegWithZeros,
        (false, true, true) => SignClass::AllNonposWithZeros,
        (false, false, _) => SignClass::IdenticallyZero,
    }
}

/// Roots are grid points, points outside `[-1, 1]` or complex, so sampling
/// on the grid sees every sign change.
fn random_grid_poly(rng: &mut ChaCha8Rng, grid: &[Q]) -> Poly {
    let mut p = Poly::constant(q(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }));
    let mut deg = 0;
    while deg < 4 && rng.gen_bool(0.75) {
        let factor = match rng.gen_range(0..3) {
            0 => Poly::linear(-grid[rng.gen_range(0..grid.len())].clone(), q(1)),
            1 => Poly::linear(qf(rng.gen_range(8..20), 7) * q(if rng.gen_bool(0.5) { 1 } else { -1 }), q(1)),
            _ if deg <= 2 => {
                deg += 1;
                Poly::new(vec![qf(rng.gen_range(1..5), 3), q(0), q(1)])
            }
            _ => Poly::constant(q(1)),
        };
        deg += 1;
        p = &p * &factor;
    }
    if rng.gen_ratio(1, 20) {
        Poly::zero()
    } else {
        p
    }
}

fn sturm_vs_sampling(rng: &mut ChaCha8Rng) -> Outcome {
    let grid: Vec<Q> = (0..1000).map(|k| qf(-999 + 2 * k, 999)).collect();
    let (a, b) = (AlgebraicNumber::int(-1), AlgebraicNumber::int(1));
    for trial in 0..100 {
        let p = random_grid_poly(rng, &grid);
        let exact = sturm_sign(&p, &a, &b).map_err(|e| e.to_string())?;
        let sampled = sampled_class(&p, &grid);
        ensure(exact == sampled, &format!("trial {trial}: {p:?} sturm {exact:?} sampling {sampled:?}"))?;
    }
    Ok(())
}

fn criterion10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    dd_vs_fm(&mut rng)?;
    sturm_vs_sampling(&mut rng)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("K4 embedding", criterion1),
        ("example1 extension ideal and density witness", criterion2),
        ("K4 non-fordability", criterion3),
        ("example2 band and density witness", criterion4),
        ("Namioka directedness certificates", criterion5),
        ("C1 band majorization", criterion6),
        ("piecewise-affine ideal and band chain", criterion7),
        ("finite-dimensional property suite", criterion8),
        ("function-space property suite", criterion9),
        ("oracle cross-checks", criterion10),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2}: PASS  {name}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("{}/10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
