//! Seeded property suites over random spaces and random functions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cone::PolyCone;
use crate::exact::linalg::Subspace;
use crate::exact::rational::{add_vec, format_vec, q, scale_vec, support, Q};
use crate::fdspace::density::{is_majorizing, order_dense_in};
use crate::fdspace::{FdError, FdSpace};
use crate::funcspace::random::{random_pa, random_pa_nonneg, random_pp2};
use crate::funcspace::{dcomp, pervasive_witness, sup_disjoint_check, Carrier, PPoly, Source};
use crate::par::Exec;

pub type Builder = fn(PolyCone) -> Result<FdSpace, FdError>;

#[derive(Clone, Copy)]
pub struct PropertyConfig {
    pub seed: u64,
    pub trials: usize,
    pub function_trials: usize,
    pub exec: Exec,
    /// Turns a cone into a space; replaced by mutation tests.
    pub builder: Builder,
}

impl PropertyConfig {
    pub fn new(seed: u64, trials: usize) -> Self {
        PropertyConfig { seed, trials, function_trials: 2 * trials, exec: Exec::default(), builder: FdSpace::build }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyStat {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub seed: u64,
    pub trials: usize,
    pub function_trials: usize,
    /// Random cones the builder refused, with the reason.
    pub rejected: Vec<String>,
    pub properties: Vec<PropertyStat>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }

    pub fn stat(&self, name: &str) -> Option<&PropertyStat> {
        self.properties.iter().find(|p| p.name == name)
    }
}

type Outcome = (&'static str, Result<(), String>);

fn rng_for(seed: u64, stream: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos((trial as u128) << 20);
    rng
}

/// Generators of a random pointed generating cone in `Q^n`: the last
/// coordinate of every generator is positive.
pub fn random_pointed_generators<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<Q>> {
    loop {
        let k = rng.gen_range(n..=n + 2);
        let gens: Vec<Vec<Q>> = (0..k)
            .map(|_| {
                let mut g: Vec<Q> = (0..n - 1).map(|_| q(rng.gen_range(-3..=3))).collect();
                g.push(q(rng.gen_range(1..=3)));
                g
            })
            .collect();
        if crate::exact::linalg::Subspace::span(n, &gens).map(|s| s.is_full()).unwrap_or(false) {
            return gens;
        }
    }
}

fn positive_combo<R: Rng>(rng: &mut R, rays: &[Vec<Q>], n: usize) -> Vec<Q> {
    let mut x = vec![q(0); n];
    for r in rays {
        if rng.gen_bool(0.5) {
            x = add_vec(&x, &scale_vec(&q(rng.gen_range(1..=3)), r));
        }
    }
    x
}

fn signed_combo<R: Rng>(rng: &mut R, rays: &[Vec<Q>], n: usize) -> Vec<Q> {
    let mut x = vec![q(0); n];
    for r in rays {
        x = add_vec(&x, &scale_vec(&q(rng.gen_range(-2..=2)), r));
    }
    x
}

fn pick_vectors<R: Rng>(rng: &mut R, rays: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let count = rng.gen_range(1..=2);
    (0..count)
        .map(|_| if rng.gen_bool(0.5) { rays.choose(rng).expect("rays").clone() } else { signed_combo(rng, rays, n) })
        .collect()
}

fn pick_positive<R: Rng>(rng: &mut R, rays: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| if rng.gen_bool(0.5) { rays.choose(rng).expect("rays").clone() } else { positive_combo(rng, rays, n) })
        .collect()
}

fn show(vs: &[Vec<Q>]) -> String {
    vs.iter().map(|v| format_vec(v)).collect::<Vec<_>>().join(" ")
}

fn verdict(ok: bool, ctx: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(ctx())
    }
}

fn fd_trial(cfg: &PropertyConfig, trial: usize) -> (Option<String>, Vec<Outcome>) {
    let mut rng = rng_for(cfg.seed, 1, trial);
    let n = rng.gen_range(2..=4);
    let gens = random_pointed_generators(&mut rng, n);
    let cone = PolyCone::from_generators(n, &gens).expect("consistent");
    let space = match (cfg.builder)(cone) {
        Ok(s) => s,
        Err(e) => return (Some(format!("cone {}: {e}", show(&gens))), vec![]),
    };
    let rays = space.cone().rays().to_vec();
    let m = space.m();
    let cone_ctx = format!("cone generators {}", show(&gens));
    let mut out = Vec::new();

    for _ in 0..4 {
        let (x, y) = if rng.gen_bool(0.5) {
            (rays.choose(&mut rng).expect("rays").clone(), rays.choose(&mut rng).expect("rays").clone())
        } else {
            (signed_combo(&mut rng, &rays, n), signed_combo(&mut rng, &rays, n))
        };
        let ok = space.disjoint_def(&x, &y) == space.disjoint_coord(&x, &y);
        out.push(("disjoint_def <=> disjoint_coord", verdict(ok, || format!("{cone_ctx}; x = {}, y = {}", format_vec(&x), format_vec(&y)))));
    }

    let mset = pick_vectors(&mut rng, &rays, n);
    let r = space.dcomplement(&mset).map(|d| {
        let d3 = space.dcomplement_of(&space.dcomplement_of(&d));
        d == d3
    });
    out.push(("M^d = M^ddd", verdict(r == Ok(true), || format!("{cone_ctx}; M = {}", show(&mset)))));

    let s = pick_positive(&mut rng, &rays, n);
    let ctx = || format!("{cone_ctx}; S = {}", show(&s));
    let sum = s.iter().fold(vec![q(0); n], |acc, x| add_vec(&acc, x));
    let cover_ideal = Subspace::coordinate(m, &support(&space.embed(&sum)));
    let ideal = space.ideal_generated(&s).map(|h| h.subspace);
    let inclusion = ideal.as_ref().ok().and_then(|i| {
        let lhs = space.image_of(i);
        cover_ideal.intersect(&space.image()).ok().map(|rhs| lhs == rhs)
    });
    out.push(("i(I_S) = I_i(S) ∩ i(X)", verdict(inclusion == Some(true), ctx)));

    let twice = ideal.as_ref().ok().map(|i| {
        let img = space.image_of(i);
        let mut coords: Vec<usize> = img.basis().iter().flat_map(|b| support(b)).collect();
        coords.sort_unstable();
        coords.dedup();
        Subspace::coordinate(m, &coords) == cover_ideal
    });
    out.push(("I_i(S) = I_i(I_S)", verdict(twice == Some(true), ctx)));

    let triple = ideal.as_ref().ok().and_then(|i| {
        let ext = space.extension_ideal(&s).ok()?;
        let maj = is_majorizing(&space.image_of(i), &ext.subspace).ok()?;
        Some(space.is_directed(i) && maj && space.restrict(&ext.subspace) == *i)
    });
    out.push(("directedness equivalence", verdict(triple == Some(true), ctx)));

    if let Ok(i) = &ideal {
        let l = space.image_of(i);
        let mut coords: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
        if coords.is_empty() {
            coords.push(0);
        }
        for j in [cover_ideal.clone(), Subspace::coordinate(m, &coords)] {
            let ok = match (order_dense_in(&l, &j, None, Exec::Sequential), is_majorizing(&l, &j)) {
                (Ok(d), Ok(maj)) => !d.dense || maj,
                _ => false,
            };
            out.push(("order dense => majorizing", verdict(ok, || format!("{}; J = {}", ctx(), j.describe()))));
        }
    }

    let (p, f, full) = (space.is_pervasive(), space.is_fordable(), space.image_is_full());
    out.push(("pervasive <=> fordable <=> i(X) = Q^m", verdict(p == f && f == full, || format!("{cone_ctx}; pervasive {p}, fordable {f}, full {full}"))));
    (None, out)
}

fn show_f(f: &PPoly) -> String {
    serde_json::to_string(f).expect("serializable")
}

fn func_trial(cfg: &PropertyConfig, trial: usize) -> Vec<Outcome> {
    let mut rng = rng_for(cfg.seed, 2, trial);
    let (a, b) = (q(-1), q(1));
    let mut out = Vec::new();
    let gen = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { random_pa(rng, -1, 1) } else { random_pp2(rng, -1, 1) };
    let (f, g) = (gen(&mut rng), gen(&mut rng));
    let ctx = || format!("f = {}, g = {}", show_f(&f), show_f(&g));

    let lattice = (|| -> Result<bool, crate::funcspace::FuncError> {
        let (j, m) = (f.join(&g)?, f.meet(&g)?);
        Ok(j.add(&m)? == f.add(&g)? && j == g.join(&f)? && f.join(&m)? == f && f.meet(&j)? == f)
    })();
    out.push(("join/meet identities", verdict(lattice == Ok(true), ctx)));

    let dis = (|| Ok::<_, crate::funcspace::FuncError>(f.disjoint(&g)? == f.abs().meet(&g.abs())?.is_zero()))();
    out.push(("disjoint <=> |f| ∧ |g| = 0", verdict(dis == Ok(true), ctx)));

    let y = Carrier::pp2(a.clone(), b.clone());
    let gens = vec![random_pa_nonneg(&mut rng, -1, 1), random_pa_nonneg(&mut rng, -1, 1)];
    let triple = (|| {
        let d1 = dcomp(Source::Generators(&gens), &y)?;
        let d3 = dcomp(Source::Descriptor(&dcomp(Source::Descriptor(&d1), &y)?), &y)?;
        Ok::<_, crate::funcspace::FuncError>(d1 == d3)
    })();
    out.push(("dcomp^3 = dcomp", verdict(triple == Ok(true), || format!("S = [{}, {}]", show_f(&gens[0]), show_f(&gens[1])))));

    // Half of the time `a` lives where S vanishes.
    let s: Vec<PPoly> = (0..rng.gen_range(1..=3)).map(|_| random_pa_nonneg(&mut rng, -1, 1)).collect();
    let a_fn = if rng.gen_bool(0.5) {
        let z = s.iter().try_fold(PPoly::zero(a.clone(), b.clone()), |acc, x| acc.add(x));
        match z.and_then(|sum| random_pa_nonneg(&mut rng, -1, 1).meet(&PPoly::constant(a.clone(), b.clone(), q(1)).sub(&sum)?.positive_part())) {
            Ok(x) => x,
            Err(_) => random_pa(&mut rng, -1, 1),
        }
    } else {
        random_pa(&mut rng, -1, 1)
    };
    let sctx = || format!("a = {}, S = [{}]", show_f(&a_fn), s.iter().map(show_f).collect::<Vec<_>>().join(", "));
    let sup = sup_disjoint_check(&a_fn, &s, &y);
    out.push(("a ⊥ S => a ⊥ sup S", verdict(sup.as_ref().is_ok_and(|c| c.consistent()), sctx)));
    out.push(("sup S ∈ B_S", verdict(sup.as_ref().is_ok_and(|c| !c.sup_exists || c.sup_in_band), sctx)));

    let (carrier, h) = if rng.gen_bool(0.5) {
        (Carrier::pa(a.clone(), b.clone()), random_pa_nonneg(&mut rng, -1, 1))
    } else {
        (y.clone(), random_pp2(&mut rng, -1, 1).abs())
    };
    if !h.is_zero() {
        let ok = pervasive_witness(&carrier, &h).is_ok_and(|w| {
            !w.is_zero() && PPoly::zero(a.clone(), b.clone()).leq(&w).unwrap_or(false) && w.leq(&h).unwrap_or(false) && carrier.contains(&w)
        });
        out.push(("pervasive witness 0 < g <= f", verdict(ok, || format!("f = {} in {}", show_f(&h), carrier.name))));
    }
    out
}

fn merge(stats: &mut Vec<PropertyStat>, outcomes: Vec<Outcome>, trial: usize) {
    for (name, r) in outcomes {
        let idx = match stats.iter().position(|s| s.name == name) {
            Some(i) => i,
            None => {
                stats.push(PropertyStat { name: name.to_string(), passed: 0, failed: 0, counterexample: None });
                stats.len() - 1
            }
        };
        let st = &mut stats[idx];
        match r {
            Ok(()) => st.passed += 1,
            Err(c) => {
                st.failed += 1;
                st.counterexample.get_or_insert_with(|| format!("trial {trial}: {c}"));
            }
        }
    }
}

pub fn properties(cfg: &PropertyConfig) -> PropertyReport {
    let idx: Vec<usize> = (0..cfg.trials).collect();
    let fd = cfg.exec.map(&idx, |&t| fd_trial(cfg, t));
    let fidx: Vec<usize> = (0..cfg.function_trials).collect();
    let fun = cfg.exec.map(&fidx, |&t| func_trial(cfg, t));
    let mut stats = Vec::new();
    let mut rejected = Vec::new();
    for (t, (rej, outs)) in fd.into_iter().enumerate() {
        rejected.extend(rej);
        merge(&mut stats, outs, t);
    }
    for (t, outs) in fun.into_iter().enumerate() {
        merge(&mut stats, outs, t);
    }
    PropertyReport { seed: cfg.seed, trials: cfg.trials, function_trials: cfg.function_trials, rejected, properties: stats }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let mut cfg = PropertyConfig::new(7, 6);
        cfg.exec = Exec::Sequential;
        let a = properties(&cfg);
        assert!(a.all_passed(), "{a:#?}");
        cfg.exec = Exec::Parallel;
        assert_eq!(a, properties(&cfg));
    }
}
