use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use riesz_cover::cli::Report;
use riesz_cover::exact::rational::{format_q, q};
use riesz_cover::funcspace::random::{random_pa, random_pp2};
use riesz_cover::funcspace::{dcomp, Carrier, PPoly, Source};

fn pair(seed: u64) -> (PPoly, PPoly) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (random_pa(&mut rng, -1, 1), random_pp2(&mut rng, -1, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_identities(seed in any::<u64>()) {
        let (f, g) = pair(seed);
        let (j, m) = (f.join(&g).unwrap(), f.meet(&g).unwrap());
        prop_assert_eq!(j.add(&m).unwrap(), f.add(&g).unwrap());
        prop_assert_eq!(&j, &g.join(&f).unwrap());
        prop_assert_eq!(f.join(&m).unwrap(), f.clone());
        prop_assert!(f.leq(&j).unwrap() && m.leq(&g).unwrap());
    }

    #[test]
    fn disjointness_via_meet(seed in any::<u64>()) {
        let (f, g) = pair(seed);
        let h = g.positive_part();
        let k = g.neg().positive_part();
        prop_assert!(h.disjoint(&k).unwrap());
        prop_assert_eq!(f.disjoint(&g).unwrap(), f.abs().meet(&g.abs()).unwrap().is_zero());
    }

    #[test]
    fn triple_complement(seed in any::<u64>()) {
        let (f, g) = pair(seed);
        let y = Carrier::pp2(q(-1), q(1));
        let d1 = dcomp(Source::Generators(&[f, g]), &y).unwrap();
        let d2 = dcomp(Source::Descriptor(&d1), &y).unwrap();
        let d3 = dcomp(Source::Descriptor(&d2), &y).unwrap();
        prop_assert_eq!(d1, d3);
    }

    #[test]
    fn ppoly_wire_round_trip(seed in any::<u64>()) {
        let (f, g) = pair(seed);
        let j = f.join(&g).unwrap();
        let back: PPoly = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        prop_assert_eq!(back, j);
    }

    #[test]
    fn report_round_trip(n in -50i64..50, d in 1i64..20, negative in any::<bool>()) {
        let x = format_q(&riesz_cover::exact::rational::qf(n, d));
        let mut r = Report::new("inf", json!({"y": [x.clone(), "0"]}), json!(x));
        if negative {
            r = r.negative(json!([x, "1"]));
        }
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        prop_assert_eq!(back, r);
    }
}
