//! Operation registry and dispatch.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use super::args::{field, rationals, ArgCtx};
use super::report::Report;
use super::spec_file::parse_json;
use super::CliError;
use crate::cone::upper_set;
use crate::exact::linalg::Subspace;
use crate::exact::rational::{format_vec, serde_qvec, Q};
use crate::fdspace::density::{inf_upper_set, is_majorizing, order_dense_in};
use crate::fdspace::{FdSpace, InfResult, SubspaceHandle};
use crate::funcspace::examples::{cover_y, namioka_carrier, x0, x_rho, x_span};
use crate::funcspace::{
    band_generated_descriptor, dcomp, directedness_certificate, membership_witness_majorized, order_density_witness,
    pervasive_witness, sup_disjoint_check, Carrier, DensityWitness, Directedness, IntervalSet, Majorization, PPoly,
    Source, SubspaceDescriptor,
};
use crate::par::Exec;

pub const FD_OPS: &[&str] = &[
    "info",
    "embed",
    "disjoint",
    "dcomplement",
    "band",
    "ideal",
    "in-ideal",
    "directed",
    "ext-ideal",
    "ext-band",
    "restrict",
    "inf",
    "majorizing",
    "order-dense",
    "pervasive",
    "fordable",
    "upper-set",
];

pub const FUNC_OPS: &[&str] = &[
    "leq",
    "join",
    "meet",
    "support",
    "zero-set",
    "disjoint",
    "dcomp",
    "band",
    "ideal-ext",
    "majorized",
    "directed",
    "pervasive",
    "sup-disjoint",
    "density",
];

fn vec_json(v: &[Q]) -> Value {
    Value::String(format_vec(v))
}

fn handle_json(h: &SubspaceHandle) -> Value {
    json!({
        "side": format!("{:?}", h.side),
        "kind": format!("{:?}", h.kind),
        "subspace": h.subspace.describe(),
        "generators": h.generators.iter().map(|g| format_vec(g)).collect::<Vec<_>>(),
    })
}

fn sub_json(s: &Subspace) -> Value {
    Value::String(s.describe())
}

/// Runs a finite-dimensional operation; `args` is a JSON object.
pub fn run_fd(space: &FdSpace, named: &BTreeMap<String, Vec<Q>>, op: &str, args: &Value) -> Result<Report, CliError> {
    run_fd_with(space, named, op, args, Exec::default())
}

pub fn run_fd_with(
    space: &FdSpace,
    named: &BTreeMap<String, Vec<Q>>,
    op: &str,
    args: &Value,
    exec: Exec,
) -> Result<Report, CliError> {
    let ctx = ArgCtx { space, named };
    let (n, m) = (space.n(), space.m());
    let x = |key: &str| ctx.vector_in(field(args, key)?, n);
    let set = |key: &str| ctx.vectors_in(field(args, key)?, n);
    let cover_sub = |key: &str| ctx.subspace(field(args, key)?, m);
    let report = |result: Value| Report::new(op, args.clone(), result);
    let r = match op {
        "info" => report(json!({
            "n": n,
            "m": m,
            "rays": space.cone().rays().iter().map(|r| format_vec(r)).collect::<Vec<_>>(),
            "facets": space.cone().facets().iter().map(|r| format_vec(r)).collect::<Vec<_>>(),
            "functionals": space.functionals().iter().map(|r| format_vec(r)).collect::<Vec<_>>(),
            "bipositive": space.is_bipositive(),
            "image": space.image().describe(),
        })),
        "embed" => report(vec_json(&space.embed(&x("x")?))),
        "disjoint" => {
            let (a, b) = (x("x")?, x("y")?);
            report(json!({"definition": space.disjoint_def(&a, &b), "coordinates": space.disjoint_coord(&a, &b)}))
        }
        "dcomplement" => report(sub_json(&space.dcomplement(&set("S")?)?)),
        "band" => report(handle_json(&space.band_generated(&set("S")?)?)),
        "ideal" => report(handle_json(&space.ideal_generated(&set("S")?)?)),
        "in-ideal" => report(json!(space.in_ideal(&set("S")?, &x("x")?)?)),
        "directed" => report(json!(space.is_directed(&ctx.subspace(field(args, "L")?, n)?))),
        "ext-ideal" => report(handle_json(&space.extension_ideal(&set("S")?)?)),
        "ext-band" => {
            let (h, ok) = space.extension_band(&set("S")?)?;
            report(json!({"band": handle_json(&h), "restricts_correctly": ok}))
        }
        "restrict" => report(sub_json(&space.restrict(&cover_sub("J")?))),
        "inf" => {
            let y = ctx.vector_in(field(args, "y")?, m)?;
            report(match inf_upper_set(&cover_sub("L")?, &y) {
                InfResult::Point(p) => vec_json(&p),
                InfResult::Empty => json!("empty"),
                InfResult::Unbounded => json!("unbounded"),
            })
        }
        "majorizing" => report(json!(is_majorizing(&cover_sub("L")?, &cover_sub("J")?)?)),
        "order-dense" => {
            let probe = args.get("probe").map(|p| ctx.vector_in(p, m)).transpose()?;
            let d = order_dense_in(&cover_sub("L")?, &cover_sub("J")?, probe.as_deref(), exec)?;
            let r = report(json!({"dense": d.dense, "majorizing": d.majorizing}));
            match d.witness {
                Some(w) => r.negative(vec_json(&w)),
                None => r,
            }
        }
        "pervasive" => report(json!(space.is_pervasive())),
        "fordable" => report(json!(space.is_fordable())),
        "upper-set" => {
            let p = upper_set(space.cone(), &x("a")?);
            report(json!({
                "empty": p.is_empty(),
                "vertices": p.vertices().iter().map(|v| format_vec(v)).collect::<Vec<_>>(),
                "rays": p.rays().iter().map(|v| format_vec(v)).collect::<Vec<_>>(),
            }))
        }
        other => return Err(CliError::UnknownOp(other.to_string())),
    };
    Ok(r)
}

/// Carriers addressable by name on the command line.
pub fn carrier_by_name(name: &str) -> Option<Carrier> {
    let (a, b) = (Q::from_integer((-1).into()), Q::from_integer(1.into()));
    Some(match name {
        "pp2" | "y" => cover_y(),
        "pa" => Carrier::pa(a, b),
        "c1-pp2" => Carrier::c1_pp2(a, b),
        "namioka" => namioka_carrier(),
        "x0" => x0(),
        "x" => x_span(),
        "x-rho" => x_rho(),
        _ => return None,
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CarrierRef {
    Name(String),
    Full(Carrier),
}

#[derive(Deserialize)]
struct DescriptorInput {
    zero_set: IntervalSet,
    #[serde(default, with = "serde_qvec")]
    germ_zero: Vec<Q>,
    #[serde(default)]
    carrier: Option<CarrierRef>,
}

fn carrier_ref(r: Option<CarrierRef>, default: &Carrier) -> Result<Carrier, CliError> {
    match r {
        None => Ok(default.clone()),
        Some(CarrierRef::Full(c)) => Ok(c),
        Some(CarrierRef::Name(n)) => carrier_by_name(&n).ok_or_else(|| CliError::Arg(format!("unknown carrier `{n}`"))),
    }
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value, key: &str) -> Result<T, CliError> {
    serde_json::from_value(v.clone()).map_err(|e| CliError::Arg(format!("{key}: {e}")))
}

fn func(input: &Value, key: &str) -> Result<PPoly, CliError> {
    from_value(field(input, key)?, key)
}

fn funcs(input: &Value, key: &str) -> Result<Vec<PPoly>, CliError> {
    from_value(field(input, key)?, key)
}

fn descriptor(input: &Value, key: &str, carrier: &Carrier) -> Result<SubspaceDescriptor, CliError> {
    let d: DescriptorInput = from_value(field(input, key)?, key)?;
    Ok(SubspaceDescriptor::new(d.zero_set, d.germ_zero, carrier_ref(d.carrier, carrier)?))
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Runs a function-space operation on a JSON input document. An optional
/// `"domain": [a, b]` entry moves the carrier to `[a, b]`.
pub fn run_func(carrier: &Carrier, op: &str, input: &Value) -> Result<Report, CliError> {
    let moved;
    let carrier = match input.get("domain") {
        Some(d) => match rationals(d)?.as_slice() {
            [a, b] if a < b => {
                moved = Carrier::new(&carrier.name, a.clone(), b.clone(), carrier.base, carrier.constraints.clone());
                &moved
            }
            _ => return Err(CliError::Arg("domain: expected [a, b] with a < b".into())),
        },
        None => carrier,
    };
    let report = |result: Value| Report::new(op, json!({"carrier": carrier.name, "input": input}), result);
    let probes = || -> Result<Vec<Q>, CliError> {
        match input.get("probes") {
            Some(p) => rationals(p),
            None => Ok(vec![]),
        }
    };
    let r = match op {
        "leq" => report(json!(func(input, "f")?.leq(&func(input, "g")?)?)),
        "join" => report(to_json(&func(input, "f")?.join(&func(input, "g")?)?)),
        "meet" => report(to_json(&func(input, "f")?.meet(&func(input, "g")?)?)),
        "support" => report(json!(func(input, "f")?.support()?.to_string())),
        "zero-set" => report(json!(func(input, "f")?.zero_set()?.to_string())),
        "disjoint" => report(json!(func(input, "f")?.disjoint(&func(input, "g")?)?)),
        "dcomp" | "band" => {
            let gens;
            let desc;
            let source = if input.get("generators").is_some() {
                gens = funcs(input, "generators")?;
                Source::Generators(&gens)
            } else {
                desc = descriptor(input, "descriptor", carrier)?;
                Source::Descriptor(&desc)
            };
            let d = if op == "dcomp" { dcomp(source, carrier)? } else { band_generated_descriptor(source, carrier)? };
            report(json!(d.to_string()))
        }
        "ideal-ext" => {
            let b = descriptor(input, "descriptor", carrier)?;
            let d = crate::funcspace::ideal_extension_descriptor(&b, carrier, &probes()?)?;
            report(json!(d.to_string()))
        }
        "majorized" => {
            let d = descriptor(input, "descriptor", carrier)?;
            match membership_witness_majorized(&func(input, "g")?, &d)? {
                Majorization::Dominator(f) => report(json!({"dominator": to_json(&f)})),
                Majorization::Infeasible(c) => {
                    report(json!({"dominator": null})).negative(json!({"certificate": to_json(&c), "explain": c.explain()}))
                }
            }
        }
        "directed" => {
            let d = descriptor(input, "descriptor", carrier)?;
            let cert = directedness_certificate(&d, &probes()?)?;
            let verified = cert.check(&d);
            match cert {
                Directedness::DirectedWitnessRule { rule } => report(json!({"directed": true, "rule": to_json(&rule)})),
                nd @ Directedness::NotDirected { .. } => {
                    report(json!({"directed": false, "certificate_verified": verified})).negative(to_json(&nd))
                }
            }
        }
        "pervasive" => report(json!({"witness": to_json(&pervasive_witness(carrier, &func(input, "f")?)?)})),
        "sup-disjoint" => {
            let c = sup_disjoint_check(&func(input, "a")?, &funcs(input, "S")?, carrier)?;
            report(json!({
                "a_perp_s": c.a_perp_s,
                "sup_exists": c.sup_exists,
                "a_perp_sup": c.a_perp_sup,
                "sup_in_band": c.sup_in_band,
                "consistent": c.consistent(),
            }))
        }
        "density" => {
            let d = descriptor(input, "descriptor", carrier)?;
            let cover = descriptor(input, "cover", carrier)?;
            match order_density_witness(&d, &cover, &func(input, "y")?)? {
                DensityWitness::InfEqualsY => report(json!({"inf_equals_y": true})),
                gap @ DensityWitness::Gap { .. } => report(json!({"inf_equals_y": false})).negative(to_json(&gap)),
            }
        }
        other => return Err(CliError::UnknownOp(other.to_string())),
    };
    Ok(r)
}

/// Parses a function-space input document.
pub fn parse_func_input(text: &str) -> Result<Value, CliError> {
    parse_json(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::report::Outcome;
    use crate::fdspace::tests::{k4, v};

    fn named() -> BTreeMap<String, Vec<Q>> {
        v().into_iter().enumerate().map(|(k, x)| (format!("v{}", k + 1), x)).collect()
    }

    #[test]
    fn fd_examples() {
        let s = k4();
        let r = run_fd(&s, &named(), "embed", &json!({"x": "v2"})).unwrap();
        assert_eq!(r.result, json!("(0,0,2,2)"));
        let r = run_fd(&s, &named(), "band", &json!({"S": []})).unwrap();
        assert_eq!(r.result["subspace"], json!("{0}"));
        let args = json!({
            "L": {"image": {"ideal": ["v1", "v4"]}},
            "J": {"ext_ideal": ["v1", "v4"]},
            "probe": ["1", "0", "1", "0"],
        });
        let r = run_fd(&s, &named(), "order-dense", &args).unwrap();
        assert_eq!(r.result["dense"], json!(false));
        assert_eq!(r.witness, Some(json!("(1,0,1,0)")));
        assert_eq!(r.outcome, Outcome::NegativeWithWitness);
        assert_eq!(r.to_json(), run_fd(&s, &named(), "order-dense", &args).unwrap().to_json());
    }

    #[test]
    fn fd_errors() {
        let s = k4();
        assert!(matches!(run_fd(&s, &named(), "nope", &json!({})), Err(CliError::UnknownOp(_))));
        assert!(matches!(run_fd(&s, &named(), "embed", &json!({})), Err(CliError::Arg(_))));
        let r = run_fd(&s, &named(), "inf", &json!({"L": "image", "y": ["1", "0", "1", "0"]})).unwrap();
        assert_eq!(r.result, json!("(1,0,1,0)"));
    }

    #[test]
    fn func_ops() {
        let y = carrier_by_name("y").unwrap();
        let f = json!({"domain": ["-1", "1"], "breakpoints": ["-1", "0", "1"], "pieces": [["0"], ["0", "1"]]});
        let g = json!({"domain": ["-1", "1"], "breakpoints": ["-1", "0", "1"], "pieces": [["0", "-1"], ["0"]]});
        let r = run_func(&y, "disjoint", &json!({"f": f, "g": g})).unwrap();
        assert_eq!(r.result, json!(true));
        let r = run_func(&y, "join", &json!({"f": f, "g": g})).unwrap();
        let back: PPoly = serde_json::from_value(r.result).unwrap();
        assert_eq!(back.eval(&Q::from_integer((-1).into())).unwrap(), Q::from_integer(1.into()));
        let c1 = carrier_by_name("c1-pp2").unwrap();
        let input = json!({
            "g": {"domain": ["-1", "1"], "breakpoints": ["-1", "1/2", "1"], "pieces": [["0"], ["-1/2", "1"]]},
            "descriptor": {"zero_set": [{"lo": "-1", "hi": "1/2"}]},
        });
        let r = run_func(&c1, "majorized", &input).unwrap();
        assert_eq!(r.outcome, Outcome::NegativeWithWitness);
        let r = run_func(&y, "majorized", &input).unwrap();
        assert_eq!(r.outcome, Outcome::Ok);
    }
}
