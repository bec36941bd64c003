//! Resolution of JSON operation arguments against a space.
//!
//! Vectors are arrays of rational strings (or integers) or names: an entry
//! of the space file's `named` table, `f<k>` for the k-th functional and
//! `e<k>` for a cover unit vector, both 1-based. Subspaces are `"full"`,
//! `"zero"`, `"image"` or an object with one of the keys `span`, `coords`,
//! `ideal`, `band`, `ext_ideal`, `ext_band`, `dcomp`, `image` or `restrict`.

use std::collections::BTreeMap;

use serde_json::Value;

use super::CliError;
use crate::exact::linalg::Subspace;
use crate::exact::rational::{parse_q, unit, Q};
use crate::fdspace::FdSpace;

pub struct ArgCtx<'a> {
    pub space: &'a FdSpace,
    pub named: &'a BTreeMap<String, Vec<Q>>,
}

pub fn rational(v: &Value) -> Result<Q, CliError> {
    match v {
        Value::String(s) => Ok(parse_q(s)?),
        Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().unwrap_or_default().into())),
        other => Err(CliError::Arg(format!("expected a rational string, got {other}"))),
    }
}

pub fn rationals(v: &Value) -> Result<Vec<Q>, CliError> {
    match v {
        Value::Array(xs) => xs.iter().map(rational).collect(),
        other => Err(CliError::Arg(format!("expected an array of rationals, got {other}"))),
    }
}

fn one_based(name: &str, prefix: char, len: usize) -> Option<usize> {
    let k: usize = name.strip_prefix(prefix)?.parse().ok()?;
    (1..=len).contains(&k).then(|| k - 1)
}

pub fn field<'v>(args: &'v Value, key: &str) -> Result<&'v Value, CliError> {
    args.get(key).ok_or_else(|| CliError::Arg(format!("missing argument `{key}`")))
}

impl ArgCtx<'_> {
    pub fn vector(&self, v: &Value) -> Result<Vec<Q>, CliError> {
        match v {
            Value::String(name) => {
                if let Some(x) = self.named.get(name) {
                    return Ok(x.clone());
                }
                if let Some(k) = one_based(name, 'f', self.space.m()) {
                    return Ok(self.space.functionals()[k].clone());
                }
                if let Some(k) = one_based(name, 'e', self.space.m()) {
                    return Ok(unit(self.space.m(), k));
                }
                Err(CliError::Arg(format!("unknown vector `{name}`")))
            }
            other => rationals(other),
        }
    }

    pub fn vector_in(&self, v: &Value, dim: usize) -> Result<Vec<Q>, CliError> {
        let x = self.vector(v)?;
        if x.len() != dim {
            return Err(CliError::Arg(format!("vector {v} has {} entries, expected {dim}", x.len())));
        }
        Ok(x)
    }

    pub fn vectors_in(&self, v: &Value, dim: usize) -> Result<Vec<Vec<Q>>, CliError> {
        match v {
            Value::Array(xs) => xs.iter().map(|x| self.vector_in(x, dim)).collect(),
            other => Err(CliError::Arg(format!("expected a list of vectors, got {other}"))),
        }
    }

    /// A subspace of `Q^dim`.
    pub fn subspace(&self, v: &Value, dim: usize) -> Result<Subspace, CliError> {
        let (n, m) = (self.space.n(), self.space.m());
        let s = match v {
            Value::String(s) => match s.as_str() {
                "full" => Subspace::full(dim),
                "zero" => Subspace::zero(dim),
                "image" => self.space.image(),
                other => return Err(CliError::Arg(format!("unknown subspace `{other}`"))),
            },
            Value::Object(map) if map.len() == 1 => {
                let (key, inner) = map.iter().next().expect("one entry");
                match key.as_str() {
                    "span" => Subspace::span(dim, &self.vectors_in(inner, dim)?)?,
                    "coords" => {
                        let coords = inner
                            .as_array()
                            .ok_or_else(|| CliError::Arg("coords: expected an array".into()))?
                            .iter()
                            .map(|c| c.as_u64().map(|c| c as usize).filter(|c| (1..=dim).contains(c)).map(|c| c - 1))
                            .collect::<Option<Vec<_>>>()
                            .ok_or_else(|| CliError::Arg(format!("coords: expected indices in 1..={dim}")))?;
                        Subspace::coordinate(dim, &coords)
                    }
                    "ideal" => self.space.ideal_generated(&self.vectors_in(inner, n)?)?.subspace,
                    "band" => self.space.band_generated(&self.vectors_in(inner, n)?)?.subspace,
                    "dcomp" => self.space.dcomplement(&self.vectors_in(inner, n)?)?,
                    "ext_ideal" => self.space.extension_ideal(&self.vectors_in(inner, n)?)?.subspace,
                    "ext_band" => self.space.extension_band(&self.vectors_in(inner, n)?)?.0.subspace,
                    "image" => self.space.image_of(&self.subspace(inner, n)?),
                    "restrict" => self.space.restrict(&self.subspace(inner, m)?),
                    other => return Err(CliError::Arg(format!("unknown subspace form `{other}`"))),
                }
            }
            other => return Err(CliError::Arg(format!("cannot read a subspace from {other}"))),
        };
        if s.ambient_dim() != dim {
            return Err(CliError::Arg(format!("subspace {v} lives in dimension {}, expected {dim}", s.ambient_dim())));
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qvec;
    use crate::fdspace::tests::k4;
    use serde_json::json;

    #[test]
    fn resolves_names_and_forms() {
        let s = k4();
        let named = BTreeMap::from([("v1".to_string(), qvec(&[1, 0, 1]))]);
        let ctx = ArgCtx { space: &s, named: &named };
        assert_eq!(ctx.vector(&json!("v1")).unwrap(), qvec(&[1, 0, 1]));
        assert_eq!(ctx.vector(&json!("f4")).unwrap(), qvec(&[-1, 1, 1]));
        assert_eq!(ctx.vector(&json!("e2")).unwrap(), qvec(&[0, 1, 0, 0]));
        assert_eq!(ctx.vector(&json!(["1/2", 3, "0"])).unwrap()[0], Q::new(1.into(), 2.into()));
        assert!(ctx.vector(&json!([0.5])).is_err());
        assert_eq!(ctx.subspace(&json!({"coords": [3, 4]}), 4).unwrap(), Subspace::coordinate(4, &[2, 3]));
        let j = ctx.subspace(&json!({"ext_ideal": ["v1", [0, -1, 1]]}), 4).unwrap();
        assert_eq!(j, Subspace::coordinate(4, &[0, 1, 2]));
        assert!(ctx.subspace(&json!({"coords": [5]}), 4).is_err());
        assert!(ctx.subspace(&json!({"span": [[1, 0]]}), 3).is_err());
    }
}
