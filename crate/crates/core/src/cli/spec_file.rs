//! Space definition files.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::cone::PolyCone;
use crate::exact::rational::{serde_qvec, Q};
use crate::fdspace::FdSpace;
use crate::funcspace::Carrier;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NamedVec(#[serde(with = "serde_qvec")] pub Vec<Q>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    #[default]
    Fd,
    Function,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ConeSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<NamedVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<NamedVec>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceSpecFile {
    #[serde(default)]
    pub kind: Kind,
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<Carrier>,
    /// Vectors that operation arguments may refer to by name.
    #[serde(default)]
    pub named: BTreeMap<String, NamedVec>,
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

impl SpaceSpecFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        parse_json(text)
    }

    fn unwrap_vecs(vs: &Option<Vec<NamedVec>>) -> Option<Vec<Vec<Q>>> {
        vs.as_ref().map(|v| v.iter().map(|x| x.0.clone()).collect())
    }

    pub fn cone(&self) -> Result<PolyCone, CliError> {
        let spec = self.cone.as_ref().ok_or_else(|| CliError::Field("cone: missing".into()))?;
        let gens = Self::unwrap_vecs(&spec.generators);
        let ineqs = Self::unwrap_vecs(&spec.inequalities);
        let dim = self
            .dim
            .or_else(|| gens.as_ref().and_then(|g| g.first()).or(ineqs.as_ref().and_then(|h| h.first())).map(Vec::len))
            .ok_or_else(|| CliError::Field("dim: missing and not inferable".into()))?;
        for (field, list) in [("cone.generators", &gens), ("cone.inequalities", &ineqs)] {
            if let Some(k) = list.as_ref().and_then(|l| l.iter().position(|v| v.len() != dim)) {
                return Err(CliError::Field(format!("{field}[{k}]: expected {dim} entries")));
            }
        }
        let cone = match (gens, ineqs) {
            (Some(g), Some(h)) => PolyCone::from_both(dim, &g, &h),
            (Some(g), None) => PolyCone::from_generators(dim, &g),
            (None, Some(h)) => PolyCone::from_inequalities(dim, &h),
            (None, None) => return Err(CliError::Field("cone: needs generators or inequalities".into())),
        };
        cone.map_err(|e| CliError::Field(format!("cone: {e}")))
    }

    pub fn space(&self) -> Result<FdSpace, CliError> {
        if self.kind != Kind::Fd {
            return Err(CliError::Field("kind: expected \"fd\"".into()));
        }
        Ok(FdSpace::build(self.cone()?)?)
    }

    pub fn named_vectors(&self) -> BTreeMap<String, Vec<Q>> {
        self.named.iter().map(|(k, v)| (k.clone(), v.0.clone())).collect()
    }
}
