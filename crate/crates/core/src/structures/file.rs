//! JSON structure files:
//!
//! ```json
//! {"carrier": "maxplus", "objects": ["a", "b"], "le": [["a", "b"]],
//!  "p": [["a", "a", "b", 0]], "j": [["a", 0]], "s": {"a": "b", "b": "a"}}
//! ```
//!
//! Omitted `p` and `j` entries are bottom. A missing `j` key means the
//! structure has no unit; a missing `s` key means it has no duality.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;
use thiserror::Error;

use super::{FinitePoset, PromonoidalStructure, StructureError};
use crate::carriers::{Carrier, CarrierError, Value};

#[derive(Debug, Error)]
pub enum StructureFileError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{context}: {source}")]
    Entry {
        context: String,
        #[source]
        source: StructureError,
    },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Raw on-disk form of a structure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub carrier: String,
    pub objects: Vec<String>,
    #[serde(default)]
    pub le: Vec<(String, String)>,
    #[serde(default)]
    pub p: Vec<(String, String, String, Json)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<(String, Json)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<BTreeMap<String, String>>,
}

fn entry_err(context: String) -> impl FnOnce(StructureError) -> StructureFileError {
    move |source| StructureFileError::Entry { context, source }
}

fn value_err(context: String) -> impl FnOnce(CarrierError) -> StructureFileError {
    move |source| StructureFileError::Entry {
        context,
        source: source.into(),
    }
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<Self, StructureFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure file serializes")
    }

    pub fn into_structure(self) -> Result<PromonoidalStructure, StructureFileError> {
        let carrier: Carrier = self
            .carrier
            .parse()
            .map_err(|e: CarrierError| StructureFileError::Structure(e.into()))?;
        let discrete = FinitePoset::discrete(self.objects.iter().cloned())?;
        let mut pairs = Vec::with_capacity(self.le.len());
        for (k, (a, b)) in self.le.iter().enumerate() {
            let ctx = || format!("le[{k}]");
            pairs.push((
                discrete.require(a).map_err(entry_err(ctx()))?,
                discrete.require(b).map_err(entry_err(ctx()))?,
            ));
        }
        let poset = FinitePoset::new(self.objects, pairs)?;
        let n = poset.len();

        let mut p = vec![carrier.bottom(); n * n * n];
        let mut seen = vec![false; n * n * n];
        for (k, (a, b, c, v)) in self.p.iter().enumerate() {
            let ctx = || format!("p[{k}]");
            let a = poset.require(a).map_err(entry_err(ctx()))?;
            let b = poset.require(b).map_err(entry_err(ctx()))?;
            let c = poset.require(c).map_err(entry_err(ctx()))?;
            let idx = (a * n + b) * n + c;
            if std::mem::replace(&mut seen[idx], true) {
                return Err(StructureFileError::Entry {
                    context: ctx(),
                    source: StructureError::DuplicateLabel(format!("p entry ({a}, {b}, {c})")),
                });
            }
            p[idx] = Value::from_json(v, carrier).map_err(value_err(ctx()))?;
        }

        let j = match self.j {
            None => None,
            Some(entries) => {
                let mut j = vec![carrier.bottom(); n];
                for (k, (a, v)) in entries.iter().enumerate() {
                    let ctx = || format!("j[{k}]");
                    let a = poset.require(a).map_err(entry_err(ctx()))?;
                    j[a] = Value::from_json(v, carrier).map_err(value_err(ctx()))?;
                }
                Some(j)
            }
        };

        let s = match self.s {
            None => None,
            Some(map) => {
                let mut s = vec![usize::MAX; n];
                for (a, sa) in &map {
                    let ctx = || format!("s[{a}]");
                    let a = poset.require(a).map_err(entry_err(ctx()))?;
                    s[a] = poset.require(sa).map_err(entry_err(ctx()))?;
                }
                if let Some(missing) = s.iter().position(|&x| x == usize::MAX) {
                    return Err(StructureFileError::Entry {
                        context: "s".into(),
                        source: StructureError::UnknownObject(format!(
                            "no image for `{}`",
                            poset.label(missing)
                        )),
                    });
                }
                Some(s)
            }
        };

        Ok(PromonoidalStructure::new(poset, carrier, p, j, s)?)
    }

    /// Bottom entries of `p` and `j` are omitted; `le` lists strict pairs.
    pub fn from_structure(structure: &PromonoidalStructure) -> Self {
        let poset = structure.poset();
        let label = |i: usize| poset.label(i).to_string();
        let bottom = structure.carrier().bottom();
        let n = structure.len();
        let mut p = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = structure.p(a, b, c);
                    if v != bottom {
                        p.push((label(a), label(b), label(c), v.to_json()));
                    }
                }
            }
        }
        StructureFile {
            carrier: structure.carrier().name().to_string(),
            objects: poset.labels().to_vec(),
            le: poset.strict_pairs().map(|(a, b)| (label(a), label(b))).collect(),
            p,
            j: structure.j_table().map(|j| {
                j.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != bottom)
                    .map(|(a, v)| (label(a), v.to_json()))
                    .collect()
            }),
            s: structure
                .s_map()
                .map(|s| s.iter().enumerate().map(|(a, &sa)| (label(a), label(sa))).collect()),
        }
    }
}

impl PromonoidalStructure {
    pub fn from_json_str(text: &str) -> Result<Self, StructureFileError> {
        StructureFile::parse(text)?.into_structure()
    }

    pub fn to_json_string(&self) -> String {
        StructureFile::from_structure(self).to_json_string()
    }
}
