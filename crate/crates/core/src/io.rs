//! JSON file formats.
//!
//! * poset / lattice: `{"elements": ["p","q"], "leq": [["p","q"]]}`, where
//!   `leq` lists `(lesser, greater)` pairs; reflexive pairs are optional.
//! * map / homomorphism: `{"map": {"p": "q", "q": "q"}}`.
//! * quotient: `{"classes": [{"name": "[p]", "members": ["p","q"]}], "leq": [...]}`.
//! * quotient counterexample: `{"poset": ..., "phi": ..., "components": ..., "coequalizer": ...}`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fixpoint::{FixpointError, QuotientPoset};
use crate::poset::{MonotoneMap, Poset, PosetError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: malformed JSON: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl PosetJson {
    pub fn to_poset(&self) -> Result<Poset, PosetError> {
        Poset::build(
            self.elements.iter().map(String::as_str),
            self.leq.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
    }

    /// Covering pairs only.
    pub fn from_poset(poset: &Poset) -> PosetJson {
        PosetJson {
            elements: poset.names().to_vec(),
            leq: poset
                .covers()
                .into_iter()
                .map(|(x, y)| (poset.name(x).to_owned(), poset.name(y).to_owned()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub map: BTreeMap<String, String>,
}

impl MapJson {
    pub fn from_monotone(phi: &MonotoneMap) -> MapJson {
        MapJson {
            map: phi.to_name_map(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub name: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientJson {
    pub classes: Vec<ClassJson>,
    /// Covering pairs of the class order.
    pub leq: Vec<(String, String)>,
}

impl QuotientJson {
    pub fn from_quotient(q: &QuotientPoset) -> QuotientJson {
        let base = q.base();
        let order = q.class_order();
        QuotientJson {
            classes: (0..q.len())
                .map(|c| ClassJson {
                    name: q.class_name(c).to_owned(),
                    members: q
                        .class_members(c)
                        .iter()
                        .map(|&x| base.name(x).to_owned())
                        .collect(),
                })
                .collect(),
            leq: order
                .covers()
                .into_iter()
                .map(|(a, b)| (order.name(a).to_owned(), order.name(b).to_owned()))
                .collect(),
        }
    }
}

/// A disagreement between the two quotient constructions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuotientCounterexample {
    pub poset: PosetJson,
    pub phi: MapJson,
    /// The components quotient, or `{"error": "..."}` when it failed.
    pub components: serde_json::Value,
    pub coequalizer: QuotientJson,
}

impl QuotientCounterexample {
    pub fn new(
        phi: &MonotoneMap,
        components: &Result<QuotientPoset, FixpointError>,
        coequalizer: &QuotientPoset,
    ) -> QuotientCounterexample {
        let components = match components {
            Ok(q) => serde_json::to_value(QuotientJson::from_quotient(q)).expect("serializable"),
            Err(e) => serde_json::json!({ "error": e.to_string() }),
        };
        QuotientCounterexample {
            poset: PosetJson::from_poset(phi.domain()),
            phi: MapJson::from_monotone(phi),
            components,
            coequalizer: QuotientJson::from_quotient(coequalizer),
        }
    }

    /// Writes `quotient-counterexample-<k>.json` into `dir`, picking the
    /// first unused `k`.
    pub fn write_into(&self, dir: &Path) -> Result<PathBuf, IoError> {
        fs::create_dir_all(dir).map_err(|source| IoError::Write {
            path: dir.to_owned(),
            source,
        })?;
        let path = (0..)
            .map(|k| dir.join(format!("quotient-counterexample-{k}.json")))
            .find(|p| !p.exists())
            .expect("unbounded search");
        let text = serde_json::to_string_pretty(self).expect("serializable");
        fs::write(&path, text + "\n").map_err(|source| IoError::Write {
            path: path.clone(),
            source,
        })?;
        Ok(path)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Parse {
        path: path.to_owned(),
        source,
    })
}
