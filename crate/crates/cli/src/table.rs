//! Ring-table files.
//!
//! ```json
//! {
//!   "name": "F_p",
//!   "regular": false,
//!   "K":  { "0": { "rank": 0, "torsion": [6] }, "-1": "zero" },
//!   "NK": { "0": "zero", "-1": "symbol" }
//! }
//! ```
//!
//! Degrees are absolute. Degrees that are not listed read as symbols.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use kdecomp_core::abelian::FGAbelianGroup;
use kdecomp_core::contracted::{Entry, RingTable};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot read table file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Malformed { path: String, message: String },
    #[error("{path}: field NK.{degree}: regular tables cannot have a nonzero NK entry")]
    RegularConflict { path: String, degree: i64 },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    name: String,
    #[serde(default)]
    regular: bool,
    #[serde(rename = "K", default)]
    k: BTreeMap<i64, GroupSpec>,
    #[serde(rename = "NK", default)]
    nk: BTreeMap<i64, GroupSpec>,
}

struct GroupSpec(Entry);

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConcreteSpec {
    rank: usize,
    #[serde(default)]
    torsion: Vec<u64>,
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct SpecVisitor;

        impl<'de> Visitor<'de> for SpecVisitor {
            type Value = GroupSpec;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str(r#""zero", "symbol" or {"rank": r, "torsion": [d1, ...]}"#)
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<GroupSpec, E> {
                match s {
                    "zero" => Ok(GroupSpec(Entry::Zero)),
                    "symbol" => Ok(GroupSpec(Entry::Symbol)),
                    _ => Err(E::invalid_value(de::Unexpected::Str(s), &self)),
                }
            }

            fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<GroupSpec, A::Error> {
                let c = ConcreteSpec::deserialize(de::value::MapAccessDeserializer::new(map))?;
                let g = FGAbelianGroup::new(c.rank, c.torsion).map_err(de::Error::custom)?;
                Ok(GroupSpec(Entry::Concrete(g)))
            }
        }

        d.deserialize_any(SpecVisitor)
    }
}

/// Parses a table document. `path` only labels diagnostics.
pub fn parse_table(text: &str, path: &str) -> Result<RingTable, TableError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: TableFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        let field = e.path().to_string();
        let message = if field == "." {
            inner.to_string()
        } else {
            format!("field {field}: {inner}")
        };
        TableError::Malformed {
            path: path.to_string(),
            message,
        }
    })?;
    if file.regular {
        if let Some((&degree, _)) = file.nk.iter().find(|(_, s)| !s.0.is_zero()) {
            return Err(TableError::RegularConflict {
                path: path.to_string(),
                degree,
            });
        }
    }
    let mut t = RingTable::new(file.name).with_default(Entry::Symbol);
    for (j, s) in file.k {
        t = t.with_k(j, s.0);
    }
    for (j, s) in file.nk {
        t = t.with_nk(j, s.0).expect("table is not regular yet");
    }
    if file.regular {
        t = t.into_regular().expect("checked above");
    }
    Ok(t)
}

/// `symbolic`, `regular`, or a path to a table file.
pub fn load_table(spec: &str) -> Result<RingTable, TableError> {
    match spec {
        "symbolic" => Ok(RingTable::symbolic()),
        "regular" => Ok(RingTable::regular()),
        path => {
            let text = std::fs::read_to_string(Path::new(path)).map_err(|source| TableError::Io {
                path: path.to_string(),
                source,
            })?;
            parse_table(&text, path)
        }
    }
}
