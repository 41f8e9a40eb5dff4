//! JSON interchange for groupoid tables.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groupoid::{FiniteLocalGroupoid, TableError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowRecord {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// On-disk shape of a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowRecord>,
    pub units: BTreeMap<String, String>,
    pub mult: Vec<[String; 3]>,
    pub inv: Vec<[String; 2]>,
}

impl TableFile {
    pub fn from_groupoid(g: &FiniteLocalGroupoid) -> Self {
        let name = |a: usize| g.id(a).to_string();
        TableFile {
            objects: g.objects().to_vec(),
            arrows: g
                .arrows()
                .iter()
                .map(|a| ArrowRecord {
                    id: a.id.clone(),
                    src: g.object_name(a.src).to_string(),
                    tgt: g.object_name(a.tgt).to_string(),
                })
                .collect(),
            units: (0..g.n_objects())
                .map(|x| (g.object_name(x).to_string(), name(g.unit(x))))
                .collect(),
            mult: g
                .mult_entries()
                .iter()
                .map(|&(a, b, p)| [name(a), name(b), name(p)])
                .collect(),
            inv: g
                .inv_entries()
                .iter()
                .map(|&(a, b)| [name(a), name(b)])
                .collect(),
        }
    }

    pub fn into_groupoid(self) -> Result<FiniteLocalGroupoid, TableError> {
        FiniteLocalGroupoid::from_named(
            self.objects,
            self.arrows
                .into_iter()
                .map(|a| (a.id, a.src, a.tgt))
                .collect(),
            self.units.into_iter().collect(),
            self.mult.into_iter().map(|[a, b, c]| (a, b, c)).collect(),
            self.inv.into_iter().map(|[a, b]| (a, b)).collect(),
        )
    }
}

pub fn to_json(g: &FiniteLocalGroupoid) -> String {
    serde_json::to_string_pretty(&TableFile::from_groupoid(g)).expect("table serializes")
}

pub fn from_json(s: &str) -> Result<FiniteLocalGroupoid, IoError> {
    let file: TableFile = serde_json::from_str(s)?;
    Ok(file.into_groupoid()?)
}

pub fn read_table(path: &Path) -> Result<FiniteLocalGroupoid, IoError> {
    let s = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    from_json(&s)
}

pub fn write_table(g: &FiniteLocalGroupoid, path: &Path) -> Result<(), IoError> {
    fs::write(path, to_json(g) + "\n").map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{cyclic, interval_group, pair_restriction, path_edges};

    #[test]
    fn round_trip_is_exact() {
        for g in [
            cyclic(4).unwrap(),
            interval_group(2, None).unwrap(),
            pair_restriction(3, &path_edges(3)).unwrap(),
        ] {
            let s = to_json(&g);
            let back = from_json(&s).unwrap();
            assert_eq!(back, g);
            assert_eq!(to_json(&back), s);
        }
    }

    #[test]
    fn dangling_reference_is_malformed() {
        let s = r#"{"objects":["*"],"arrows":[{"id":"e","src":"*","tgt":"*"}],
                   "units":{"*":"e"},"mult":[["e","e","f"]],"inv":[["e","e"]]}"#;
        assert!(matches!(
            from_json(s),
            Err(IoError::Table(TableError::Malformed(_)))
        ));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("z4.json");
        let g = cyclic(4).unwrap();
        write_table(&g, &p).unwrap();
        assert_eq!(read_table(&p).unwrap(), g);
        assert!(matches!(
            read_table(&dir.path().join("nope.json")),
            Err(IoError::Read { .. })
        ));
    }
}
