//! Standard test groups, the default corpus and its TOML manifest.

mod construct;

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use construct::{make, Construction, UNITRIANGULAR_MODULI};

use crate::groups::io::{self, GroupFileError};
use crate::groups::{FiniteGroup, GroupError, DEFAULT_CAP};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("invalid construction: {0}")]
    Construction(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    GroupFile(#[from] GroupFileError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("entry `{name}`: expected {field} {expected}, computed {actual}")]
    Metadata { name: String, field: &'static str, expected: String, actual: String },
}

/// Nilpotency class as stored in a manifest: an integer or `"none"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ClassField", into = "ClassField")]
pub struct ExpectedClass(pub Option<usize>);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ClassField {
    Class(usize),
    Tag(String),
}

impl TryFrom<ClassField> for ExpectedClass {
    type Error = String;

    fn try_from(f: ClassField) -> Result<Self, String> {
        match f {
            ClassField::Class(c) => Ok(ExpectedClass(Some(c))),
            ClassField::Tag(t) if t == "none" => Ok(ExpectedClass(None)),
            ClassField::Tag(t) => Err(format!("class must be an integer or \"none\", got {t:?}")),
        }
    }
}

impl From<ExpectedClass> for ClassField {
    fn from(c: ExpectedClass) -> Self {
        match c.0 {
            Some(c) => ClassField::Class(c),
            None => ClassField::Tag("none".into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(with = "construction_text")]
    pub construction: Construction,
    pub order: u64,
    pub exponent: u64,
    pub class: ExpectedClass,
}

mod construction_text {
    use super::Construction;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &Construction, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(c)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Construction, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

impl CorpusEntry {
    pub fn new(name: &str, construction: Construction, order: u64, exponent: u64, class: Option<usize>) -> Self {
        CorpusEntry { name: name.into(), construction, order, exponent, class: ExpectedClass(class) }
    }

    /// Constructs the group and checks order, exponent and class against the
    /// recorded metadata.
    pub fn build(&self) -> Result<FiniteGroup, CorpusError> {
        let g = make(&self.construction)?;
        let mismatch = |field, expected: String, actual: String| CorpusError::Metadata {
            name: self.name.clone(),
            field,
            expected,
            actual,
        };
        if g.order() as u64 != self.order {
            return Err(mismatch("order", self.order.to_string(), g.order().to_string()));
        }
        if g.exponent() != self.exponent {
            return Err(mismatch("exponent", self.exponent.to_string(), g.exponent().to_string()));
        }
        if g.nilpotency_class() != self.class.0 {
            let show = |c: Option<usize>| c.map_or("none".to_string(), |c| c.to_string());
            return Err(mismatch("class", show(self.class.0), show(g.nilpotency_class())));
        }
        Ok(g)
    }
}

/// The default verification corpus.
pub fn default_corpus() -> Vec<CorpusEntry> {
    use Construction::*;
    let prod = |a, b| Product(Box::new(a), Box::new(b));
    vec![
        CorpusEntry::new("sym3", Symmetric(3), 6, 6, None),
        CorpusEntry::new("sym4", Symmetric(4), 24, 12, None),
        CorpusEntry::new("sym5", Symmetric(5), 120, 60, None),
        CorpusEntry::new("alt4", Alternating(4), 12, 6, None),
        CorpusEntry::new("alt5", Alternating(5), 60, 30, None),
        CorpusEntry::new("dihedral8", Dihedral(8), 8, 4, Some(2)),
        CorpusEntry::new("dihedral16", Dihedral(16), 16, 8, Some(3)),
        CorpusEntry::new("dihedral32", Dihedral(32), 32, 16, Some(4)),
        CorpusEntry::new("quaternion8", Quaternion(8), 8, 4, Some(2)),
        CorpusEntry::new("quaternion16", Quaternion(16), 16, 8, Some(3)),
        CorpusEntry::new("quaternion32", Quaternion(32), 32, 16, Some(4)),
        CorpusEntry::new("cyclic3", Cyclic(3), 3, 3, Some(1)),
        CorpusEntry::new("cyclic8", Cyclic(8), 8, 8, Some(1)),
        CorpusEntry::new("cyclic9", Cyclic(9), 9, 9, Some(1)),
        CorpusEntry::new("ut3_2", Unitriangular(3, 2), 8, 4, Some(2)),
        CorpusEntry::new("ut3_3", Unitriangular(3, 3), 27, 3, Some(2)),
        CorpusEntry::new("ut3_5", Unitriangular(3, 5), 125, 5, Some(2)),
        CorpusEntry::new("ut4_2", Unitriangular(4, 2), 64, 4, Some(3)),
        CorpusEntry::new("ut4_3", Unitriangular(4, 3), 729, 9, Some(3)),
        CorpusEntry::new("ut6_2", Unitriangular(6, 2), 32768, 8, Some(5)),
        CorpusEntry::new("dihedral8_x_cyclic3", prod(Dihedral(8), Cyclic(3)), 24, 12, Some(2)),
        CorpusEntry::new("sym3_x_cyclic4", prod(Symmetric(3), Cyclic(4)), 24, 12, None),
    ]
}

#[derive(Serialize, Deserialize)]
struct Manifest {
    #[serde(rename = "entry", default)]
    entries: Vec<CorpusEntry>,
}

pub fn manifest_to_string(entries: &[CorpusEntry]) -> String {
    toml::to_string(&Manifest { entries: entries.to_vec() }).expect("manifest serializes")
}

pub fn manifest_from_str(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    toml::from_str::<Manifest>(text).map(|m| m.entries).map_err(|e| CorpusError::Manifest(e.to_string()))
}

fn read(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.into(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CorpusError> {
    fs::write(path, text).map_err(|source| CorpusError::Io { path: path.into(), source })
}

pub fn load_manifest(path: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    manifest_from_str(&read(path)?)
}

pub fn save_manifest(entries: &[CorpusEntry], path: &Path) -> Result<(), CorpusError> {
    write(path, &manifest_to_string(entries))
}

/// Writes the generators of `group` in the group file format.
pub fn save(group: &FiniteGroup, path: &Path) -> Result<(), CorpusError> {
    write(path, &io::to_text(group))
}

/// Reads a group file and closes its generators.
pub fn load(path: &Path) -> Result<FiniteGroup, CorpusError> {
    Ok(io::from_text(&read(path)?, DEFAULT_CAP)?)
}
