//! The versioned JSON catalog file shipped in `data/catalog.json`.

use std::collections::BTreeMap;

use cyclozeta::catalog::{self, CatalogEntry, Kind, Line, Source};
use serde::{Deserialize, Serialize};

pub const CATALOG_VERSION: u32 = 1;

/// Families are exported up to this index.
pub const FAMILY_LMAX: u64 = 12;

pub const SHIPPED: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub name: String,
    pub n: u64,
    pub m_line: BTreeMap<String, i64>,
    pub p_line: BTreeMap<String, i64>,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub version: u32,
    pub entries: Vec<EntryJson>,
}

fn line_json(l: &Line) -> BTreeMap<String, i64> {
    l.iter().map(|(d, c)| (d.to_string(), *c)).collect()
}

fn line_from_json(l: &BTreeMap<String, i64>) -> anyhow::Result<Line> {
    l.iter()
        .map(|(k, &c)| Ok((k.parse::<u64>().map_err(|_| anyhow::anyhow!("bad line key {k:?}"))?, c)))
        .collect()
}

impl From<&CatalogEntry> for EntryJson {
    fn from(e: &CatalogEntry) -> Self {
        Self {
            name: e.name.clone(),
            n: e.n,
            m_line: line_json(&e.m_line),
            p_line: line_json(&e.p_line),
            source: e.source.as_str().to_string(),
            note: e.note.clone(),
        }
    }
}

impl EntryJson {
    pub fn to_entry(&self) -> anyhow::Result<CatalogEntry> {
        let source = Source::parse(&self.source).ok_or_else(|| anyhow::anyhow!("unknown source {:?}", self.source))?;
        let kind = catalog::get(&self.name, None).map(|e| e.kind).unwrap_or(Kind::Other);
        Ok(CatalogEntry {
            name: self.name.clone(),
            kind,
            n: self.n,
            m_line: line_from_json(&self.m_line)?,
            p_line: line_from_json(&self.p_line)?,
            source,
            note: self.note.clone(),
        })
    }
}

/// The built-in table in file form.
pub fn export() -> CatalogFile {
    CatalogFile {
        version: CATALOG_VERSION,
        entries: catalog::catalog(FAMILY_LMAX).iter().map(EntryJson::from).collect(),
    }
}

pub fn load(src: &str) -> anyhow::Result<Vec<CatalogEntry>> {
    let file: CatalogFile = serde_json::from_str(src)?;
    anyhow::ensure!(file.version == CATALOG_VERSION, "unsupported catalog version {}", file.version);
    file.entries.iter().map(EntryJson::to_entry).collect()
}
