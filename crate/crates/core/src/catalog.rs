//! Shipped graphs. Each entry is a 4-regular completion and the
//! decompletion obtained by deleting its apex. Loading fails if a runnable
//! entry is not primitive divergent.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{decompletion, is_primitive_divergent, parse_edge_list, Graph};

const INDEX: &str = include_str!("../catalog/catalog.json");

fn edge_file(name: &str) -> Option<&'static str> {
    match name {
        "k5.edges" => Some(include_str!("../catalog/k5.edges")),
        "k222.edges" => Some(include_str!("../catalog/k222.edges")),
        "c7_12.edges" => Some(include_str!("../catalog/c7_12.edges")),
        _ => None,
    }
}

#[derive(Debug, Clone, Deserialize)]
struct RawEntry {
    name: String,
    completion_name: Option<String>,
    file: Option<String>,
    apex: Option<String>,
    #[serde(default = "yes")]
    run: bool,
    #[serde(default)]
    known_c2: BTreeMap<u64, i64>,
    note: String,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub completion_name: String,
    pub completion: Graph,
    pub decompletion: Graph,
    pub apex: String,
    pub note: String,
}

/// An entry kept for its recorded values only; nothing is computed for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DocumentedEntry {
    pub name: String,
    /// `q -> c2^(q)` as recorded.
    pub known_c2: BTreeMap<u64, i64>,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub documented: Vec<DocumentedEntry>,
}

impl Catalog {
    pub fn load() -> Result<Self> {
        let raw: Vec<RawEntry> = serde_json::from_str(INDEX).map_err(|e| Error::Catalog(format!("index: {e}")))?;
        let mut entries = Vec::new();
        let mut documented = Vec::new();
        for r in raw {
            if !r.run {
                documented.push(DocumentedEntry { name: r.name, known_c2: r.known_c2, note: r.note });
                continue;
            }
            let missing = |what: &str| Error::Catalog(format!("{}: missing {what}", r.name));
            let file = r.file.as_deref().ok_or_else(|| missing("file"))?;
            let text = edge_file(file).ok_or_else(|| Error::Catalog(format!("{}: unknown file {file}", r.name)))?;
            let completion_name = r.completion_name.clone().ok_or_else(|| missing("completion_name"))?;
            let apex = r.apex.clone().ok_or_else(|| missing("apex"))?;
            let completion = parse_edge_list(text)?.with_name(completion_name.clone());
            if !completion.is_regular(4) {
                return Err(Error::Catalog(format!("{}: completion is not 4-regular", r.name)));
            }
            let decompletion = decompletion(&completion, &apex)?.graph.with_name(r.name.clone());
            let check = is_primitive_divergent(&decompletion)?;
            if !check.primitive {
                return Err(Error::Catalog(format!("{}: not primitive divergent ({})", r.name, check.reason)));
            }
            entries.push(CatalogEntry { name: r.name, completion_name, completion, decompletion, apex, note: r.note });
        }
        Ok(Catalog { entries, documented })
    }

    pub fn entry(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// A decompletion by entry name, or a completion by its own name.
    pub fn graph(&self, name: &str) -> Option<&Graph> {
        self.entries.iter().find_map(|e| {
            if e.name == name {
                Some(&e.decompletion)
            } else if e.completion_name == name {
                Some(&e.completion)
            } else {
                None
            }
        })
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry> {
        self.entry(name).ok_or_else(|| Error::Catalog(format!("no catalog entry {name:?}")))
    }
}
