use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::MetricError;
use crate::structures::{decode_heads, ConstituencyTree, HeadList, HeadMatrix};

#[derive(Debug, Clone, PartialEq)]
pub enum Structure {
    HeadMatrix(HeadMatrix),
    HeadList(HeadList),
    Tree(ConstituencyTree),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    HeadMatrix,
    HeadList,
    Tree,
}

/// Dependency structures (matrices or head lists) are comparable with each
/// other; trees only with trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Dependency,
    Constituency,
}

impl StructureKind {
    pub fn family(self) -> Family {
        match self {
            StructureKind::HeadMatrix | StructureKind::HeadList => Family::Dependency,
            StructureKind::Tree => Family::Constituency,
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureKind::HeadMatrix => "head_matrix",
            StructureKind::HeadList => "head_list",
            StructureKind::Tree => "tree",
        })
    }
}

impl Structure {
    pub fn kind(&self) -> StructureKind {
        match self {
            Structure::HeadMatrix(_) => StructureKind::HeadMatrix,
            Structure::HeadList(_) => StructureKind::HeadList,
            Structure::Tree(_) => StructureKind::Tree,
        }
    }

    /// Decoded heads for dependency structures.
    pub fn heads(&self) -> Option<HeadList> {
        match self {
            Structure::HeadMatrix(h) => Some(decode_heads(h)),
            Structure::HeadList(h) => Some(h.clone()),
            Structure::Tree(_) => None,
        }
    }

    pub fn tree(&self) -> Option<&ConstituencyTree> {
        match self {
            Structure::Tree(t) => Some(t),
            _ => None,
        }
    }

    /// Number of content tokens covered.
    pub fn len(&self) -> usize {
        match self {
            Structure::HeadMatrix(h) => h.content_len(),
            Structure::HeadList(h) => h.len(),
            Structure::Tree(t) => t.leaf_count(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Provenance {
    pub model: String,
    pub step: u64,
}

impl Provenance {
    pub fn new(model: impl Into<String>, step: u64) -> Self {
        Provenance {
            model: model.into(),
            step,
        }
    }
}

/// Induced structures of one model checkpoint, keyed by sequence id.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureSet {
    pub provenance: Provenance,
    kind: StructureKind,
    items: BTreeMap<String, Structure>,
}

impl StructureSet {
    pub fn new(provenance: Provenance, kind: StructureKind) -> Self {
        StructureSet {
            provenance,
            kind,
            items: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, id: impl Into<String>, s: Structure) -> Result<(), MetricError> {
        if s.kind() != self.kind {
            return Err(MetricError::KindMismatch(self.kind.to_string(), s.kind().to_string()));
        }
        let id = id.into();
        if self.items.contains_key(&id) {
            return Err(MetricError::DuplicateId(id));
        }
        self.items.insert(id, s);
        Ok(())
    }

    pub fn from_items(
        provenance: Provenance,
        kind: StructureKind,
        items: impl IntoIterator<Item = (String, Structure)>,
    ) -> Result<Self, MetricError> {
        let mut set = StructureSet::new(provenance, kind);
        for (id, s) in items {
            set.insert(id, s)?;
        }
        Ok(set)
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Structure> {
        self.items.get(id)
    }

    /// Items in id order.
    pub fn iter(&self) -> impl Iterator<Item = (&String, &Structure)> {
        self.items.iter()
    }
}
