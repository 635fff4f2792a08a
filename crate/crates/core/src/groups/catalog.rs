//! Group catalogs: a JSON manifest of group specs with per-order completeness claims.
//!
//! `manifest.json` is a list of `{order, spec, label, complete}` records. An
//! order counts as complete when it has at least one entry and every entry of
//! that order carries `complete: true`; nonexistence arguments may only rely
//! on complete orders.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Fingerprint, GroupError, GroupSpec, GroupTable, DEFAULT_ELEMENT_CAP};

const BUNDLED_MANIFEST: &str = include_str!("../../catalog/manifest.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub order: usize,
    pub spec: GroupSpec,
    pub label: String,
    #[serde(default)]
    pub complete: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CatalogManifest {
    pub entries: Vec<CatalogEntry>,
}

impl CatalogManifest {
    pub fn parse(json: &str) -> Result<Self, GroupError> {
        serde_json::from_str(json).map_err(|e| GroupError::Catalog(format!("manifest: {e}")))
    }

    pub fn complete_orders(&self) -> BTreeSet<usize> {
        let mut by_order: BTreeMap<usize, bool> = BTreeMap::new();
        for e in &self.entries {
            let flag = by_order.entry(e.order).or_insert(true);
            *flag &= e.complete;
        }
        by_order
            .into_iter()
            .filter_map(|(o, complete)| complete.then_some(o))
            .collect()
    }
}

/// A manifest together with its validated tables.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub manifest: CatalogManifest,
    groups: Vec<GroupTable>,
}

impl Catalog {
    pub fn from_manifest(
        manifest: CatalogManifest,
        base: Option<&Path>,
    ) -> Result<Self, GroupError> {
        let mut groups = Vec::with_capacity(manifest.entries.len());
        for entry in &manifest.entries {
            let table = entry
                .spec
                .build(base, DEFAULT_ELEMENT_CAP)
                .map_err(|e| GroupError::Catalog(format!("{} ({}): {e}", entry.label, entry.spec)))?;
            if table.order() != entry.order {
                return Err(GroupError::Catalog(format!(
                    "{} declares order {} but {} has order {}",
                    entry.label,
                    entry.order,
                    entry.spec,
                    table.order()
                )));
            }
            groups.push(table.with_name(entry.label.clone()));
        }
        Ok(Catalog { manifest, groups })
    }

    /// Adds a group outside the manifest's completeness claims.
    pub fn push(&mut self, spec: GroupSpec, group: GroupTable) {
        self.manifest.entries.push(CatalogEntry {
            order: group.order(),
            spec,
            label: group.name().to_string(),
            complete: false,
        });
        self.groups.push(group);
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CatalogEntry, &GroupTable)> {
        self.manifest.entries.iter().zip(&self.groups)
    }

    pub fn groups_of_order(&self, order: usize) -> impl Iterator<Item = (&CatalogEntry, &GroupTable)> {
        self.iter().filter(move |(e, _)| e.order == order)
    }

    pub fn is_complete(&self, order: usize) -> bool {
        self.manifest.complete_orders().contains(&order)
    }

    pub fn complete_orders(&self) -> BTreeSet<usize> {
        self.manifest.complete_orders()
    }

    /// Pairs of same-order entries whose invariants coincide (possible duplicates).
    pub fn fingerprint_collisions(&self) -> Vec<(String, String)> {
        let mut seen: BTreeMap<Fingerprint, String> = BTreeMap::new();
        let mut out = Vec::new();
        for (e, g) in self.iter() {
            let fp = g.fingerprint();
            if let Some(prev) = seen.get(&fp) {
                out.push((prev.clone(), e.label.clone()));
            } else {
                seen.insert(fp, e.label.clone());
            }
        }
        out
    }
}

/// The catalog shipped with the crate: every group of order 1 through 15.
pub fn bundled_catalog() -> Catalog {
    let manifest = CatalogManifest::parse(BUNDLED_MANIFEST).expect("bundled manifest parses");
    Catalog::from_manifest(manifest, None).expect("bundled catalog builds")
}

/// Loads `dir/manifest.json`; `file:` specs resolve relative to `dir`.
pub fn load_catalog(dir: impl AsRef<Path>) -> Result<Catalog, GroupError> {
    let dir = dir.as_ref();
    let path = dir.join("manifest.json");
    let text = std::fs::read_to_string(&path).map_err(|e| GroupError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Catalog::from_manifest(CatalogManifest::parse(&text)?, Some(dir))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_generalized_quaternion, save_cayley_file};

    #[test]
    fn bundled_counts_match_known_group_numbers() {
        let cat = bundled_catalog();
        let known = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1];
        for (i, &count) in known.iter().enumerate() {
            let order = i + 1;
            assert_eq!(cat.groups_of_order(order).count(), count, "order {order}");
            assert!(cat.is_complete(order));
        }
        assert_eq!(cat.complete_orders(), (1..=15).collect());
        assert!(cat.fingerprint_collisions().is_empty());
    }

    #[test]
    fn directory_catalog_with_file_entry() {
        let dir = std::env::temp_dir().join(format!("skelsig-catalog-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        save_cayley_file(&build_generalized_quaternion(2).unwrap(), dir.join("q8.txt")).unwrap();
        std::fs::write(
            dir.join("manifest.json"),
            r#"[{"order": 8, "spec": "file:q8.txt", "label": "Q8", "complete": false},
                {"order": 4, "spec": "cyclic:4", "label": "C4", "complete": true},
                {"order": 4, "spec": "elab:2^2", "label": "V4", "complete": true}]"#,
        )
        .unwrap();
        let cat = load_catalog(&dir).unwrap();
        assert_eq!(cat.len(), 3);
        assert!(cat.is_complete(4));
        assert!(!cat.is_complete(8));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn manifest_errors() {
        let bad = CatalogManifest::parse(r#"[{"order": 5, "spec": "cyclic:6", "label": "x"}]"#).unwrap();
        assert!(Catalog::from_manifest(bad, None).is_err());
        assert!(CatalogManifest::parse("{").is_err());
        assert!(CatalogManifest::parse(r#"[{"order": 5, "spec": "blob:6", "label": "x"}]"#).is_err());
        assert!(load_catalog("/nonexistent/skelsig").is_err());
    }
}
