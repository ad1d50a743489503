//! Synonym tables that merge keyword variants into one canonical topic.

use std::collections::BTreeMap;
use std::path::Path;

use crate::stopwords::{strip_comment, TableError};

/// Maps stemmed keyword variants to their canonical stemmed form.
///
/// Lookups not present in the table resolve to themselves, so an empty
/// table is the identity. Rules may not chain: every right-hand side must
/// either be absent from the keys or map to itself, which keeps resolution
/// a single step and rules order-independent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SynonymTable {
    mapping: BTreeMap<String, String>,
}

impl SynonymTable {
    /// The table shipped with the crate, merging the usual imaging and
    /// electrophysiology variants (`function mri` into `fmri`,
    /// `event-relat potenti` into `erp`).
    pub fn default_table() -> Self {
        Self::parse(include_str!("../data/synonyms_default.txt"))
            .expect("bundled synonym table is well-formed")
    }

    /// The identity table.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Parses `variant => canonical` lines. `#` comments and blank lines
    /// are ignored. Both sides must be non-empty, lowercase, and
    /// single-spaced; chained or cyclic rules are rejected.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut mapping = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let entry = strip_comment(raw).trim();
            if entry.is_empty() {
                continue;
            }
            let (variant, canonical) =
                entry.split_once("=>").ok_or_else(|| TableError::BadEntry {
                    line,
                    message: format!("expected `variant => canonical`, got {entry:?}"),
                })?;
            let variant = normalize_side(variant, line)?;
            let canonical = normalize_side(canonical, line)?;
            if mapping.insert(variant.clone(), canonical).is_some() {
                return Err(TableError::BadEntry {
                    line,
                    message: format!("variant {variant:?} mapped twice"),
                });
            }
        }
        for (variant, canonical) in &mapping {
            if variant != canonical {
                if let Some(next) = mapping.get(canonical) {
                    if next != canonical {
                        return Err(TableError::BadEntry {
                            line: 0,
                            message: format!(
                                "rule chain: {variant:?} => {canonical:?} => {next:?}; \
                                 canonicals may not be remapped"
                            ),
                        });
                    }
                }
            }
        }
        Ok(SynonymTable { mapping })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TableError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Canonical form of a stemmed keyword: the mapped value if a rule
    /// exists, otherwise the input itself.
    pub fn resolve<'a>(&'a self, stemmed: &'a str) -> &'a str {
        self.mapping
            .get(stemmed)
            .map(String::as_str)
            .unwrap_or(stemmed)
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    /// The rules, for diagnostics and round-tripping.
    pub fn rules(&self) -> impl Iterator<Item = (&str, &str)> {
        self.mapping.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

fn normalize_side(side: &str, line: usize) -> Result<String, TableError> {
    let side = side.trim();
    if side.is_empty() {
        return Err(TableError::BadEntry {
            line,
            message: "empty side in synonym rule".into(),
        });
    }
    if side.contains("  ") || side != side.to_lowercase() {
        return Err(TableError::BadEntry {
            line,
            message: format!("{side:?} must be lowercase and single-spaced"),
        });
    }
    Ok(side.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_table_merges_imaging_variants() {
        let table = SynonymTable::default_table();
        assert_eq!(table.resolve("function mri"), "fmri");
        assert_eq!(table.resolve("function magnet reson imag"), "fmri");
        assert_eq!(table.resolve("event-relat potenti"), "erp");
        assert_eq!(table.resolve("fmri"), "fmri");
        assert_eq!(table.resolve("hippocampu"), "hippocampu");
    }

    #[test]
    fn empty_table_is_identity() {
        assert_eq!(SynonymTable::empty().resolve("anything"), "anything");
    }

    #[test]
    fn chained_rules_are_rejected() {
        let err = SynonymTable::parse("a => b\nb => c\n").unwrap_err();
        assert!(err.to_string().contains("chain"), "{err}");
        let err = SynonymTable::parse("a => b\nb => a\n").unwrap_err();
        assert!(err.to_string().contains("chain"), "{err}");
    }

    #[test]
    fn identity_canonical_rules_are_allowed() {
        let table = SynonymTable::parse("a => b\nb => b\n").unwrap();
        assert_eq!(table.resolve("a"), "b");
        assert_eq!(table.resolve("b"), "b");
    }

    #[test]
    fn sides_must_be_lowercase_and_present() {
        assert!(SynonymTable::parse("FMRI => fmri\n").is_err());
        assert!(SynonymTable::parse(" => fmri\n").is_err());
        assert!(SynonymTable::parse("just a line\n").is_err());
    }

    #[test]
    fn duplicate_variants_are_rejected() {
        let err = SynonymTable::parse("a => b\na => c\n").unwrap_err();
        assert!(err.to_string().contains("mapped twice"), "{err}");
    }
}
