//! Stopword lists for title-derived keywords.

use std::collections::BTreeSet;
use std::path::Path;

use thiserror::Error;

/// A case-insensitive set of single words to drop from title tokens.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopwordList {
    words: BTreeSet<String>,
}

/// Why a stopword or synonym file failed to load.
#[derive(Debug, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    BadEntry { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl StopwordList {
    /// The list shipped with the crate: standard English function words.
    pub fn default_english() -> Self {
        Self::parse(include_str!("../data/stopwords_en.txt"))
            .expect("bundled stopword list is well-formed")
    }

    /// An empty list; nothing gets filtered.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Parses a list: one word per line, `#` comments, blank lines ignored.
    /// Entries are lowercased; multi-word entries are rejected.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut words = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let entry = strip_comment(raw).trim();
            if entry.is_empty() {
                continue;
            }
            if entry.chars().any(char::is_whitespace) {
                return Err(TableError::BadEntry {
                    line: idx + 1,
                    message: format!("stopword {entry:?} must be a single word"),
                });
            }
            words.insert(entry.to_lowercase());
        }
        Ok(StopwordList { words })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TableError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// True when `word` (any casing) is on the list.
    pub fn contains(&self, word: &str) -> bool {
        if word.chars().all(|c| c.is_ascii_lowercase()) {
            self.words.contains(word)
        } else {
            self.words.contains(&word.to_lowercase())
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}
