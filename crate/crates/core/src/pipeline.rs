//! Keyword extraction and normalization into canonical topics.
//!
//! Every record yields raw keywords from the first non-empty source in the
//! chain author keywords, then Keywords Plus, then title tokens. Raw
//! keywords are stemmed per word and run through the synonym table; the
//! result is a [`Topic`], the canonical unit the rest of the crate counts.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::stem::stem_phrase;
use crate::stopwords::StopwordList;
use crate::synonyms::SynonymTable;
use crate::wos::ArticleRecord;

/// A canonical topic: stemmed, synonym-resolved, lowercase, single-spaced.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Topic(String);

/// Why a string cannot serve as a canonical topic.
#[derive(Debug, Error)]
#[error("{value:?} is not a canonical topic: {reason}")]
pub struct BadTopic {
    pub value: String,
    pub reason: &'static str,
}

impl Topic {
    /// Normalizes a raw keyword or phrase: stem each word, then resolve
    /// synonyms. Returns `None` when nothing is left (whitespace input).
    pub fn canonicalize(raw: &str, synonyms: &SynonymTable) -> Option<Topic> {
        let stemmed = stem_phrase(raw);
        if stemmed.is_empty() {
            return None;
        }
        Some(Topic(synonyms.resolve(&stemmed).to_string()))
    }

    /// Wraps a string that is already in canonical form, verifying shape:
    /// non-empty, lowercase, and single-spaced.
    pub fn from_canonical(value: &str) -> Result<Topic, BadTopic> {
        let bad = |reason| {
            Err(BadTopic {
                value: value.to_string(),
                reason,
            })
        };
        if value.is_empty() {
            return bad("empty");
        }
        if value != value.to_lowercase() {
            return bad("contains uppercase");
        }
        if value.trim() != value || value.contains("  ") {
            return bad("not single-spaced");
        }
        Ok(Topic(value.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Topic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A record yielded no keywords from any source.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtractError {
    #[error("record {accession_id:?} yields no keywords from any source")]
    EmptyYield { accession_id: String },
}

/// Extraction settings: stopwords for title tokens, the synonym table,
/// and an optional phrase dictionary applied to titles.
#[derive(Debug, Clone, Default)]
pub struct KeywordPipeline {
    stopwords: StopwordList,
    synonyms: SynonymTable,
    /// Lowercased token sequences recognized as multi-word title keywords.
    title_phrases: Vec<Vec<String>>,
}

impl KeywordPipeline {
    pub fn new(stopwords: StopwordList, synonyms: SynonymTable) -> Self {
        KeywordPipeline {
            stopwords,
            synonyms,
            title_phrases: Vec::new(),
        }
    }

    /// The bundled defaults: English stopwords and the standard synonym
    /// merges.
    pub fn default_pipeline() -> Self {
        Self::new(
            StopwordList::default_english(),
            SynonymTable::default_table(),
        )
    }

    /// Registers title phrases (matched case-insensitively, longest
    /// first). Entries that tokenize to nothing are dropped.
    pub fn with_title_phrases<I, S>(mut self, phrases: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.title_phrases = phrases
            .into_iter()
            .map(|p| {
                tokenize_title(p.as_ref())
                    .into_iter()
                    .map(|t| t.to_lowercase())
                    .collect::<Vec<_>>()
            })
            .filter(|tokens| !tokens.is_empty())
            .collect();
        self.title_phrases
            .sort_by_key(|tokens| std::cmp::Reverse(tokens.len()));
        self
    }

    pub fn synonyms(&self) -> &SynonymTable {
        &self.synonyms
    }

    pub fn stopwords(&self) -> &StopwordList {
        &self.stopwords
    }

    /// Raw keywords for a record: author keywords if present, else
    /// Keywords Plus, else title tokens with stopwords and pure-number
    /// tokens removed. Original casing is preserved.
    pub fn extract_raw_keywords(
        &self,
        record: &ArticleRecord,
    ) -> Result<Vec<String>, ExtractError> {
        if !record.author_keywords.is_empty() {
            return Ok(record.author_keywords.clone());
        }
        if !record.keywords_plus.is_empty() {
            return Ok(record.keywords_plus.clone());
        }
        let keywords = self.title_keywords(&record.title);
        if keywords.is_empty() {
            return Err(ExtractError::EmptyYield {
                accession_id: record.accession_id.clone(),
            });
        }
        Ok(keywords)
    }

    /// The set of canonical topics a record contributes to.
    pub fn topics_of(&self, record: &ArticleRecord) -> Result<BTreeSet<Topic>, ExtractError> {
        let raw = self.extract_raw_keywords(record)?;
        let topics: BTreeSet<Topic> = raw
            .iter()
            .filter_map(|kw| Topic::canonicalize(kw, &self.synonyms))
            .collect();
        if topics.is_empty() {
            return Err(ExtractError::EmptyYield {
                accession_id: record.accession_id.clone(),
            });
        }
        Ok(topics)
    }

    fn title_keywords(&self, title: &str) -> Vec<String> {
        let tokens = tokenize_title(title);
        let lowered: Vec<String> = tokens.iter().map(|t| t.to_lowercase()).collect();
        let mut keywords = Vec::new();
        let mut i = 0;
        'scan: while i < tokens.len() {
            for phrase in &self.title_phrases {
                if lowered[i..].starts_with(phrase.as_slice()) {
                    keywords.push(tokens[i..i + phrase.len()].join(" "));
                    i += phrase.len();
                    continue 'scan;
                }
            }
            if !self.stopwords.contains(&lowered[i]) {
                keywords.push(tokens[i].clone());
            }
            i += 1;
        }
        keywords
    }
}

/// Splits a title into tokens: runs of letters, digits and hyphens, with
/// edge hyphens stripped and purely numeric tokens dropped.
pub fn tokenize_title(title: &str) -> Vec<String> {
    title
        .split(|c: char| !(c.is_alphanumeric() || c == '-'))
        .map(|token| token.trim_matches('-'))
        .filter(|token| !token.is_empty())
        .filter(|token| !token.chars().all(|c| c.is_ascii_digit()))
        .map(str::to_string)
        .collect()
}
