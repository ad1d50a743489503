//! Field-tagged bibliographic export format, Web of Science plain-text style.
//!
//! A file is an optional `FN`/`VR` header followed by records. Each record
//! is a run of `XX value` lines (two-character tag, space, value) closed by
//! `ER`; the file is closed by `EF`. A line indented with exactly three
//! spaces continues the previous field and is joined with a single space.
//! `DE` (author keywords) and `ID` (keywords plus) hold `;`-separated lists.
//!
//! [`parse_export`] accepts both `\n` and `\r\n` line endings;
//! [`write_export`] always emits `\n` and a canonical header.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One bibliographic record from a field-tagged export.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArticleRecord {
    /// Accession id from the `UT` field, unique per export.
    pub accession_id: String,
    /// Title from `TI`; empty when the record carries none.
    pub title: String,
    /// Author keywords from `DE`, in file order.
    pub author_keywords: Vec<String>,
    /// Keywords Plus from `ID`, in file order.
    pub keywords_plus: Vec<String>,
    /// Publication year from `PY`.
    pub pub_year: Option<i32>,
    /// Usage count over the trailing 180 days, from `U1`.
    pub usage_180d: u64,
    /// Usage count since 2013, from `U2`. Cumulative, so weekly exports of
    /// the same corpus should show non-decreasing values here.
    pub usage_since_2013: u64,
    /// Any other tags, verbatim. Repeated tags are joined with one space.
    pub extra_fields: BTreeMap<String, String>,
}

impl ArticleRecord {
    /// A minimal record with just an accession id.
    pub fn new(accession_id: impl Into<String>) -> Self {
        ArticleRecord {
            accession_id: accession_id.into(),
            ..Self::default()
        }
    }
}

/// Why an export failed to parse. Line numbers are 1-based.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    MalformedRecord { line: usize, message: String },
    #[error("line {line}: duplicate accession id {id:?}")]
    DuplicateAccession { line: usize, id: String },
    #[error("line {line}: record ended without a UT accession id")]
    MissingAccession { line: usize },
    #[error("line {line}: {tag} value {value:?} is not a usage count")]
    BadUsageValue {
        line: usize,
        tag: String,
        value: String,
    },
    #[error("line {line}: PY value {value:?} is not a year")]
    BadYearValue { line: usize, value: String },
    #[error("input is not valid UTF-8 (first invalid byte at offset {valid_up_to})")]
    NotUtf8 { valid_up_to: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Why a record list could not be serialized.
#[derive(Debug, Error)]
pub enum WriteError {
    #[error("record {id:?}: keyword {keyword:?} must be non-empty, trimmed, and free of ';' and line breaks")]
    BadKeyword { id: String, keyword: String },
    #[error("record {id:?}: {tag} value {value:?} {reason}")]
    BadFieldValue {
        id: String,
        tag: String,
        value: String,
        reason: &'static str,
    },
    #[error("record {id:?}: extra field tag {tag:?} {reason}")]
    BadTag {
        id: String,
        tag: String,
        reason: &'static str,
    },
    #[error("duplicate accession id {id:?}")]
    DuplicateAccession { id: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Tags with dedicated handling; the writer refuses them in `extra_fields`.
const RESERVED_TAGS: [&str; 11] = [
    "FN", "VR", "UT", "TI", "DE", "ID", "PY", "U1", "U2", "ER", "EF",
];

/// Parses a complete export. Records come back in file order.
pub fn parse_export(text: &str) -> Result<Vec<ArticleRecord>, ParseError> {
    Parser::default().parse(text)
}

/// Reads and parses an export file, enforcing UTF-8.
pub fn parse_export_file(path: impl AsRef<Path>) -> Result<Vec<ArticleRecord>, ParseError> {
    let bytes = std::fs::read(path)?;
    let text = String::from_utf8(bytes).map_err(|e| ParseError::NotUtf8 {
        valid_up_to: e.utf8_error().valid_up_to(),
    })?;
    parse_export(&text)
}

/// Serializes records as a field-tagged export with a canonical header.
///
/// Emits `UT` first, then the known fields, then extra fields sorted by
/// tag. `U1`/`U2` are always written; empty title/keyword fields and a
/// missing year are omitted.
pub fn write_export(records: &[ArticleRecord]) -> Result<String, WriteError> {
    let mut out = String::from("FN Thomson Reuters Web of Science\nVR 1.0\n");
    let mut seen_ids = BTreeSet::new();
    for record in records {
        validate_record(record)?;
        if !seen_ids.insert(record.accession_id.as_str()) {
            return Err(WriteError::DuplicateAccession {
                id: record.accession_id.clone(),
            });
        }
        let _ = writeln!(out, "UT {}", record.accession_id);
        if !record.title.is_empty() {
            let _ = writeln!(out, "TI {}", record.title);
        }
        if !record.author_keywords.is_empty() {
            let _ = writeln!(out, "DE {}", record.author_keywords.join("; "));
        }
        if !record.keywords_plus.is_empty() {
            let _ = writeln!(out, "ID {}", record.keywords_plus.join("; "));
        }
        if let Some(year) = record.pub_year {
            let _ = writeln!(out, "PY {year}");
        }
        let _ = writeln!(out, "U1 {}", record.usage_180d);
        let _ = writeln!(out, "U2 {}", record.usage_since_2013);
        for (tag, value) in &record.extra_fields {
            if value.is_empty() {
                let _ = writeln!(out, "{tag}");
            } else {
                let _ = writeln!(out, "{tag} {value}");
            }
        }
        out.push_str("ER\n\n");
    }
    out.push_str("EF\n");
    Ok(out)
}

/// [`write_export`] straight to a file.
pub fn write_export_file(
    path: impl AsRef<Path>,
    records: &[ArticleRecord],
) -> Result<(), WriteError> {
    let text = write_export(records)?;
    std::fs::write(path, text)?;
    Ok(())
}

fn validate_record(record: &ArticleRecord) -> Result<(), WriteError> {
    let id = &record.accession_id;
    let field_ok = |v: &str| !v.contains(['\n', '\r']) && v.trim() == v;
    if id.is_empty() || !field_ok(id) {
        return Err(WriteError::BadFieldValue {
            id: id.clone(),
            tag: "UT".into(),
            value: id.clone(),
            reason: "must be non-empty and trimmed",
        });
    }
    if !field_ok(&record.title) {
        return Err(WriteError::BadFieldValue {
            id: id.clone(),
            tag: "TI".into(),
            value: record.title.clone(),
            reason: "must be trimmed and single-line",
        });
    }
    for keyword in record.author_keywords.iter().chain(&record.keywords_plus) {
        if keyword.is_empty() || keyword.contains(';') || !field_ok(keyword) {
            return Err(WriteError::BadKeyword {
                id: id.clone(),
                keyword: keyword.clone(),
            });
        }
    }
    for (tag, value) in &record.extra_fields {
        let tag_shape_ok = tag.len() == 2
            && tag
                .bytes()
                .all(|b| b.is_ascii_uppercase() || b.is_ascii_digit());
        if !tag_shape_ok {
            return Err(WriteError::BadTag {
                id: id.clone(),
                tag: tag.clone(),
                reason: "must be two uppercase ASCII letters or digits",
            });
        }
        if RESERVED_TAGS.contains(&tag.as_str()) {
            return Err(WriteError::BadTag {
                id: id.clone(),
                tag: tag.clone(),
                reason: "is reserved",
            });
        }
        if !field_ok(value) {
            return Err(WriteError::BadFieldValue {
                id: id.clone(),
                tag: tag.clone(),
                value: value.clone(),
                reason: "must be trimmed and single-line",
            });
        }
    }
    Ok(())
}

/// In-progress record state while scanning tag lines.
#[derive(Default)]
struct Draft {
    accession: Option<String>,
    title: Option<String>,
    author_keywords: Option<String>,
    keywords_plus: Option<String>,
    pub_year: Option<i32>,
    usage_180d: Option<u64>,
    usage_since_2013: Option<u64>,
    extra_fields: BTreeMap<String, String>,
}

#[derive(Default)]
struct Parser {
    records: Vec<ArticleRecord>,
    seen_ids: BTreeSet<String>,
    draft: Option<Draft>,
    /// Tag currently accumulating continuation lines.
    pending: Option<(String, String, usize)>,
    seen_ef: bool,
}

impl Parser {
    fn parse(mut self, text: &str) -> Result<Vec<ArticleRecord>, ParseError> {
        let mut lines = text.lines().enumerate().peekable();

        // Header: FN then VR, each optional, only at the very top.
        for header in ["FN", "VR"] {
            while matches!(lines.peek(), Some((_, l)) if l.trim().is_empty()) {
                lines.next();
            }
            if matches!(lines.peek(), Some((_, l)) if is_tag(l, header)) {
                lines.next();
            }
        }

        let mut last_line = 0;
        for (idx, raw) in lines {
            let line = idx + 1;
            last_line = line;
            if let Some(rest) = raw.strip_prefix("   ") {
                let segment = rest.trim();
                if segment.is_empty() {
                    continue;
                }
                match &mut self.pending {
                    Some((_, value, _)) => {
                        value.push(' ');
                        value.push_str(segment);
                    }
                    None => {
                        return Err(ParseError::MalformedRecord {
                            line,
                            message: "continuation line without a field to continue".into(),
                        })
                    }
                }
                continue;
            }
            if raw.trim().is_empty() {
                continue;
            }
            let (tag, value) = split_tag_line(raw, line)?;
            if self.seen_ef {
                return Err(ParseError::MalformedRecord {
                    line,
                    message: "content after the EF terminator".into(),
                });
            }
            match tag {
                "ER" | "EF" if !value.is_empty() => {
                    return Err(ParseError::MalformedRecord {
                        line,
                        message: format!("{tag} takes no value"),
                    })
                }
                "ER" => self.end_record(line)?,
                "EF" => {
                    self.flush_pending()?;
                    if self.draft.is_some() {
                        return Err(ParseError::MalformedRecord {
                            line,
                            message: "EF reached inside an unterminated record".into(),
                        });
                    }
                    self.seen_ef = true;
                }
                "FN" | "VR" => {
                    return Err(ParseError::MalformedRecord {
                        line,
                        message: format!("{tag} header tag inside the file body"),
                    })
                }
                _ => {
                    self.flush_pending()?;
                    self.draft.get_or_insert_with(Draft::default);
                    self.pending = Some((tag.to_string(), value.trim().to_string(), line));
                }
            }
        }

        if self.draft.is_some() || self.pending.is_some() {
            return Err(ParseError::MalformedRecord {
                line: last_line,
                message: "file ended inside an unterminated record".into(),
            });
        }
        if !self.seen_ef {
            return Err(ParseError::MalformedRecord {
                line: last_line,
                message: "missing EF terminator".into(),
            });
        }
        Ok(self.records)
    }

    /// Commits the accumulating field into the draft record.
    fn flush_pending(&mut self) -> Result<(), ParseError> {
        let Some((tag, value, line)) = self.pending.take() else {
            return Ok(());
        };
        let draft = self
            .draft
            .as_mut()
            .expect("pending field implies an open draft");
        let occupied = |proper: &Option<String>| proper.is_some();
        match tag.as_str() {
            "UT" => {
                if value.is_empty() {
                    return Err(ParseError::MalformedRecord {
                        line,
                        message: "UT carries no accession id".into(),
                    });
                }
                if draft.accession.replace(value).is_some() {
                    return Err(dup_tag(line, "UT"));
                }
            }
            "TI" => {
                if draft.title.replace(value).is_some() {
                    return Err(dup_tag(line, "TI"));
                }
            }
            "DE" => {
                if occupied(&draft.author_keywords) {
                    return Err(dup_tag(line, "DE"));
                }
                draft.author_keywords = Some(value);
            }
            "ID" => {
                if occupied(&draft.keywords_plus) {
                    return Err(dup_tag(line, "ID"));
                }
                draft.keywords_plus = Some(value);
            }
            "PY" => {
                let year = value.parse().map_err(|_| ParseError::BadYearValue {
                    line,
                    value: value.clone(),
                })?;
                if draft.pub_year.replace(year).is_some() {
                    return Err(dup_tag(line, "PY"));
                }
            }
            "U1" | "U2" => {
                let count = value.parse().map_err(|_| ParseError::BadUsageValue {
                    line,
                    tag: tag.clone(),
                    value: value.clone(),
                })?;
                let slot = if tag == "U1" {
                    &mut draft.usage_180d
                } else {
                    &mut draft.usage_since_2013
                };
                if slot.replace(count).is_some() {
                    return Err(dup_tag(line, &tag));
                }
            }
            _ => match draft.extra_fields.entry(tag) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(value);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let joined = e.get_mut();
                    if !value.is_empty() {
                        if !joined.is_empty() {
                            joined.push(' ');
                        }
                        joined.push_str(&value);
                    }
                }
            },
        }
        Ok(())
    }

    fn end_record(&mut self, line: usize) -> Result<(), ParseError> {
        self.flush_pending()?;
        let Some(draft) = self.draft.take() else {
            return Err(ParseError::MalformedRecord {
                line,
                message: "ER without an open record".into(),
            });
        };
        let id = draft
            .accession
            .ok_or(ParseError::MissingAccession { line })?;
        if !self.seen_ids.insert(id.clone()) {
            return Err(ParseError::DuplicateAccession { line, id });
        }
        self.records.push(ArticleRecord {
            accession_id: id,
            title: draft.title.unwrap_or_default(),
            author_keywords: split_keyword_list(draft.author_keywords.as_deref().unwrap_or("")),
            keywords_plus: split_keyword_list(draft.keywords_plus.as_deref().unwrap_or("")),
            pub_year: draft.pub_year,
            usage_180d: draft.usage_180d.unwrap_or(0),
            usage_since_2013: draft.usage_since_2013.unwrap_or(0),
            extra_fields: draft.extra_fields,
        });
        Ok(())
    }
}

/// Splits a `;`-separated keyword field, trimming items and dropping
/// empties.
pub fn split_keyword_list(raw: &str) -> Vec<String> {
    raw.split(';')
        .map(str::trim)
        .filter(|item| !item.is_empty())
        .map(str::to_string)
        .collect()
}

fn is_tag(line: &str, tag: &str) -> bool {
    let line = line.trim_end().as_bytes();
    line == tag.as_bytes() || (line.len() > 3 && &line[..2] == tag.as_bytes() && line[2] == b' ')
}

fn split_tag_line(raw: &str, line: usize) -> Result<(&str, &str), ParseError> {
    let bytes = raw.as_bytes();
    let tag_ok = bytes.len() >= 2
        && bytes[..2]
            .iter()
            .all(|b| b.is_ascii_uppercase() || b.is_ascii_digit())
        && (bytes.len() == 2 || bytes[2] == b' ');
    if !tag_ok {
        return Err(ParseError::MalformedRecord {
            line,
            message: format!("unrecognized line {:?}", raw.trim_end()),
        });
    }
    let value = if raw.len() > 3 { &raw[3..] } else { "" };
    Ok((&raw[..2], value.trim()))
}

fn dup_tag(line: usize, tag: &str) -> ParseError {
    ParseError::MalformedRecord {
        line,
        message: format!("repeated {tag} field"),
    }
}
