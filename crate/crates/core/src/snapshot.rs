//! Weekly usage snapshots: per-article cumulative counts captured on a
//! date, persisted one file per date, and differenced into period deltas.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use thiserror::Error;

use crate::wos::ArticleRecord;

/// Cumulative usage per article id, captured on one date.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub date: NaiveDate,
    pub usage: BTreeMap<String, u64>,
}

/// Snapshot store failures.
#[derive(Debug, Error)]
pub enum StoreError {
    #[error("snapshot for {date} already exists at {path}")]
    DuplicateDate { date: NaiveDate, path: PathBuf },
    #[error("snapshot file {path}: {message}")]
    BadSnapshotFile { path: PathBuf, message: String },
    #[error("no snapshot stored for {date}")]
    NotFound { date: NaiveDate },
    #[error("article id {id:?} cannot be stored: it contains a tab or line break")]
    BadArticleId { id: String },
    #[error("snapshots must be in increasing date order: {earlier} is not before {later}")]
    BadOrder {
        earlier: NaiveDate,
        later: NaiveDate,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Snapshot {
    /// Captures the cumulative usage counts of `records` as of `date`.
    pub fn from_records(date: NaiveDate, records: &[ArticleRecord]) -> Snapshot {
        let usage = records
            .iter()
            .map(|r| (r.accession_id.clone(), r.usage_since_2013))
            .collect();
        Snapshot { date, usage }
    }

    /// Renders the on-disk form: a `#date:` header, then one
    /// tab-separated `id<TAB>count` line per article, sorted by id.
    pub fn to_file_string(&self) -> Result<String, StoreError> {
        let mut out = format!("#date: {}\n", self.date);
        for (id, count) in &self.usage {
            if id.contains(['\t', '\n', '\r']) || id.is_empty() {
                return Err(StoreError::BadArticleId { id: id.clone() });
            }
            out.push_str(id);
            out.push('\t');
            out.push_str(&count.to_string());
            out.push('\n');
        }
        Ok(out)
    }

    /// Parses the on-disk form. `path` is used only in error messages.
    pub fn parse(text: &str, path: &Path) -> Result<Snapshot, StoreError> {
        let bad = |message: String| StoreError::BadSnapshotFile {
            path: path.to_path_buf(),
            message,
        };
        let mut lines = text.lines().enumerate();
        let date = loop {
            match lines.next() {
                Some((_, line)) if line.trim().is_empty() => continue,
                Some((_, line)) => {
                    let date_str = line
                        .strip_prefix("#date:")
                        .ok_or_else(|| bad("missing #date: header".into()))?;
                    break date_str
                        .trim()
                        .parse::<NaiveDate>()
                        .map_err(|e| bad(format!("bad date in header: {e}")))?;
                }
                None => return Err(bad("empty snapshot file".into())),
            }
        };
        let mut usage = BTreeMap::new();
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (id, count) = line
                .split_once('\t')
                .ok_or_else(|| bad(format!("line {}: expected id<TAB>count", idx + 1)))?;
            let count: u64 = count
                .trim()
                .parse()
                .map_err(|e| bad(format!("line {}: bad count for {id:?}: {e}", idx + 1)))?;
            if usage.insert(id.to_string(), count).is_some() {
                return Err(bad(format!(
                    "line {}: duplicate article id {id:?}",
                    idx + 1
                )));
            }
        }
        Ok(Snapshot { date, usage })
    }
}

/// A directory of snapshot files, one `YYYY-MM-DD.tsv` per capture date.
/// The directory listing is the index; there is no manifest to corrupt.
#[derive(Debug, Clone)]
pub struct SnapshotStore {
    root: PathBuf,
}

impl SnapshotStore {
    /// Opens a store, creating the directory if needed.
    pub fn open(root: impl Into<PathBuf>) -> Result<SnapshotStore, StoreError> {
        let root = root.into();
        std::fs::create_dir_all(&root)?;
        Ok(SnapshotStore { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn path_for(&self, date: NaiveDate) -> PathBuf {
        self.root.join(format!("{date}.tsv"))
    }

    /// Persists a snapshot. Refuses to overwrite an existing date.
    pub fn add(&self, snapshot: &Snapshot) -> Result<PathBuf, StoreError> {
        let path = self.path_for(snapshot.date);
        if path.exists() {
            return Err(StoreError::DuplicateDate {
                date: snapshot.date,
                path,
            });
        }
        std::fs::write(&path, snapshot.to_file_string()?)?;
        Ok(path)
    }

    /// The capture dates on disk, ascending. Files not named like
    /// `YYYY-MM-DD.tsv` are ignored.
    pub fn dates(&self) -> Result<Vec<NaiveDate>, StoreError> {
        let mut dates = Vec::new();
        for entry in std::fs::read_dir(&self.root)? {
            let name = entry?.file_name();
            let Some(stem) = name.to_str().and_then(|n| n.strip_suffix(".tsv")) else {
                continue;
            };
            if let Ok(date) = stem.parse::<NaiveDate>() {
                dates.push(date);
            }
        }
        dates.sort();
        Ok(dates)
    }

    /// Loads one snapshot, verifying that the header date matches the
    /// file name.
    pub fn load(&self, date: NaiveDate) -> Result<Snapshot, StoreError> {
        let path = self.path_for(date);
        if !path.exists() {
            return Err(StoreError::NotFound { date });
        }
        let snapshot = Snapshot::parse(&std::fs::read_to_string(&path)?, &path)?;
        if snapshot.date != date {
            return Err(StoreError::BadSnapshotFile {
                path,
                message: format!("header date {} does not match file name", snapshot.date),
            });
        }
        Ok(snapshot)
    }

    /// All snapshots, ascending by date.
    pub fn load_all(&self) -> Result<Vec<Snapshot>, StoreError> {
        self.dates()?.into_iter().map(|d| self.load(d)).collect()
    }
}

/// Per-article usage change between two snapshots.
///
/// Articles present only in the later snapshot count from zero; articles
/// that disappeared are dropped. Cumulative counts cannot legitimately
/// fall, so any negative delta marks the whole period invalid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodDelta {
    pub start: NaiveDate,
    pub end: NaiveDate,
    pub deltas: BTreeMap<String, i64>,
    pub valid: bool,
    pub invalid_reason: Option<String>,
}

impl PeriodDelta {
    /// Sum of all per-article deltas: the Ratio2 denominator.
    pub fn total(&self) -> i64 {
        self.deltas.values().sum()
    }
}

/// Differences two snapshots taken in date order.
pub fn period_delta(earlier: &Snapshot, later: &Snapshot) -> Result<PeriodDelta, StoreError> {
    if earlier.date >= later.date {
        return Err(StoreError::BadOrder {
            earlier: earlier.date,
            later: later.date,
        });
    }
    let mut deltas = BTreeMap::new();
    let mut invalid_reason = None;
    for (id, &count) in &later.usage {
        let before = earlier.usage.get(id).copied().unwrap_or(0);
        let delta = count as i64 - before as i64;
        if delta < 0 && invalid_reason.is_none() {
            invalid_reason = Some(format!("negative delta for {id:?}: {count} after {before}"));
        }
        deltas.insert(id.clone(), delta);
    }
    Ok(PeriodDelta {
        start: earlier.date,
        end: later.date,
        valid: invalid_reason.is_none(),
        invalid_reason,
        deltas,
    })
}
