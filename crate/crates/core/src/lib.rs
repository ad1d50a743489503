//! Detect and track hot research topics from field-tagged bibliographic
//! exports and item-level usage counts.
//!
//! The crate is organized as a pipeline:
//!
//! 1. [`wos`] parses and writes field-tagged exports ([`ArticleRecord`]).
//! 2. [`pipeline`] turns each record into canonical [`Topic`]s: keywords
//!    from the first non-empty source (author keywords, Keywords Plus,
//!    title), stemmed per word ([`stem`]) and merged through a
//!    [`SynonymTable`].
//! 3. [`usage`] aggregates a corpus into per-topic frequency and usage
//!    totals, usage shares (Ratio1), rankings, and quadrant sets.
//! 4. [`snapshot`] persists weekly cumulative usage captures and
//!    differences them; [`series`] turns the deltas into per-topic delta
//!    shares (Ratio2) and classifies each series' trend.
//!
//! ```
//! use topicheat::{aggregate, top_by_usage, ArticleRecord, KeywordPipeline};
//!
//! let mut a = ArticleRecord::new("WOS:000000000001");
//! a.author_keywords = vec!["fMRI".into(), "working memory".into()];
//! a.usage_since_2013 = 30;
//! let mut b = ArticleRecord::new("WOS:000000000002");
//! b.author_keywords = vec!["functional MRI".into()];
//! b.usage_since_2013 = 12;
//!
//! let pipeline = KeywordPipeline::default_pipeline();
//! let agg = aggregate(&[a, b], &pipeline)?;
//! let top = top_by_usage(&agg, 1);
//! assert_eq!(top[0].topic.as_str(), "fmri");
//! assert_eq!(top[0].usage_total, 42);
//! # Ok::<(), topicheat::UsageError>(())
//! ```

pub mod pipeline;
pub mod series;
pub mod snapshot;
pub mod stem;
pub mod stopwords;
pub mod synonyms;
pub mod usage;
pub mod wos;

pub use pipeline::{ExtractError, KeywordPipeline, Topic};
pub use series::{
    classify_trend, ratio2_series, series_csv, series_json, PeriodRange, SeriesError, SeriesPoint,
    TopicSeries, Trend,
};
pub use snapshot::{period_delta, PeriodDelta, Snapshot, SnapshotStore, StoreError};
pub use stopwords::StopwordList;
pub use synonyms::SynonymTable;
pub use usage::{
    aggregate, quadrants, table_csv, table_json, top_by_frequency, top_by_usage, Aggregation,
    QuadrantSets, TopicStats, UsageError,
};
pub use wos::{parse_export, write_export, ArticleRecord, ParseError, WriteError};
