//! Per-topic delta-share series (Ratio2) over consecutive snapshots, and
//! trend classification of those series.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::Serialize;
use thiserror::Error;

use crate::pipeline::{KeywordPipeline, Topic};
use crate::snapshot::{period_delta, Snapshot, StoreError};
use crate::wos::ArticleRecord;

/// An inclusive date range in `YYYY-MM-DD..YYYY-MM-DD` form, used to
/// exclude known-bad reporting periods from series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodRange {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

#[derive(Debug, Error)]
#[error("bad period range {input:?}: {reason}")]
pub struct BadPeriodRange {
    pub input: String,
    pub reason: String,
}

impl PeriodRange {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Result<Self, BadPeriodRange> {
        if start >= end {
            return Err(BadPeriodRange {
                input: format!("{start}..{end}"),
                reason: "start must precede end".into(),
            });
        }
        Ok(PeriodRange { start, end })
    }

    /// True when the period `[start, end]` lies inside this range.
    pub fn covers(&self, start: NaiveDate, end: NaiveDate) -> bool {
        self.start <= start && end <= self.end
    }
}

impl FromStr for PeriodRange {
    type Err = BadPeriodRange;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: String| BadPeriodRange {
            input: s.to_string(),
            reason,
        };
        let (start, end) = s
            .split_once("..")
            .ok_or_else(|| bad("expected YYYY-MM-DD..YYYY-MM-DD".into()))?;
        let start = start
            .trim()
            .parse()
            .map_err(|e| bad(format!("bad start date: {e}")))?;
        let end = end
            .trim()
            .parse()
            .map_err(|e| bad(format!("bad end date: {e}")))?;
        PeriodRange::new(start, end)
    }
}

impl fmt::Display for PeriodRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Shape of a topic's delta-share series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Trend {
    Emerging,
    Declining,
    Stable,
    Volatile,
    Inactive,
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Trend::Emerging => "emerging",
            Trend::Declining => "declining",
            Trend::Stable => "stable",
            Trend::Volatile => "volatile",
            Trend::Inactive => "inactive",
        };
        f.write_str(name)
    }
}

/// One valid period's delta share for a topic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub start: NaiveDate,
    pub end: NaiveDate,
    /// Topic delta over corpus delta for the period; zero when the corpus
    /// delta is zero (then `zero_denominator` is set).
    pub ratio2: f64,
    pub zero_denominator: bool,
}

/// A topic's series over every valid, non-excluded period, plus its
/// classification.
#[derive(Debug, Clone, PartialEq)]
pub struct TopicSeries {
    pub topic: Topic,
    pub points: Vec<SeriesPoint>,
    pub trend: Trend,
}

/// Why a series could not be computed.
#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("need at least two snapshots to form a period")]
    NeedTwoSnapshots,
    #[error("topic {topic:?} appears in no record of the corpus")]
    UnknownTopic { topic: String },
    #[error(transparent)]
    Store(#[from] StoreError),
}

/// Minimum delta share treated as activity when classifying trends.
pub const ACTIVITY_EPSILON: f64 = 1e-3;

/// Coefficient-of-variation ceiling for a series to count as stable.
pub const STABLE_CV_MAX: f64 = 0.35;

/// Classifies a series of delta shares.
///
/// Checks run in order: inactive (every point below [`ACTIVITY_EPSILON`]),
/// emerging (late window mean at least twice the early mean and itself
/// active), declining (the mirror image), stable (coefficient of variation
/// at most [`STABLE_CV_MAX`]), else volatile. The early and late windows
/// are the first and last third of the points, at least two points each,
/// clamped to the series length.
pub fn classify_trend(values: &[f64]) -> Trend {
    if values.iter().all(|v| *v < ACTIVITY_EPSILON) {
        return Trend::Inactive;
    }
    let n = values.len();
    let window = (n / 3).max(2).min(n);
    let mean = |slice: &[f64]| slice.iter().sum::<f64>() / slice.len() as f64;
    let early = mean(&values[..window]);
    let late = mean(&values[n - window..]);
    if late >= 2.0 * early && late >= ACTIVITY_EPSILON {
        return Trend::Emerging;
    }
    if early >= 2.0 * late && early >= ACTIVITY_EPSILON {
        return Trend::Declining;
    }
    let overall = mean(values);
    let variance = values.iter().map(|v| (v - overall).powi(2)).sum::<f64>() / n as f64;
    let cv = variance.sqrt() / overall;
    if cv <= STABLE_CV_MAX {
        Trend::Stable
    } else {
        Trend::Volatile
    }
}

/// Computes a topic's Ratio2 series over consecutive snapshot pairs.
///
/// A record belongs to the topic when its extracted topic set contains it;
/// records yielding no keywords belong to none. Periods are dropped when a
/// negative per-article delta invalidates them or when a range in
/// `excluded` covers them. Snapshot order in the slice does not matter;
/// pairs are formed on ascending dates.
pub fn ratio2_series(
    snapshots: &[Snapshot],
    records: &[ArticleRecord],
    pipeline: &KeywordPipeline,
    topic: &Topic,
    excluded: &[PeriodRange],
) -> Result<TopicSeries, SeriesError> {
    if snapshots.len() < 2 {
        return Err(SeriesError::NeedTwoSnapshots);
    }
    let mut ordered: Vec<&Snapshot> = snapshots.iter().collect();
    ordered.sort_by_key(|s| s.date);

    let mut members: BTreeSet<&str> = BTreeSet::new();
    for record in records {
        if let Ok(topics) = pipeline.topics_of(record) {
            if topics.contains(topic) {
                members.insert(record.accession_id.as_str());
            }
        }
    }
    if members.is_empty() {
        return Err(SeriesError::UnknownTopic {
            topic: topic.to_string(),
        });
    }

    let mut points = Vec::new();
    for pair in ordered.windows(2) {
        let delta = period_delta(pair[0], pair[1])?;
        if !delta.valid {
            continue;
        }
        if excluded
            .iter()
            .any(|range| range.covers(delta.start, delta.end))
        {
            continue;
        }
        let denominator = delta.total();
        let numerator: i64 = delta
            .deltas
            .iter()
            .filter(|(id, _)| members.contains(id.as_str()))
            .map(|(_, d)| *d)
            .sum();
        let (ratio2, zero_denominator) = if denominator == 0 {
            (0.0, true)
        } else {
            (numerator as f64 / denominator as f64, false)
        };
        points.push(SeriesPoint {
            start: delta.start,
            end: delta.end,
            ratio2,
            zero_denominator,
        });
    }

    let values: Vec<f64> = points.iter().map(|p| p.ratio2).collect();
    Ok(TopicSeries {
        topic: topic.clone(),
        points,
        trend: classify_trend(&values),
    })
}

/// CSV with columns `topic,period_start,period_end,ratio2,flags`: one row
/// per point, then a summary row per topic with empty dates and
/// `classification=<trend>` in the flags column.
pub fn series_csv(series: &[TopicSeries]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for ts in series {
        for point in &ts.points {
            let flags = if point.zero_denominator {
                "zero_denominator"
            } else {
                ""
            };
            writer
                .write_record([
                    ts.topic.to_string(),
                    point.start.to_string(),
                    point.end.to_string(),
                    format!("{}", point.ratio2),
                    flags.to_string(),
                ])
                .expect("writing to a vec cannot fail");
        }
        writer
            .write_record([
                ts.topic.to_string(),
                String::new(),
                String::new(),
                String::new(),
                format!("classification={}", ts.trend),
            ])
            .expect("writing to a vec cannot fail");
    }
    let mut out = String::from("topic,period_start,period_end,ratio2,flags\n");
    out.push_str(
        &String::from_utf8(writer.into_inner().expect("no partial flush"))
            .expect("csv output is UTF-8"),
    );
    out
}

#[derive(Serialize)]
struct JsonPoint<'a> {
    period_start: NaiveDate,
    period_end: NaiveDate,
    ratio2: f64,
    flags: Vec<&'a str>,
}

#[derive(Serialize)]
struct JsonSeries<'a> {
    topic: &'a Topic,
    points: Vec<JsonPoint<'a>>,
    classification: Trend,
}

/// The same content as [`series_csv`] as a JSON array.
pub fn series_json(series: &[TopicSeries]) -> String {
    let rows: Vec<JsonSeries<'_>> = series
        .iter()
        .map(|ts| JsonSeries {
            topic: &ts.topic,
            points: ts
                .points
                .iter()
                .map(|p| JsonPoint {
                    period_start: p.start,
                    period_end: p.end,
                    ratio2: p.ratio2,
                    flags: if p.zero_denominator {
                        vec!["zero_denominator"]
                    } else {
                        Vec::new()
                    },
                })
                .collect(),
            classification: ts.trend,
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("series rows serialize")
}
