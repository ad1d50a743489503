//! Brute-force reimplementations of the statistics, for oracle
//! equivalence checks. Everything here is deliberately naive: nested
//! loops and linear scans, sharing only the keyword extraction primitive
//! with the implementation under test.

use std::collections::BTreeSet;

use chrono::NaiveDate;
use topicheat::pipeline::{KeywordPipeline, Topic};
use topicheat::series::PeriodRange;
use topicheat::snapshot::Snapshot;
use topicheat::usage::QuadrantSets;
use topicheat::wos::ArticleRecord;

pub struct OracleRow {
    pub topic: Topic,
    pub frequency: u64,
    pub usage_total: u64,
    pub ratio1: f64,
}

pub struct OracleStats {
    pub rows: Vec<OracleRow>,
    pub corpus_usage_total: u64,
    pub empty_yield: Vec<String>,
}

/// Frequency, usage and usage share per topic, one full corpus scan per
/// topic.
pub fn topic_stats(records: &[ArticleRecord], pipeline: &KeywordPipeline) -> OracleStats {
    let sets: Vec<Option<BTreeSet<Topic>>> =
        records.iter().map(|r| pipeline.topics_of(r).ok()).collect();

    let mut corpus_usage_total = 0u64;
    let mut empty_yield = Vec::new();
    for (record, set) in records.iter().zip(&sets) {
        corpus_usage_total += record.usage_since_2013;
        if set.is_none() {
            empty_yield.push(record.accession_id.clone());
        }
    }

    let mut all_topics: Vec<Topic> = Vec::new();
    for set in sets.iter().flatten() {
        for topic in set {
            if !all_topics.contains(topic) {
                all_topics.push(topic.clone());
            }
        }
    }

    let mut rows = Vec::new();
    for topic in all_topics {
        let mut frequency = 0u64;
        let mut usage_total = 0u64;
        for (record, set) in records.iter().zip(&sets) {
            if set.as_ref().is_some_and(|s| s.contains(&topic)) {
                frequency += 1;
                usage_total += record.usage_since_2013;
            }
        }
        let ratio1 = if corpus_usage_total == 0 {
            0.0
        } else {
            usage_total as f64 / corpus_usage_total as f64
        };
        rows.push(OracleRow {
            topic,
            frequency,
            usage_total,
            ratio1,
        });
    }
    OracleStats {
        rows,
        corpus_usage_total,
        empty_yield,
    }
}

fn select_top(
    rows: &[OracleRow],
    k: usize,
    beats: impl Fn(&OracleRow, &OracleRow) -> bool,
) -> Vec<(Topic, u64, u64)> {
    let mut remaining: Vec<&OracleRow> = rows.iter().collect();
    let mut out = Vec::new();
    while out.len() < k && !remaining.is_empty() {
        let mut best = 0;
        for i in 1..remaining.len() {
            if beats(remaining[i], remaining[best]) {
                best = i;
            }
        }
        let row = remaining.swap_remove(best);
        out.push((row.topic.clone(), row.frequency, row.usage_total));
    }
    out
}

pub fn top_by_frequency(rows: &[OracleRow], k: usize) -> Vec<(Topic, u64, u64)> {
    select_top(rows, k, |a, b| {
        (a.frequency, a.usage_total, &b.topic) > (b.frequency, b.usage_total, &a.topic)
    })
}

pub fn top_by_usage(rows: &[OracleRow], k: usize) -> Vec<(Topic, u64, u64)> {
    select_top(rows, k, |a, b| {
        (a.usage_total, a.frequency, &b.topic) > (b.usage_total, b.frequency, &a.topic)
    })
}

pub fn quadrants(rows: &[OracleRow], k: usize) -> QuadrantSets {
    let f: Vec<Topic> = top_by_frequency(rows, k)
        .into_iter()
        .map(|(t, _, _)| t)
        .collect();
    let u: Vec<Topic> = top_by_usage(rows, k)
        .into_iter()
        .map(|(t, _, _)| t)
        .collect();
    let mut both = BTreeSet::new();
    let mut freq_only = BTreeSet::new();
    let mut usage_only = BTreeSet::new();
    for t in &f {
        if u.contains(t) {
            both.insert(t.clone());
        } else {
            freq_only.insert(t.clone());
        }
    }
    for t in &u {
        if !f.contains(t) {
            usage_only.insert(t.clone());
        }
    }
    QuadrantSets {
        k,
        both,
        freq_only,
        usage_only,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OraclePoint {
    pub start: NaiveDate,
    pub end: NaiveDate,
    pub ratio2: f64,
    pub zero_denominator: bool,
}

/// Delta-share points for one topic, or `None` when the topic belongs to
/// no record (the implementation reports that as an unknown topic).
pub fn ratio2_points(
    snapshots: &[Snapshot],
    records: &[ArticleRecord],
    pipeline: &KeywordPipeline,
    topic: &Topic,
    excluded: &[PeriodRange],
) -> Option<Vec<OraclePoint>> {
    let mut members: Vec<&str> = Vec::new();
    for record in records {
        if let Ok(topics) = pipeline.topics_of(record) {
            if topics.contains(topic) {
                members.push(record.accession_id.as_str());
            }
        }
    }
    if members.is_empty() {
        return None;
    }

    let mut ordered: Vec<&Snapshot> = snapshots.iter().collect();
    ordered.sort_by_key(|s| s.date);

    let mut points = Vec::new();
    for i in 0..ordered.len().saturating_sub(1) {
        let (earlier, later) = (ordered[i], ordered[i + 1]);
        let mut negative = false;
        let mut total = 0i64;
        let mut topic_part = 0i64;
        for (id, &count) in &later.usage {
            let before = earlier.usage.get(id).copied().unwrap_or(0);
            let delta = count as i64 - before as i64;
            if delta < 0 {
                negative = true;
            }
            total += delta;
            if members.contains(&id.as_str()) {
                topic_part += delta;
            }
        }
        if negative {
            continue;
        }
        let covered = excluded
            .iter()
            .any(|r| r.start <= earlier.date && later.date <= r.end);
        if covered {
            continue;
        }
        let (ratio2, zero_denominator) = if total == 0 {
            (0.0, true)
        } else {
            (topic_part as f64 / total as f64, false)
        };
        points.push(OraclePoint {
            start: earlier.date,
            end: later.date,
            ratio2,
            zero_denominator,
        });
    }
    Some(points)
}
