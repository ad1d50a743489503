//! Corpus-wide aggregation: topic frequencies, usage totals, usage share
//! (Ratio1), rankings, and the frequency/usage quadrant split.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::pipeline::{KeywordPipeline, Topic};
use crate::wos::ArticleRecord;

/// Per-topic aggregates over one corpus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopicStats {
    pub topic: Topic,
    /// Number of records whose topic set contains this topic.
    pub frequency: u64,
    /// Sum of the records' cumulative usage counts.
    pub usage_total: u64,
    /// Usage share: `usage_total` over the corpus-wide usage total.
    /// Zero when the corpus total is zero.
    pub ratio1: f64,
}

/// The result of aggregating a corpus.
#[derive(Debug, Clone, Default)]
pub struct Aggregation {
    pub stats: BTreeMap<Topic, TopicStats>,
    /// Usage summed over every record, including skipped ones: the
    /// Ratio1 denominator.
    pub corpus_usage_total: u64,
    /// Accession ids skipped because no source yielded keywords.
    pub empty_yield: Vec<String>,
}

/// Why aggregation could not run.
#[derive(Debug, Error)]
pub enum UsageError {
    #[error("cannot aggregate an empty corpus")]
    EmptyCorpus,
}

impl Aggregation {
    /// True when every ratio is pinned to zero because the corpus has no
    /// recorded usage at all.
    pub fn zero_usage(&self) -> bool {
        self.corpus_usage_total == 0
    }
}

/// Aggregates a corpus: every record's topic set bumps `frequency` by one
/// and `usage_total` by the record's cumulative usage count.
///
/// Records yielding no keywords are skipped (and reported), but their
/// usage still counts toward the corpus-wide denominator. Extraction runs
/// in parallel; the merge is sequential, so results are deterministic.
pub fn aggregate(
    records: &[ArticleRecord],
    pipeline: &KeywordPipeline,
) -> Result<Aggregation, UsageError> {
    if records.is_empty() {
        return Err(UsageError::EmptyCorpus);
    }
    let topic_sets: Vec<_> = records
        .par_iter()
        .map(|record| pipeline.topics_of(record))
        .collect();

    let mut agg = Aggregation::default();
    let mut tallies: BTreeMap<Topic, (u64, u64)> = BTreeMap::new();
    for (record, topics) in records.iter().zip(topic_sets) {
        agg.corpus_usage_total += record.usage_since_2013;
        match topics {
            Ok(topics) => {
                for topic in topics {
                    let (freq, usage) = tallies.entry(topic).or_default();
                    *freq += 1;
                    *usage += record.usage_since_2013;
                }
            }
            Err(_) => agg.empty_yield.push(record.accession_id.clone()),
        }
    }
    let denominator = agg.corpus_usage_total;
    agg.stats = tallies
        .into_iter()
        .map(|(topic, (frequency, usage_total))| {
            let ratio1 = if denominator == 0 {
                0.0
            } else {
                usage_total as f64 / denominator as f64
            };
            (
                topic.clone(),
                TopicStats {
                    topic,
                    frequency,
                    usage_total,
                    ratio1,
                },
            )
        })
        .collect();
    Ok(agg)
}

/// Orders by frequency descending, usage descending, topic ascending.
pub fn by_frequency(a: &TopicStats, b: &TopicStats) -> Ordering {
    b.frequency
        .cmp(&a.frequency)
        .then(b.usage_total.cmp(&a.usage_total))
        .then(a.topic.cmp(&b.topic))
}

/// Orders by usage descending, frequency descending, topic ascending.
pub fn by_usage(a: &TopicStats, b: &TopicStats) -> Ordering {
    b.usage_total
        .cmp(&a.usage_total)
        .then(b.frequency.cmp(&a.frequency))
        .then(a.topic.cmp(&b.topic))
}

/// The `k` most frequent topics.
pub fn top_by_frequency(agg: &Aggregation, k: usize) -> Vec<TopicStats> {
    top_by(agg, k, by_frequency)
}

/// The `k` most used topics.
pub fn top_by_usage(agg: &Aggregation, k: usize) -> Vec<TopicStats> {
    top_by(agg, k, by_usage)
}

fn top_by(
    agg: &Aggregation,
    k: usize,
    cmp: fn(&TopicStats, &TopicStats) -> Ordering,
) -> Vec<TopicStats> {
    let mut rows: Vec<TopicStats> = agg.stats.values().cloned().collect();
    rows.sort_by(cmp);
    rows.truncate(k);
    rows
}

/// How the top-`k` by frequency and the top-`k` by usage overlap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadrantSets {
    pub k: usize,
    /// In both top-`k` lists.
    pub both: BTreeSet<Topic>,
    /// Top-`k` by frequency only.
    pub freq_only: BTreeSet<Topic>,
    /// Top-`k` by usage only: the fast movers frequency alone misses.
    pub usage_only: BTreeSet<Topic>,
}

impl QuadrantSets {
    /// Splits two pre-ranked topic lists. Only the first `k` entries of
    /// each list are considered.
    pub fn from_rankings(by_freq: &[Topic], by_usage: &[Topic], k: usize) -> Self {
        let f: BTreeSet<Topic> = by_freq.iter().take(k).cloned().collect();
        let u: BTreeSet<Topic> = by_usage.iter().take(k).cloned().collect();
        QuadrantSets {
            k,
            both: f.intersection(&u).cloned().collect(),
            freq_only: f.difference(&u).cloned().collect(),
            usage_only: u.difference(&f).cloned().collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("quadrant sets serialize")
    }
}

/// Quadrant split of an aggregation's top-`k` rankings.
pub fn quadrants(agg: &Aggregation, k: usize) -> QuadrantSets {
    let by_freq: Vec<Topic> = top_by_frequency(agg, k)
        .into_iter()
        .map(|s| s.topic)
        .collect();
    let by_usage: Vec<Topic> = top_by_usage(agg, k).into_iter().map(|s| s.topic).collect();
    QuadrantSets::from_rankings(&by_freq, &by_usage, k)
}

/// A ratio rendered as a percentage with two decimals: `0.0806998` becomes
/// `"8.07"`.
pub fn percent_string(ratio: f64) -> String {
    format!("{:.2}", ratio * 100.0)
}

#[derive(Serialize)]
struct RankedRow<'a> {
    rank: usize,
    topic: &'a Topic,
    frequency: u64,
    usage_total: u64,
    ratio1_percent: f64,
}

fn ranked_rows(rows: &[TopicStats]) -> Vec<RankedRow<'_>> {
    rows.iter()
        .enumerate()
        .map(|(i, s)| RankedRow {
            rank: i + 1,
            topic: &s.topic,
            frequency: s.frequency,
            usage_total: s.usage_total,
            ratio1_percent: (s.ratio1 * 10_000.0).round() / 100.0,
        })
        .collect()
}

/// CSV table with columns `rank,topic,frequency,usage_total,ratio1_percent`.
pub fn table_csv(rows: &[TopicStats]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for (i, s) in rows.iter().enumerate() {
        writer
            .write_record([
                (i + 1).to_string(),
                s.topic.to_string(),
                s.frequency.to_string(),
                s.usage_total.to_string(),
                percent_string(s.ratio1),
            ])
            .expect("writing to a vec cannot fail");
    }
    let mut out = String::from("rank,topic,frequency,usage_total,ratio1_percent\n");
    out.push_str(
        &String::from_utf8(writer.into_inner().expect("no partial flush"))
            .expect("csv output is UTF-8"),
    );
    out
}

/// The same table as a JSON array.
pub fn table_json(rows: &[TopicStats]) -> String {
    serde_json::to_string_pretty(&ranked_rows(rows)).expect("table rows serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::KeywordPipeline;

    fn record(id: &str, keywords: &[&str], usage: u64) -> ArticleRecord {
        let mut r = ArticleRecord::new(id);
        r.author_keywords = keywords.iter().map(|s| s.to_string()).collect();
        r.usage_since_2013 = usage;
        r
    }

    fn pipeline() -> KeywordPipeline {
        KeywordPipeline::default_pipeline()
    }

    fn topic(s: &str) -> Topic {
        Topic::from_canonical(s).unwrap()
    }

    #[test]
    fn aggregate_counts_frequency_and_usage_per_topic() {
        let records = vec![
            record("A", &["memory", "attention"], 10),
            record("B", &["memory"], 5),
            record("C", &["Memories"], 1),
        ];
        let agg = aggregate(&records, &pipeline()).unwrap();
        assert_eq!(agg.corpus_usage_total, 16);
        let memory = &agg.stats[&topic("memori")];
        assert_eq!(memory.frequency, 3);
        assert_eq!(memory.usage_total, 16);
        assert!((memory.ratio1 - 1.0).abs() < 1e-12);
        let attention = &agg.stats[&topic("attent")];
        assert_eq!(attention.frequency, 1);
        assert_eq!(attention.usage_total, 10);
    }

    #[test]
    fn duplicate_keywords_in_one_record_count_once() {
        let records = vec![record("A", &["memory", "memories", "MEMORY"], 4)];
        let agg = aggregate(&records, &pipeline()).unwrap();
        assert_eq!(agg.stats[&topic("memori")].frequency, 1);
        assert_eq!(agg.stats[&topic("memori")].usage_total, 4);
    }

    #[test]
    fn empty_yield_records_are_skipped_but_fund_the_denominator() {
        let mut blank = ArticleRecord::new("SKIP");
        blank.usage_since_2013 = 10;
        let records = vec![record("A", &["memory"], 10), blank];
        let agg = aggregate(&records, &pipeline()).unwrap();
        assert_eq!(agg.empty_yield, ["SKIP"]);
        assert_eq!(agg.corpus_usage_total, 20);
        assert!((agg.stats[&topic("memori")].ratio1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn empty_corpus_is_an_error() {
        assert!(matches!(
            aggregate(&[], &pipeline()),
            Err(UsageError::EmptyCorpus)
        ));
    }

    #[test]
    fn zero_usage_corpus_pins_ratios_to_zero() {
        let records = vec![record("A", &["memory"], 0)];
        let agg = aggregate(&records, &pipeline()).unwrap();
        assert!(agg.zero_usage());
        assert_eq!(agg.stats[&topic("memori")].ratio1, 0.0);
    }

    #[test]
    fn rankings_break_ties_deterministically() {
        let records = vec![
            record("A", &["alpha", "beta"], 5),
            record("B", &["beta", "gamma"], 5),
            record("C", &["gamma", "alpha"], 5),
        ];
        let agg = aggregate(&records, &pipeline()).unwrap();
        let by_freq: Vec<String> = top_by_frequency(&agg, 3)
            .into_iter()
            .map(|s| s.topic.to_string())
            .collect();
        assert_eq!(by_freq, ["alpha", "beta", "gamma"]);
        let top2 = top_by_usage(&agg, 2);
        assert_eq!(top2.len(), 2);
        assert_eq!(top2[0].topic.as_str(), "alpha");
    }

    #[test]
    fn quadrants_split_rankings_into_three_sets() {
        let f = ["a", "b", "c"].map(topic);
        let u = ["b", "c", "d"].map(topic);
        let q = QuadrantSets::from_rankings(&f, &u, 3);
        assert_eq!(q.both, BTreeSet::from(["b", "c"].map(topic)));
        assert_eq!(q.freq_only, BTreeSet::from([topic("a")]));
        assert_eq!(q.usage_only, BTreeSet::from([topic("d")]));
    }

    #[test]
    fn quadrants_respect_k_by_truncating() {
        let f = ["a", "b", "c"].map(topic);
        let u = ["a", "c", "b"].map(topic);
        let q = QuadrantSets::from_rankings(&f, &u, 2);
        assert_eq!(q.both, BTreeSet::from([topic("a")]));
        assert_eq!(q.freq_only, BTreeSet::from([topic("b")]));
        assert_eq!(q.usage_only, BTreeSet::from([topic("c")]));
    }

    #[test]
    fn percent_formatting_rounds_to_two_decimals() {
        assert_eq!(percent_string(0.5), "50.00");
        assert_eq!(percent_string(0.0), "0.00");
        assert_eq!(percent_string(0.0806998), "8.07");
        assert_eq!(percent_string(1.0), "100.00");
    }

    #[test]
    fn csv_table_has_header_and_ranked_rows() {
        let records = vec![
            record("A", &["memory"], 3),
            record("B", &["memory", "rats"], 1),
        ];
        let agg = aggregate(&records, &pipeline()).unwrap();
        let csv = table_csv(&top_by_frequency(&agg, 10));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "rank,topic,frequency,usage_total,ratio1_percent");
        assert_eq!(lines[1], "1,memori,2,4,100.00");
        assert_eq!(lines[2], "2,rat,1,1,25.00");
    }

    #[test]
    fn json_table_mirrors_the_csv_columns() {
        let records = vec![record("A", &["memory"], 3)];
        let agg = aggregate(&records, &pipeline()).unwrap();
        let json = table_json(&top_by_usage(&agg, 10));
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed[0]["rank"], 1);
        assert_eq!(parsed[0]["topic"], "memori");
        assert_eq!(parsed[0]["frequency"], 1);
        assert_eq!(parsed[0]["usage_total"], 3);
        assert_eq!(parsed[0]["ratio1_percent"], 100.0);
    }
}
