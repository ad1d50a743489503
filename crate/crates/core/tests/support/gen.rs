//! Seeded random corpora and record lists for the acceptance suite.

use std::collections::BTreeMap;

use chrono::{Days, NaiveDate};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use topicheat::pipeline::{KeywordPipeline, Topic};
use topicheat::series::PeriodRange;
use topicheat::snapshot::Snapshot;
use topicheat::wos::ArticleRecord;

/// Canonical topics with raw keyword variants that normalize to them
/// under the default pipeline.
const VARIANTS: &[(&str, &[&str])] = &[
    (
        "fmri",
        &[
            "fMRI",
            "functional MRI",
            "Functional Magnetic Resonance Imaging",
        ],
    ),
    ("memori", &["memory", "memories", "Memory"]),
    ("attent", &["attention", "Attention"]),
    ("eeg", &["EEG"]),
    ("cortex", &["cortex", "Cortex"]),
    ("neuron", &["neuron", "neurons", "Neurons"]),
    ("reward", &["reward", "rewards"]),
    ("erp", &["event-related potential", "ERP", "ERPs"]),
];

const FILLER_WORDS: &[&str] = &["the", "and", "of", "in", "on", "with"];

pub struct GeneratedCorpus {
    pub records: Vec<ArticleRecord>,
    pub snapshots: Vec<Snapshot>,
    pub excluded: Vec<PeriodRange>,
    /// The canonical topics generation drew from; some may end up unused.
    pub topic_pool: Vec<Topic>,
}

/// A corpus of up to 50 records over up to 8 topics with up to 6 weekly
/// snapshots, plus occasional negative deltas, article churn, flat
/// periods, and excluded ranges.
pub fn random_corpus(seed: u64, _pipeline: &KeywordPipeline) -> GeneratedCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));

    let n_topics = rng.gen_range(1..=VARIANTS.len());
    let mut indices: Vec<usize> = (0..VARIANTS.len()).collect();
    indices.shuffle(&mut rng);
    indices.truncate(n_topics);
    let chosen: Vec<&(&str, &[&str])> = indices.iter().map(|&i| &VARIANTS[i]).collect();
    let topic_pool: Vec<Topic> = chosen
        .iter()
        .map(|(c, _)| Topic::from_canonical(c).unwrap())
        .collect();
    let single_word_variants: Vec<&str> = chosen
        .iter()
        .flat_map(|(_, vs)| vs.iter().copied())
        .filter(|v| !v.contains(' '))
        .collect();

    let n_records = rng.gen_range(1..=50);
    let mut records = Vec::with_capacity(n_records);
    for i in 0..n_records {
        let mut record = ArticleRecord::new(format!("WOS:{seed:04}{i:04}"));
        record.usage_since_2013 = rng.gen_range(0..=500);
        record.usage_180d = rng.gen_range(0..=50);
        record.pub_year = Some(rng.gen_range(2010..=2016));
        let pick_keywords = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..=4.min(chosen.len()));
            let mut kws = Vec::new();
            for _ in 0..n {
                let (_, variants) = chosen.choose(rng).unwrap();
                let kw = variants.choose(rng).unwrap().to_string();
                if !kws.contains(&kw) {
                    kws.push(kw);
                }
            }
            kws
        };
        match rng.gen_range(0..10) {
            0 => {
                // Nothing but stopwords: an empty-yield record.
                record.title = "Of the and in".into();
            }
            1 | 2 => {
                let mut words = Vec::new();
                for _ in 0..rng.gen_range(1..=3) {
                    words.push(*FILLER_WORDS.choose(&mut rng).unwrap());
                    if let Some(w) = single_word_variants.choose(&mut rng) {
                        words.push(w);
                    }
                }
                if single_word_variants.is_empty() {
                    // No usable title words for these topics; fall back.
                    record.author_keywords = pick_keywords(&mut rng);
                } else {
                    record.title = words.join(" ");
                }
            }
            3 | 4 => record.keywords_plus = pick_keywords(&mut rng),
            _ => record.author_keywords = pick_keywords(&mut rng),
        }
        records.push(record);
    }

    let n_snapshots = rng.gen_range(0..=6);
    let base = NaiveDate::from_ymd_opt(2015, 10, 19).unwrap();
    let dates: Vec<NaiveDate> = (0..n_snapshots)
        .map(|k| base + Days::new(7 * k as u64))
        .collect();

    // Cumulative trajectories per article, plus the occasional article
    // that exists only in the snapshots.
    let mut trajectories: BTreeMap<String, Vec<u64>> = BTreeMap::new();
    let mut present: BTreeMap<String, Vec<bool>> = BTreeMap::new();
    let mut ids: Vec<String> = records.iter().map(|r| r.accession_id.clone()).collect();
    if rng.gen_bool(0.3) {
        ids.push(format!("GHOST:{seed:04}"));
    }
    for id in &ids {
        let mut count = rng.gen_range(0..=100u64);
        let mut series = Vec::with_capacity(n_snapshots);
        for _ in 0..n_snapshots {
            series.push(count);
            count += rng.gen_range(0..=30);
        }
        trajectories.insert(id.clone(), series);
        present.insert(id.clone(), vec![true; n_snapshots]);
    }
    if n_snapshots >= 2 {
        if rng.gen_bool(0.2) {
            // A flat period: copy one snapshot onto the next.
            let q = rng.gen_range(0..n_snapshots - 1);
            for series in trajectories.values_mut() {
                series[q + 1] = series[q];
            }
        }
        if rng.gen_bool(0.25) {
            // A correction: one article's cumulative count drops.
            let p = rng.gen_range(0..n_snapshots - 1);
            let id = ids.choose(&mut rng).unwrap();
            let series = trajectories.get_mut(id).unwrap();
            series[p + 1] = series[p].saturating_sub(rng.gen_range(1..=5));
        }
        if rng.gen_bool(0.3) && ids.len() > 1 {
            // Churn: one article missing from a prefix or suffix of the
            // snapshot sequence.
            let id = ids.choose(&mut rng).unwrap();
            let cut = rng.gen_range(1..n_snapshots);
            let flags = present.get_mut(id).unwrap();
            if rng.gen_bool(0.5) {
                flags[..cut].fill(false);
            } else {
                flags[cut..].fill(false);
            }
        }
    }

    let snapshots: Vec<Snapshot> = dates
        .iter()
        .enumerate()
        .map(|(k, &date)| Snapshot {
            date,
            usage: ids
                .iter()
                .filter(|id| present[*id][k])
                .map(|id| (id.clone(), trajectories[id][k]))
                .collect(),
        })
        .collect();

    let mut excluded = Vec::new();
    if n_snapshots >= 2 && rng.gen_bool(0.3) {
        let p = rng.gen_range(0..n_snapshots - 1);
        let wide = p + 2 < n_snapshots && rng.gen_bool(0.25);
        let end = if wide { dates[p + 2] } else { dates[p + 1] };
        excluded.push(PeriodRange::new(dates[p], end).unwrap());
    }

    GeneratedCorpus {
        records,
        snapshots,
        excluded,
        topic_pool,
    }
}

const TEXT_CHARS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 :,.()'-";
const KEYWORD_CHARS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 '-";
const EXTRA_TAGS: &[&str] = &["AB", "AU", "C1", "J9", "LA", "PT", "SO", "TC", "Z9"];

fn random_text(rng: &mut ChaCha8Rng, chars: &[u8], max_len: usize) -> String {
    let len = rng.gen_range(0..=max_len);
    let raw: String = (0..len)
        .map(|_| *chars.choose(rng).unwrap() as char)
        .collect();
    raw.trim().to_string()
}

fn random_keyword(rng: &mut ChaCha8Rng) -> String {
    let text = random_text(rng, KEYWORD_CHARS, 18);
    if text.is_empty() {
        "keyword".to_string()
    } else {
        text
    }
}

/// A structurally randomized record list for round-trip testing: titles,
/// keyword lists, years, usage counts, and extra fields all vary; ids are
/// unique per list.
pub fn random_record_list(seed: u64) -> Vec<ArticleRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x2545_f491_4f6c_dd1d));
    let n = rng.gen_range(0..=30);
    (0..n)
        .map(|i| {
            let mut record = ArticleRecord::new(format!("WOS:{seed:04}{i:05}"));
            record.title = random_text(&mut rng, TEXT_CHARS, 60);
            for _ in 0..rng.gen_range(0..5) {
                record.author_keywords.push(random_keyword(&mut rng));
            }
            for _ in 0..rng.gen_range(0..5) {
                record.keywords_plus.push(random_keyword(&mut rng));
            }
            if rng.gen_bool(0.7) {
                record.pub_year = Some(rng.gen_range(1950..2030));
            }
            record.usage_180d = rng.gen_range(0..10_000);
            record.usage_since_2013 = rng.gen_range(0..100_000);
            for _ in 0..rng.gen_range(0..4) {
                let tag = EXTRA_TAGS.choose(&mut rng).unwrap().to_string();
                let value = random_text(&mut rng, TEXT_CHARS, 40);
                record.extra_fields.insert(tag, value);
            }
            record
        })
        .collect()
}
