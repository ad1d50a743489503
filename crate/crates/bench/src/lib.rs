//! Shared inputs for the benchmarks: the published stemmer vocabulary and
//! seeded synthetic corpora large enough to exercise the parallel paths.

use chrono::NaiveDate;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topicheat::{ArticleRecord, Snapshot};

const VOCABULARY: &str = include_str!("../../core/tests/data/voc.txt");

const KEYWORD_POOL: &[&str] = &[
    "fMRI",
    "functional MRI",
    "EEG",
    "event-related potentials",
    "working memory",
    "attention",
    "prefrontal cortex",
    "hippocampus",
    "dopamine",
    "reward",
    "neural network",
    "synaptic plasticity",
    "visual cortex",
    "perception",
    "emotion",
    "amygdala",
    "schizophrenia",
    "aging",
    "brain-computer interface",
    "motor imagery",
    "functional connectivity",
    "resting state",
    "cognitive control",
    "place cells",
    "spatial navigation",
    "gamma oscillations",
    "deep brain stimulation",
    "white matter",
    "prediction error",
    "computational model",
];

/// The stemmer conformance vocabulary, one word per line.
pub fn vocabulary() -> Vec<&'static str> {
    VOCABULARY.lines().collect()
}

/// A deterministic corpus of `articles` records with 2 to 5 author
/// keywords each and usage counts in a realistic range.
pub fn synthetic_corpus(articles: usize, seed: u64) -> Vec<ArticleRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..articles)
        .map(|i| {
            let mut record = ArticleRecord::new(format!("WOS:{i:012}"));
            let count = rng.gen_range(2..=5);
            record.author_keywords = KEYWORD_POOL
                .choose_multiple(&mut rng, count)
                .map(|k| k.to_string())
                .collect();
            record.title = format!("Synthetic article {i}");
            record.pub_year = Some(rng.gen_range(2010..=2015));
            record.usage_180d = rng.gen_range(0..40);
            record.usage_since_2013 = rng.gen_range(0..400);
            record
        })
        .collect()
}

/// Weekly snapshots of the corpus with usage growing by a random step
/// per article per week.
pub fn synthetic_snapshots(records: &[ArticleRecord], weeks: usize, seed: u64) -> Vec<Snapshot> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let base = NaiveDate::from_ymd_opt(2015, 10, 19).expect("valid date");
    let mut current: Vec<(String, u64)> = records
        .iter()
        .map(|r| (r.accession_id.clone(), r.usage_since_2013))
        .collect();

    (0..weeks)
        .map(|week| {
            let date = base + chrono::Days::new(7 * week as u64);
            if week > 0 {
                for (_, usage) in &mut current {
                    *usage += rng.gen_range(0..12);
                }
            }
            Snapshot {
                date,
                usage: current.iter().cloned().collect(),
            }
        })
        .collect()
}
