//! The five subcommands, wired to the library against a resolved workspace.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use chrono::NaiveDate;
use topicheat::wos::{parse_export_file, write_export, write_export_file};
use topicheat::{
    aggregate, quadrants, ratio2_series, series_csv, series_json, table_csv, table_json,
    top_by_frequency, top_by_usage, ArticleRecord, KeywordPipeline, PeriodRange, SeriesError,
    Snapshot, SnapshotStore, Topic, TopicSeries,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RankBy {
    Freq,
    Usage,
}

/// Everything a subcommand needs after flags, config, and environment
/// have been reconciled.
pub struct Workspace {
    pub store: PathBuf,
    /// When non-empty these files are the corpus; otherwise the store
    /// corpus is.
    pub corpus_files: Vec<PathBuf>,
    pub pipeline: KeywordPipeline,
    pub excluded: Vec<PeriodRange>,
    pub format: OutputFormat,
    pub top_k: usize,
}

impl Workspace {
    fn corpus_path(&self) -> PathBuf {
        self.store.join("corpus.txt")
    }

    fn snapshots(&self) -> Result<SnapshotStore> {
        SnapshotStore::open(self.store.join("snapshots"))
            .with_context(|| format!("opening snapshot store under {}", self.store.display()))
    }

    /// The working corpus: the configured export files merged in order,
    /// or the store corpus when none are configured.
    fn load_corpus(&self) -> Result<Vec<ArticleRecord>> {
        if !self.corpus_files.is_empty() {
            let mut merged = BTreeMap::new();
            for file in &self.corpus_files {
                merge_file(&mut merged, file)?;
            }
            return Ok(merged.into_values().collect());
        }
        let path = self.corpus_path();
        if !path.exists() {
            bail!(
                "no corpus at {}; run `ingest` first or list corpus files in the config",
                path.display()
            );
        }
        parse_export_file(&path).with_context(|| format!("parsing {}", path.display()))
    }
}

fn merge_file(merged: &mut BTreeMap<String, ArticleRecord>, file: &Path) -> Result<usize> {
    let records = parse_export_file(file).with_context(|| format!("parsing {}", file.display()))?;
    let mut replaced = 0;
    for record in records {
        if merged.insert(record.accession_id.clone(), record).is_some() {
            replaced += 1;
        }
    }
    Ok(replaced)
}

/// Merges export files into the store corpus (later files win on
/// duplicate accession ids) and snapshots the merged usage counts.
pub fn cmd_ingest(ws: &Workspace, date: NaiveDate, files: &[PathBuf]) -> Result<()> {
    // Seeding with the store corpus makes a replacement of an already
    // stored record count as a duplicate, same as one within the run.
    let mut merged = BTreeMap::new();
    if ws.corpus_path().exists() {
        merge_file(&mut merged, &ws.corpus_path())?;
    }

    let mut incoming = 0;
    let mut duplicates = 0;
    let mut empty_yield = 0;
    for file in files {
        let records =
            parse_export_file(file).with_context(|| format!("parsing {}", file.display()))?;
        incoming += records.len();
        for record in records {
            if ws.pipeline.topics_of(&record).is_err() {
                empty_yield += 1;
            }
            if merged.insert(record.accession_id.clone(), record).is_some() {
                duplicates += 1;
            }
        }
    }

    let records: Vec<ArticleRecord> = merged.into_values().collect();

    let store = ws.snapshots()?;
    let snapshot = Snapshot::from_records(date, &records);
    store
        .add(&snapshot)
        .with_context(|| format!("adding snapshot {date}"))?;
    write_export_file(ws.corpus_path(), &records)
        .with_context(|| format!("writing {}", ws.corpus_path().display()))?;

    println!("ingested {incoming} records, {duplicates} duplicates, {empty_yield} empty-yield");
    println!("snapshot {date}: {} articles", records.len());
    Ok(())
}

/// Prints the top-k ranking as a table in the configured format.
pub fn cmd_topics(ws: &Workspace, by: RankBy) -> Result<()> {
    let records = ws.load_corpus()?;
    let agg = aggregate(&records, &ws.pipeline)?;
    if agg.zero_usage() {
        eprintln!("warning: corpus has zero total usage; ratios are reported as 0");
    }
    let rows = match by {
        RankBy::Freq => top_by_frequency(&agg, ws.top_k),
        RankBy::Usage => top_by_usage(&agg, ws.top_k),
    };
    match ws.format {
        OutputFormat::Csv => print!("{}", table_csv(&rows)),
        OutputFormat::Json => println!("{}", table_json(&rows)),
    }
    Ok(())
}

/// Prints the overlap split of the top-k frequency and usage rankings.
pub fn cmd_quadrant(ws: &Workspace) -> Result<()> {
    let records = ws.load_corpus()?;
    let agg = aggregate(&records, &ws.pipeline)?;
    println!("{}", quadrants(&agg, ws.top_k).to_json());
    Ok(())
}

/// Prints a delta-share series and trend label per requested topic.
/// Topics absent from the corpus are warnings, not errors, unless none
/// remain.
pub fn cmd_trends(ws: &Workspace, raw_topics: &[String], exclude: &[PeriodRange]) -> Result<()> {
    let records = ws.load_corpus()?;
    let snapshots = ws.snapshots()?.load_all()?;
    if snapshots.len() < 2 {
        bail!(
            "need at least 2 snapshots to form a period, store has {}",
            snapshots.len()
        );
    }

    let mut excluded = ws.excluded.clone();
    excluded.extend_from_slice(exclude);

    let mut series: Vec<TopicSeries> = Vec::new();
    for raw in raw_topics {
        let Some(topic) = Topic::canonicalize(raw, ws.pipeline.synonyms()) else {
            eprintln!("warning: {raw:?} normalizes to an empty topic, skipping");
            continue;
        };
        match ratio2_series(&snapshots, &records, &ws.pipeline, &topic, &excluded) {
            Ok(s) => series.push(s),
            Err(SeriesError::UnknownTopic { topic }) => {
                eprintln!("warning: topic {topic:?} not found in the corpus, skipping");
            }
            Err(other) => return Err(other.into()),
        }
    }
    if series.is_empty() {
        bail!("none of the requested topics appear in the corpus");
    }
    match ws.format {
        OutputFormat::Csv => print!("{}", series_csv(&series)),
        OutputFormat::Json => println!("{}", series_json(&series)),
    }
    Ok(())
}

/// Writes the working corpus back out as a field-tagged export.
pub fn cmd_export(ws: &Workspace, out: Option<&Path>) -> Result<()> {
    let records = ws.load_corpus()?;
    let text = write_export(&records).context("serializing corpus")?;
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}
