//! `topicheat`: ingest field-tagged exports, rank topics by frequency and
//! usage, and track week-over-week usage trends.

mod commands;
mod config;

use std::num::NonZeroUsize;
use std::path::PathBuf;

use anyhow::{Context, Result};
use chrono::NaiveDate;
use clap::{Parser, Subcommand};
use topicheat::{KeywordPipeline, PeriodRange, StopwordList, SynonymTable};

use commands::{OutputFormat, RankBy, Workspace};
use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "topicheat",
    version,
    about = "Topic rankings and usage trends from bibliographic exports"
)]
struct Cli {
    /// Config file; flags override its settings.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Store directory. Falls back to the config, then the
    /// TOPICHEAT_STORE environment variable, then ./store.
    #[arg(long, global = true, value_name = "DIR")]
    store: Option<PathBuf>,

    /// Output format for tables and series (default csv).
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Merge export files into the store and snapshot their usage counts.
    Ingest {
        /// Date to file the usage snapshot under.
        #[arg(long)]
        date: NaiveDate,
        /// Field-tagged export files, later files winning on duplicates.
        #[arg(required = true, value_name = "FILE")]
        files: Vec<PathBuf>,
    },
    /// Print the top topics ranked by frequency or usage.
    Topics {
        /// Ranking axis.
        #[arg(long, value_enum, default_value_t = RankBy::Freq)]
        by: RankBy,
        /// How many rows (default from config, then 20).
        #[arg(long, value_name = "K")]
        top: Option<NonZeroUsize>,
    },
    /// Show how the top-k frequency and usage rankings overlap, as JSON.
    Quadrant {
        /// Ranking depth (default from config, then 20).
        #[arg(long, value_name = "K")]
        top: Option<NonZeroUsize>,
    },
    /// Print usage-share series and a trend label for the given topics.
    Trends {
        /// Drop periods inside this range (repeatable, adds to config).
        #[arg(long, value_name = "START..END")]
        exclude: Vec<PeriodRange>,
        /// Topics, normalized the same way as corpus keywords.
        #[arg(required = true, value_name = "TOPIC")]
        topics: Vec<String>,
    },
    /// Write the working corpus back out as a field-tagged export.
    Export {
        /// Destination file; stdout when absent.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn main() {
    if let Err(err) = run() {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let ws = assemble(&cli, &config)?;
    match &cli.command {
        Command::Ingest { date, files } => commands::cmd_ingest(&ws, *date, files),
        Command::Topics { by, .. } => commands::cmd_topics(&ws, *by),
        Command::Quadrant { .. } => commands::cmd_quadrant(&ws),
        Command::Trends { exclude, topics } => commands::cmd_trends(&ws, topics, exclude),
        Command::Export { out } => commands::cmd_export(&ws, out.as_deref()),
    }
}

fn assemble(cli: &Cli, config: &RunConfig) -> Result<Workspace> {
    let stopwords = match &config.stopwords {
        Some(path) => StopwordList::load(path)
            .with_context(|| format!("loading stopwords {}", path.display()))?,
        None => StopwordList::default_english(),
    };
    let synonyms = match &config.synonyms {
        Some(path) => SynonymTable::load(path)
            .with_context(|| format!("loading synonyms {}", path.display()))?,
        None => SynonymTable::default_table(),
    };

    let store = cli
        .store
        .clone()
        .or_else(|| config.store.clone())
        .or_else(|| std::env::var_os("TOPICHEAT_STORE").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("store"));

    let format = cli.format.unwrap_or(match config.format.as_deref() {
        Some("json") => OutputFormat::Json,
        _ => OutputFormat::Csv,
    });

    let flag_top = match cli.command {
        Command::Topics { top, .. } | Command::Quadrant { top } => top,
        _ => None,
    };
    let top_k = flag_top
        .map(NonZeroUsize::get)
        .or(config.top_k)
        .unwrap_or(20);

    Ok(Workspace {
        store,
        corpus_files: config.corpus.clone(),
        pipeline: KeywordPipeline::new(stopwords, synonyms),
        excluded: config.excluded(),
        format,
        top_k,
    })
}
