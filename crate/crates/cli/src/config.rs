//! Run configuration loaded from a TOML file, overridable by flags.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use topicheat::PeriodRange;

/// Settings for one reproducible run. Every field is optional; flags win
/// over the file, and built-in defaults fill the rest.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Corpus export files used instead of the store corpus when present.
    #[serde(default)]
    pub corpus: Vec<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub synonyms: Option<PathBuf>,
    pub store: Option<PathBuf>,
    /// Ranges in `YYYY-MM-DD..YYYY-MM-DD` form dropped from every series.
    #[serde(default)]
    pub excluded_periods: Vec<String>,
    pub top_k: Option<usize>,
    pub format: Option<String>,
}

impl RunConfig {
    /// Reads and validates a config file. Relative paths inside the file
    /// resolve against the file's own directory, so a config travels with
    /// the data it names.
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut config: RunConfig =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;

        let base = path.parent().unwrap_or_else(|| Path::new("."));
        for entry in &mut config.corpus {
            *entry = rebase(base, entry);
        }
        config.stopwords = config.stopwords.map(|p| rebase(base, &p));
        config.synonyms = config.synonyms.map(|p| rebase(base, &p));
        config.store = config.store.map(|p| rebase(base, &p));

        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if self.top_k == Some(0) {
            bail!("top_k must be at least 1");
        }
        if let Some(format) = &self.format {
            if format != "csv" && format != "json" {
                bail!("format must be \"csv\" or \"json\", got {format:?}");
            }
        }
        for range in &self.excluded_periods {
            range
                .parse::<PeriodRange>()
                .with_context(|| format!("excluded_periods entry {range:?}"))?;
        }
        for path in self
            .corpus
            .iter()
            .chain(&self.stopwords)
            .chain(&self.synonyms)
        {
            if !path.exists() {
                bail!("configured path {} does not exist", path.display());
            }
        }
        Ok(())
    }

    pub fn excluded(&self) -> Vec<PeriodRange> {
        self.excluded_periods
            .iter()
            .map(|r| r.parse().expect("validated at load"))
            .collect()
    }
}

fn rebase(base: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}
