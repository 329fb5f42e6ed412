//! Run configuration: command-line values over a `key = value` file over
//! defaults.
//!
//! Keys are the long flag names without dashes, e.g. `samples = 2000` or
//! `score-on = full`. Lines starting with `#` are comments.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::aggregate::{Aggregator, WeightMode};
use crate::embedding::EmbeddingParams;
use crate::error::{Error, Result};
use crate::eval::ScoreOn;
use crate::featurize::{FeatureOptions, DEFAULT_SIZE_CAP};
use crate::link::Scorer;
use crate::motif::{MotifKind, MotifTemplate};
use crate::sampling::Mix;

pub const KEYS: &[&str] = &[
    "graph",
    "name",
    "features",
    "motif",
    "k",
    "density",
    "h",
    "scorers",
    "aggregators",
    "weights",
    "samples",
    "mix",
    "split",
    "seed",
    "trials",
    "out",
    "score-on",
    "no-labels",
    "no-embedding",
    "embedding",
    "dim",
    "walks",
    "walk-length",
    "window",
    "inject-candidates",
    "size-cap",
    "threads",
    "queries",
    "input",
];

/// String-valued settings from one source, keyed by flag name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        if !KEYS.contains(&key) {
            return Err(Error::invalid(format!("unknown setting {key:?}")));
        }
        self.values.insert(key.to_string(), value.into());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Parses a config file. Unknown keys and malformed lines are errors.
    pub fn parse_file_text(text: &str) -> Result<Settings> {
        let mut s = Settings::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: i + 1, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key = value, got {line:?}")))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(err(format!("unknown key {key:?}")));
            }
            s.values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Settings> {
        Self::parse_file_text(&std::fs::read_to_string(path)?)
    }
}

/// Layered lookup over command-line and file settings.
struct Layers<'a> {
    flags: &'a Settings,
    file: &'a Settings,
}

impl Layers<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.flags.get(key).or_else(|| self.file.get(key))
    }

    fn parse<T: FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        match self.raw(key) {
            Some(v) => v.parse().map_err(|e| Error::invalid(format!("{key} = {v:?}: {e}"))),
            None => Ok(default),
        }
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.raw(key) {
            None => Ok(false),
            Some("" | "true" | "1" | "yes") => Ok(true),
            Some("false" | "0" | "no") => Ok(false),
            Some(v) => Err(Error::invalid(format!("{key} = {v:?}: expected true or false"))),
        }
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.raw(key).map(PathBuf::from)
    }

    fn list<T: FromStr<Err = Error>>(&self, key: &str, default: &[T]) -> Result<Vec<T>>
    where
        T: Clone,
    {
        match self.raw(key) {
            Some(v) => v.split(',').map(|t| t.trim().parse()).collect(),
            None => Ok(default.to_vec()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub graph: Option<PathBuf>,
    pub graph_name: String,
    pub features: Option<PathBuf>,
    pub motif: MotifKind,
    pub ks: Vec<usize>,
    pub h: usize,
    pub scorers: Vec<Scorer>,
    pub aggregators: Vec<Aggregator>,
    pub weights: WeightMode,
    pub samples: usize,
    pub mix: Mix,
    pub split: f64,
    pub seed: u64,
    pub trials: usize,
    pub out: Option<PathBuf>,
    pub score_on: ScoreOn,
    pub labels: bool,
    pub use_embedding: bool,
    pub embedding_file: Option<PathBuf>,
    pub embedding: EmbeddingParams,
    pub inject_candidates: bool,
    pub size_cap: usize,
    pub threads: Option<usize>,
    pub queries: Option<PathBuf>,
    pub input: Option<PathBuf>,
}

fn parse_weights(spec: &str) -> Result<WeightMode> {
    match spec.strip_prefix("file:") {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            match WeightMode::parse(&text)? {
                WeightMode::Custom(v) => Ok(WeightMode::Custom(v)),
                _ => Err(Error::invalid(format!("weight file {path:?} must list numbers"))),
            }
        }
        None if spec == "all" || spec == "nonexisting" => WeightMode::parse(spec),
        None => Err(Error::invalid(format!(
            "unknown weights {spec:?} (valid: all, nonexisting, file:<path>)"
        ))),
    }
}

impl RunConfig {
    /// Resolves settings with precedence flags > file > defaults and checks
    /// every value before any work starts.
    pub fn resolve(flags: &Settings, file: &Settings) -> Result<RunConfig> {
        let l = Layers { flags, file };
        let graph = l.path("graph");
        let graph_name = match l.raw("name") {
            Some(n) => n.to_string(),
            None => graph
                .as_ref()
                .and_then(|p| p.file_stem())
                .map_or_else(|| "graph".to_string(), |s| s.to_string_lossy().into_owned()),
        };
        let mut motif: MotifKind = l.parse("motif", MotifKind::Clique)?;
        if let MotifKind::Dense { .. } = motif {
            motif = MotifKind::Dense {
                density: l.parse("density", 0.9)?,
            };
        } else if l.raw("density").is_some() {
            return Err(Error::invalid("density only applies to --motif dense"));
        }
        let ks = match l.raw("k") {
            Some(v) => v
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| Error::invalid(format!("k = {t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?,
            None => vec![3],
        };
        for &k in &ks {
            MotifTemplate::new(motif, k)?;
        }
        let defaults = EmbeddingParams::default();
        let embedding = EmbeddingParams {
            walks_per_node: l.parse("walks", defaults.walks_per_node)?,
            walk_length: l.parse("walk-length", defaults.walk_length)?,
            window: l.parse("window", defaults.window)?,
            dim: l.parse("dim", defaults.dim)?,
        };
        let config = RunConfig {
            graph,
            graph_name,
            features: l.path("features"),
            motif,
            ks,
            h: l.parse("h", 1)?,
            scorers: l.list("scorers", &Scorer::ALL)?,
            aggregators: l.list("aggregators", &Aggregator::ALL)?,
            weights: parse_weights(l.raw("weights").unwrap_or("nonexisting"))?,
            samples: l.parse("samples", 2000)?,
            mix: l.parse("mix", Mix::default())?,
            split: l.parse("split", 0.9)?,
            seed: l.parse("seed", 0)?,
            trials: l.parse("trials", 5)?,
            out: l.path("out"),
            score_on: l.parse("score-on", ScoreOn::Masked)?,
            labels: !l.flag("no-labels")?,
            use_embedding: !l.flag("no-embedding")?,
            embedding_file: l.path("embedding"),
            embedding,
            inject_candidates: l.flag("inject-candidates")?,
            size_cap: l.parse("size-cap", DEFAULT_SIZE_CAP)?,
            threads: match l.raw("threads") {
                Some(_) => Some(l.parse("threads", 0usize)?),
                None => None,
            },
            queries: l.path("queries"),
            input: l.path("input"),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if !(1..=crate::featurize::MAX_HOPS).contains(&self.h) {
            return Err(Error::invalid(format!("h must be 1..={}, got {}", crate::featurize::MAX_HOPS, self.h)));
        }
        if self.samples == 0 {
            return Err(Error::invalid("samples must be >= 1"));
        }
        if !(self.split > 0.0 && self.split <= 1.0) {
            return Err(Error::invalid(format!("split must be in (0, 1], got {}", self.split)));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials must be >= 1"));
        }
        if self.threads == Some(0) {
            return Err(Error::invalid("threads must be >= 1"));
        }
        if self.size_cap == 0 {
            return Err(Error::invalid("size-cap must be >= 1"));
        }
        if self.scorers.is_empty() || self.aggregators.is_empty() {
            return Err(Error::invalid("need at least one scorer and aggregator"));
        }
        Ok(())
    }

    pub fn templates(&self) -> Result<Vec<MotifTemplate>> {
        self.ks.iter().map(|&k| MotifTemplate::new(self.motif, k)).collect()
    }

    /// The single template for commands that take one motif.
    pub fn template(&self) -> Result<MotifTemplate> {
        match self.ks.as_slice() {
            [k] => MotifTemplate::new(self.motif, *k),
            _ => Err(Error::invalid("this command takes a single --k")),
        }
    }

    pub fn feature_options(&self) -> FeatureOptions {
        FeatureOptions {
            h: self.h,
            labels: self.labels,
            embedding: self.use_embedding,
            size_cap: self.size_cap,
        }
    }
}
