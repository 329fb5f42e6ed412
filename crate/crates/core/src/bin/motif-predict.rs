use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use motif_predict::commands;
use motif_predict::config::{RunConfig, Settings};

#[derive(Parser)]
#[command(name = "motif-predict", version, about = "Motif prediction heuristics, dataset export and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score explicit motif queries
    Score(Opts),
    /// Sample, featurize and write a JSON Lines dataset
    Export(Opts),
    /// Benchmark heuristic scorers by AUC
    Bench(Opts),
    /// Compute a node embedding
    Embed(Opts),
    /// AUC and accuracy of a CSV with `score` and `label` columns
    Auc(Opts),
}

#[derive(Args)]
struct Opts {
    /// Flat key = value file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// Edge list
    #[arg(long)]
    graph: Option<String>,
    /// Graph name used in outputs (default: file stem)
    #[arg(long)]
    name: Option<String>,
    /// Vertex feature file
    #[arg(long)]
    features: Option<String>,
    /// clique | star | db-star | dense
    #[arg(long)]
    motif: Option<String>,
    /// Motif size; a comma list for bench
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    density: Option<String>,
    #[arg(long)]
    h: Option<String>,
    /// Comma list of jaccard, cn, aa
    #[arg(long)]
    scorers: Option<String>,
    /// Comma list of mul, avg, min
    #[arg(long)]
    aggregators: Option<String>,
    /// all | nonexisting | file:<path>
    #[arg(long)]
    weights: Option<String>,
    /// Samples per class
    #[arg(long)]
    samples: Option<String>,
    /// Negative mix perturb,random,grow
    #[arg(long)]
    mix: Option<String>,
    #[arg(long)]
    split: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    /// Output file (export: path prefix)
    #[arg(long)]
    out: Option<String>,
    /// masked | full
    #[arg(long = "score-on")]
    score_on: Option<String>,
    #[arg(long = "no-labels")]
    no_labels: bool,
    #[arg(long = "no-embedding")]
    no_embedding: bool,
    /// Import an embedding file instead of computing one
    #[arg(long)]
    embedding: Option<String>,
    #[arg(long)]
    dim: Option<String>,
    #[arg(long)]
    walks: Option<String>,
    #[arg(long = "walk-length")]
    walk_length: Option<String>,
    #[arg(long)]
    window: Option<String>,
    /// Add candidate motif pairs to the graph before embedding
    #[arg(long = "inject-candidates")]
    inject_candidates: bool,
    #[arg(long = "size-cap")]
    size_cap: Option<String>,
    #[arg(long)]
    threads: Option<String>,
    /// Query file for score
    #[arg(long)]
    queries: Option<String>,
    /// Score CSV for auc
    #[arg(long)]
    input: Option<String>,
}

impl Opts {
    fn settings(&self) -> motif_predict::Result<Settings> {
        let mut s = Settings::new();
        let values = [
            ("graph", &self.graph),
            ("name", &self.name),
            ("features", &self.features),
            ("motif", &self.motif),
            ("k", &self.k),
            ("density", &self.density),
            ("h", &self.h),
            ("scorers", &self.scorers),
            ("aggregators", &self.aggregators),
            ("weights", &self.weights),
            ("samples", &self.samples),
            ("mix", &self.mix),
            ("split", &self.split),
            ("seed", &self.seed),
            ("trials", &self.trials),
            ("out", &self.out),
            ("score-on", &self.score_on),
            ("embedding", &self.embedding),
            ("dim", &self.dim),
            ("walks", &self.walks),
            ("walk-length", &self.walk_length),
            ("window", &self.window),
            ("size-cap", &self.size_cap),
            ("threads", &self.threads),
            ("queries", &self.queries),
            ("input", &self.input),
        ];
        for (key, value) in values {
            if let Some(v) = value {
                s.set(key, v.as_str())?;
            }
        }
        for (key, on) in [
            ("no-labels", self.no_labels),
            ("no-embedding", self.no_embedding),
            ("inject-candidates", self.inject_candidates),
        ] {
            if on {
                s.set(key, "true")?;
            }
        }
        Ok(s)
    }

    fn resolve(&self) -> motif_predict::Result<RunConfig> {
        let file = match &self.config {
            Some(p) => Settings::load(p)?,
            None => Settings::new(),
        };
        RunConfig::resolve(&self.settings()?, &file)
    }
}

fn run(cli: Cli) -> motif_predict::Result<()> {
    let (Command::Score(opts) | Command::Export(opts) | Command::Bench(opts) | Command::Embed(opts) | Command::Auc(opts)) = &cli.command;
    let config = opts.resolve()?;
    if let Some(n) = config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| motif_predict::Error::InvalidArgument(e.to_string()))?;
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Score(_) => commands::cmd_score(&config, &mut out),
        Command::Export(_) => {
            let counts = commands::cmd_export(&config)?;
            eprintln!("wrote {} train and {} validation records", counts.train, counts.validation);
            Ok(())
        }
        Command::Bench(_) => {
            let report = commands::cmd_bench(&config, &mut out)?;
            report.write_diagnostics(std::io::stderr())
        }
        Command::Embed(_) => commands::cmd_embed(&config, &mut out),
        Command::Auc(_) => commands::cmd_auc(&config, &mut out),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
