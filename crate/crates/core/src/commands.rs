//! The `score`, `export`, `bench`, `embed` and `auc` commands over a
//! resolved [`RunConfig`]. Primary output goes to `--out` when given and to
//! `out` otherwise.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use crate::aggregate::aggregate;
use crate::config::RunConfig;
use crate::dataset::{export_dataset, ExportCounts, ExportOptions};
use crate::embedding::{embed_cached, embed_graph, export_embedding, inject_candidates, read_embedding_file, EmbeddingMatrix};
use crate::error::{Error, Result};
use crate::eval::{accuracy, auc, run_benchmark, BenchmarkConfig, BenchmarkReport};
use crate::featurize::featurize_set;
use crate::graph::{load_edge_list, load_features, Graph};
use crate::link::score_query_edges;
use crate::motif::{parse_query_spec, MotifQuery, MotifTemplate};
use crate::sampling::{build_sample_set, SampleConfig};

pub fn load_graph(path: &Path, features: Option<&Path>) -> Result<Graph> {
    let (g, stats) = load_edge_list(BufReader::new(File::open(path)?))?;
    log::info!(
        "{}: {} vertices, {} edges ({} self-loops dropped, {} duplicate edges)",
        path.display(),
        g.n(),
        g.m(),
        stats.self_loops_dropped,
        stats.duplicate_edges
    );
    match features {
        Some(f) => {
            let x = load_features(BufReader::new(File::open(f)?), &g)?;
            g.with_features(x)
        }
        None => Ok(g),
    }
}

fn graph_of(config: &RunConfig) -> Result<Graph> {
    let path = config.graph.as_deref().ok_or_else(|| Error::invalid("--graph is required"))?;
    load_graph(path, config.features.as_deref())
}

fn with_output<F>(config: &RunConfig, out: &mut dyn Write, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match &config.out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            let mut file = std::io::BufWriter::new(File::create(path)?);
            f(&mut file)?;
            file.flush()?;
            Ok(())
        }
        None => f(out),
    }
}

/// Splits a query file into blocks, each starting at an `inner` line.
fn query_blocks(text: &str) -> Vec<String> {
    let mut blocks: Vec<String> = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if t.starts_with("inner") || blocks.is_empty() {
            blocks.push(String::new());
        }
        let last = blocks.last_mut().expect("pushed above");
        last.push_str(t);
        last.push('\n');
    }
    blocks
}

/// Queries from a file. Blocks with only an `inner` line are bound to the
/// configured motif; blocks with `motif`/`dealbreaker` lines stand alone.
pub fn read_queries(text: &str, g: &Graph, template: &MotifTemplate) -> Result<Vec<MotifQuery>> {
    let index = g.id_index();
    let mut out = Vec::new();
    for block in query_blocks(text) {
        let explicit = block.lines().any(|l| l.starts_with("motif") || l.starts_with("dealbreaker"));
        if explicit {
            out.push(parse_query_spec(&block, g)?);
            continue;
        }
        let line = block.lines().next().unwrap_or_default();
        let ids = line
            .strip_prefix("inner")
            .ok_or_else(|| Error::invalid(format!("query block must start with `inner`, got {line:?}")))?;
        let inner = ids
            .split_whitespace()
            .map(|id| index.get(id).copied().ok_or_else(|| Error::invalid(format!("unknown vertex id {id:?}"))))
            .collect::<Result<Vec<_>>>()?;
        out.push(template.instantiate(g, &inner)?);
    }
    if out.is_empty() {
        return Err(Error::invalid("query file holds no queries"));
    }
    Ok(out)
}

/// Prints one tab-separated line per (query, scorer, aggregator).
pub fn cmd_score(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let g = graph_of(config)?;
    let template = config.template()?;
    let path = config.queries.as_deref().ok_or_else(|| Error::invalid("--queries is required"))?;
    let queries = read_queries(&std::fs::read_to_string(path)?, &g, &template)?;
    with_output(config, out, |w| {
        writeln!(w, "query\tscorer\taggregator\tscore")?;
        for q in &queries {
            let ids: Vec<&str> = q.inner().iter().map(|&v| g.source_id(v)).collect();
            for &scorer in &config.scorers {
                let s = score_query_edges(&g, q, scorer)?;
                for &agg in &config.aggregators {
                    let value = aggregate(q, &s, agg, &config.weights)?.value;
                    writeln!(w, "{}\t{}\t{}\t{}", ids.join(","), scorer, agg, value)?;
                }
            }
        }
        Ok(())
    })
}

fn embedding_for(config: &RunConfig, g: &Graph) -> Result<Option<EmbeddingMatrix>> {
    if !config.use_embedding {
        return Ok(None);
    }
    if let Some(path) = &config.embedding_file {
        return read_embedding_file(path, g).map(Some);
    }
    embed_cached(g, &config.embedding, config.seed).map(Some)
}

/// Samples, featurizes and writes `<out>.train.jsonl`, `<out>.val.jsonl`
/// and `<out>.meta.json`.
pub fn cmd_export(config: &RunConfig) -> Result<ExportCounts> {
    let g = graph_of(config)?;
    let template = config.template()?;
    let prefix = config.out.as_deref().ok_or_else(|| Error::invalid("--out <prefix> is required"))?;
    let set = build_sample_set(
        &g,
        &template,
        &SampleConfig {
            n_per_class: config.samples,
            mix: config.mix,
            split: config.split,
            seed: config.seed,
        },
    )?;
    let embedding = if config.use_embedding && config.inject_candidates && config.embedding_file.is_none() {
        let augmented = inject_candidates(&g, &template, set.all())?;
        Some(embed_graph(&augmented, &config.embedding, config.seed)?)
    } else {
        embedding_for(config, &g)?
    };
    let values = embedding.as_ref().map(|e| &e.values);
    let featurized = featurize_set(&g, &template, &set, values, &config.feature_options())?;
    export_dataset(
        &featurized,
        &template,
        &ExportOptions {
            graph_name: &config.graph_name,
            h: config.h,
            input_dim: g.features().cols(),
            embedding_dim: values.map_or(0, |v| v.cols()),
            labels: config.labels,
            size_cap: config.size_cap,
        },
        prefix,
    )
}

pub fn benchmark_config(config: &RunConfig) -> Result<BenchmarkConfig> {
    Ok(BenchmarkConfig {
        graph_name: config.graph_name.clone(),
        motifs: config.templates()?,
        scorers: config.scorers.clone(),
        aggregators: config.aggregators.clone(),
        weights: config.weights.clone(),
        n_per_class: config.samples,
        mix: config.mix,
        split: config.split,
        h: config.h,
        seed: config.seed,
        trials: config.trials,
        score_on: config.score_on,
        size_cap: config.size_cap,
    })
}

/// Writes the per-trial CSV; with `--out`, also `<out stem>.summary.csv`.
pub fn cmd_bench(config: &RunConfig, out: &mut dyn Write) -> Result<BenchmarkReport> {
    let g = graph_of(config)?;
    let report = run_benchmark(&g, &benchmark_config(config)?)?;
    with_output(config, out, |w| report.write_csv(w))?;
    if let Some(path) = &config.out {
        report.write_summary_csv(File::create(path.with_extension("summary.csv"))?)?;
    }
    Ok(report)
}

pub fn cmd_embed(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let g = graph_of(config)?;
    let e = embed_cached(&g, &config.embedding, config.seed)?;
    with_output(config, out, |w| export_embedding(w, &g, &e.values))
}

/// Reads `score` and `label` columns (by header name) and prints AUC and
/// accuracy at 0.5.
pub fn cmd_auc(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let path = config.input.as_deref().ok_or_else(|| Error::invalid("--input <csv> is required"))?;
    let (scores, labels) = read_scores_csv(File::open(path)?)?;
    writeln!(out, "auc\t{}", auc(&scores, &labels)?)?;
    writeln!(out, "accuracy\t{}", accuracy(&scores, &labels, 0.5)?)?;
    Ok(())
}

pub fn read_scores_csv<R: std::io::Read>(reader: R) -> Result<(Vec<f64>, Vec<bool>)> {
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::invalid(format!("CSV needs a {name:?} column")))
    };
    let (si, li) = (col("score")?, col("label")?);
    let mut scores = Vec::new();
    let mut labels = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let field = |j: usize| rec.get(j).map(str::trim).unwrap_or("");
        let s: f64 = field(si).parse().map_err(|e| Error::Parse {
            line,
            message: format!("score {:?}: {e}", field(si)),
        })?;
        let l = match field(li) {
            "1" | "true" => true,
            "0" | "false" => false,
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("label must be 0 or 1, got {other:?}"),
                })
            }
        };
        scores.push(s);
        labels.push(l);
    }
    Ok((scores, labels))
}
