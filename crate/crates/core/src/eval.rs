//! AUC and accuracy, and the heuristic benchmark runner.
//!
//! A benchmark cell is one (motif, scorer, aggregator) combination. For
//! every trial the runner builds a sample set, prepares each validation
//! sample's subgraph exactly as it would be exported (masked positives,
//! stripped negatives), scores the motif query on it and reports AUC and
//! accuracy.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::aggregate::{aggregate, Aggregator, WeightMode};
use crate::error::{Error, Result};
use crate::featurize::{prepare, EdgeCountHistogram, FeatureOptions, DEFAULT_SIZE_CAP};
use crate::graph::Graph;
use crate::link::{score_query_edges, Scorer};
use crate::motif::{MotifQuery, MotifTemplate};
use crate::sampling::{build_sample_set, Mix, SampleConfig};

fn check_inputs(scores: &[f64], labels: &[bool]) -> Result<()> {
    if scores.len() != labels.len() {
        return Err(Error::LengthMismatch {
            expected: labels.len(),
            actual: scores.len(),
        });
    }
    if let Some(bad) = scores.iter().find(|x| x.is_nan()) {
        return Err(Error::invalid(format!("score {bad} is not comparable")));
    }
    Ok(())
}

/// Probability that a random positive outscores a random negative, ties
/// counting one half (Mann-Whitney U over P * N).
pub fn auc(scores: &[f64], labels: &[bool]) -> Result<f64> {
    check_inputs(scores, labels)?;
    let pos = labels.iter().filter(|&&l| l).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::invalid("AUC needs both positive and negative labels"));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    // Sum of positive ranks, ties sharing their average rank. Ranks are
    // doubled to stay integral.
    let mut rank_sum2: u128 = 0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        let doubled_avg_rank = (i + 1 + j + 1) as u128;
        let positives = order[i..=j].iter().filter(|&&x| labels[x]).count() as u128;
        rank_sum2 += doubled_avg_rank * positives;
        i = j + 1;
    }
    let (p, n) = (pos as u128, neg as u128);
    let u2 = rank_sum2 - p * (p + 1);
    Ok(u2 as f64 / (2 * p * n) as f64)
}

/// Fraction of samples where `score >= threshold` agrees with the label.
pub fn accuracy(scores: &[f64], labels: &[bool], threshold: f64) -> Result<f64> {
    check_inputs(scores, labels)?;
    if scores.is_empty() {
        return Err(Error::EmptyInput);
    }
    let correct = scores
        .iter()
        .zip(labels)
        .filter(|(&s, &l)| (s >= threshold) == l)
        .count();
    Ok(correct as f64 / scores.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreOn {
    /// The prepared (masked or stripped) enclosing subgraph.
    Masked,
    /// The original graph.
    Full,
}

impl std::str::FromStr for ScoreOn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "masked" => Ok(ScoreOn::Masked),
            "full" => Ok(ScoreOn::Full),
            other => Err(Error::invalid(format!("unknown score target {other:?} (valid: masked, full)"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchmarkConfig {
    pub graph_name: String,
    pub motifs: Vec<MotifTemplate>,
    pub scorers: Vec<Scorer>,
    pub aggregators: Vec<Aggregator>,
    pub weights: WeightMode,
    pub n_per_class: usize,
    pub mix: Mix,
    pub split: f64,
    pub h: usize,
    pub seed: u64,
    pub trials: usize,
    pub score_on: ScoreOn,
    pub size_cap: usize,
}

impl BenchmarkConfig {
    pub fn new(graph_name: impl Into<String>, motifs: Vec<MotifTemplate>) -> Self {
        Self {
            graph_name: graph_name.into(),
            motifs,
            scorers: Scorer::ALL.to_vec(),
            aggregators: Aggregator::ALL.to_vec(),
            weights: WeightMode::UniformNonExisting,
            n_per_class: 2000,
            mix: Mix::default(),
            split: 0.9,
            h: 1,
            seed: 0,
            trials: 5,
            score_on: ScoreOn::Masked,
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub graph: String,
    pub motif: String,
    pub k: usize,
    pub scorer: String,
    pub aggregator: String,
    pub trial: usize,
    /// `None` when the cell could not be built (too few positives).
    pub auc: Option<f64>,
    pub accuracy: Option<f64>,
    pub n_train: usize,
    pub n_val: usize,
    pub h: usize,
    pub seed: u64,
}

impl BenchRow {
    pub fn available(&self) -> bool {
        self.auc.is_some()
    }
}

/// Chi-square test of homogeneity between the motif-edge count
/// distributions of prepared positives and negatives.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
}

pub fn chi_square(a: &[u64], b: &[u64]) -> ChiSquare {
    let bins = a.len().max(b.len());
    let at = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0) as f64;
    let (ta, tb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    let total = ta + tb;
    let mut statistic = 0.0;
    let mut used = 0usize;
    for i in 0..bins {
        let col = at(a, i) + at(b, i);
        if col == 0.0 {
            continue;
        }
        used += 1;
        for (obs, t) in [(at(a, i), ta), (at(b, i), tb)] {
            let expected = col * t / total;
            if expected > 0.0 {
                statistic += (obs - expected).powi(2) / expected;
            }
        }
    }
    let df = used.saturating_sub(1);
    let p_value = if df == 0 || ta == 0.0 || tb == 0.0 {
        1.0
    } else {
        1.0 - ChiSquared::new(df as f64).expect("df > 0").cdf(statistic)
    };
    ChiSquare { statistic, df, p_value }
}

/// Per (motif, trial) diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialDiagnostics {
    pub motif: String,
    pub k: usize,
    pub trial: usize,
    pub positive_edge_counts: Vec<u64>,
    pub negative_edge_counts: Vec<u64>,
    pub chi_square: ChiSquare,
    /// Samples violating `mul <= min <= avg`, per scorer (deal-breaker-free
    /// motifs only).
    pub ordering_violations: usize,
    pub capped_subgraphs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub graph: String,
    pub motif: String,
    pub k: usize,
    pub scorer: String,
    pub aggregator: String,
    pub trials: usize,
    pub available_trials: usize,
    pub auc_mean: Option<f64>,
    pub auc_std: Option<f64>,
    pub accuracy_mean: Option<f64>,
    pub accuracy_std: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkReport {
    pub rows: Vec<BenchRow>,
    pub diagnostics: Vec<TrialDiagnostics>,
}

/// Mean and sample standard deviation (0 for a single value).
pub fn mean_std(values: &[f64]) -> Option<(f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() == 1 {
        return Some((mean, 0.0));
    }
    let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Some((mean, var.sqrt()))
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "unavailable".to_string(), |v| v.to_string())
}

impl BenchmarkReport {
    pub fn summary(&self) -> Vec<SummaryRow> {
        let mut out: Vec<SummaryRow> = Vec::new();
        let mut groups: Vec<(&BenchRow, Vec<&BenchRow>)> = Vec::new();
        for r in &self.rows {
            match groups.iter_mut().find(|(head, _)| {
                head.motif == r.motif && head.k == r.k && head.scorer == r.scorer && head.aggregator == r.aggregator
            }) {
                Some((_, members)) => members.push(r),
                None => groups.push((r, vec![r])),
            }
        }
        for (head, members) in groups {
            let aucs: Vec<f64> = members.iter().filter_map(|r| r.auc).collect();
            let accs: Vec<f64> = members.iter().filter_map(|r| r.accuracy).collect();
            let a = mean_std(&aucs);
            let c = mean_std(&accs);
            out.push(SummaryRow {
                graph: head.graph.clone(),
                motif: head.motif.clone(),
                k: head.k,
                scorer: head.scorer.clone(),
                aggregator: head.aggregator.clone(),
                trials: members.len(),
                available_trials: aucs.len(),
                auc_mean: a.map(|x| x.0),
                auc_std: a.map(|x| x.1),
                accuracy_mean: c.map(|x| x.0),
                accuracy_std: c.map(|x| x.1),
            });
        }
        out
    }

    /// Summary entry for one cell.
    pub fn cell(&self, motif_tag: &str, k: usize, scorer: Scorer, aggregator: Aggregator) -> Option<SummaryRow> {
        self.summary()
            .into_iter()
            .find(|s| s.motif == motif_tag && s.k == k && s.scorer == scorer.name() && s.aggregator == aggregator.name())
    }

    /// Per-trial rows as CSV with a header line.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["graph", "motif", "k", "scorer", "aggregator", "trial", "auc", "accuracy", "n_train", "n_val", "h", "seed"])?;
        for r in &self.rows {
            w.write_record([
                r.graph.clone(),
                r.motif.clone(),
                r.k.to_string(),
                r.scorer.clone(),
                r.aggregator.clone(),
                r.trial.to_string(),
                fmt_opt(r.auc),
                fmt_opt(r.accuracy),
                r.n_train.to_string(),
                r.n_val.to_string(),
                r.h.to_string(),
                r.seed.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_summary_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record([
            "graph", "motif", "k", "scorer", "aggregator", "trials", "available_trials", "auc_mean", "auc_std", "accuracy_mean", "accuracy_std",
        ])?;
        for s in self.summary() {
            w.write_record([
                s.graph,
                s.motif,
                s.k.to_string(),
                s.scorer,
                s.aggregator,
                s.trials.to_string(),
                s.available_trials.to_string(),
                fmt_opt(s.auc_mean),
                fmt_opt(s.auc_std),
                fmt_opt(s.accuracy_mean),
                fmt_opt(s.accuracy_std),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_diagnostics<W: Write>(&self, mut w: W) -> Result<()> {
        for d in &self.diagnostics {
            writeln!(
                w,
                "{}-{} trial {}: motif-edge counts positives {:?} negatives {:?}; chi2 = {:.3} (df {}, p = {:.3}); ordering violations {}; capped subgraphs {}",
                d.k,
                d.motif,
                d.trial,
                d.positive_edge_counts,
                d.negative_edge_counts,
                d.chi_square.statistic,
                d.chi_square.df,
                d.chi_square.p_value,
                d.ordering_violations,
                d.capped_subgraphs
            )?;
        }
        Ok(())
    }
}

struct ScoredSample {
    label: bool,
    /// Indexed by [scorer][aggregator].
    scores: Vec<Vec<f64>>,
    motif_edges: usize,
    violations: usize,
    capped: bool,
}

fn unavailable_rows(config: &BenchmarkConfig, template: &MotifTemplate, trial: usize, seed: u64) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for s in &config.scorers {
        for a in &config.aggregators {
            rows.push(BenchRow {
                graph: config.graph_name.clone(),
                motif: template.kind().tag().to_string(),
                k: template.k(),
                scorer: s.name().to_string(),
                aggregator: a.name().to_string(),
                trial,
                auc: None,
                accuracy: None,
                n_train: 0,
                n_val: 0,
                h: config.h,
                seed,
            });
        }
    }
    rows
}

fn run_trial(g: &Graph, config: &BenchmarkConfig, template: &MotifTemplate, trial: usize) -> Result<(Vec<BenchRow>, Option<TrialDiagnostics>)> {
    let seed = config.seed + trial as u64;
    let sample_config = SampleConfig {
        n_per_class: config.n_per_class,
        mix: config.mix,
        split: config.split,
        seed,
    };
    let set = match build_sample_set(g, template, &sample_config) {
        Ok(set) => set,
        Err(Error::InsufficientPositives { requested, achieved }) => {
            log::warn!(
                "{}-{} on {}: {achieved} of {requested} positives, cell unavailable",
                template.k(),
                template.kind(),
                config.graph_name
            );
            return Ok((unavailable_rows(config, template, trial, seed), None));
        }
        Err(e) => return Err(e),
    };
    let histogram = EdgeCountHistogram::from_negatives(g, template, set.all());
    let opts = FeatureOptions {
        h: config.h,
        labels: false,
        embedding: false,
        size_cap: config.size_cap,
    };
    let check_ordering = template.dealbreaker_pairs().is_empty();
    let scored: Vec<ScoredSample> = set
        .validation
        .par_iter()
        .map(|sample| -> Result<ScoredSample> {
            let (sub, _) = prepare(sample, g, template, &histogram, &opts)?;
            let local = template.instantiate(&sub.graph, &sub.inner_local())?;
            let (graph, query): (&Graph, MotifQuery) = match config.score_on {
                ScoreOn::Masked => (&sub.graph, local.clone()),
                ScoreOn::Full => (g, template.instantiate(g, &sample.inner)?),
            };
            let mut scores = Vec::with_capacity(config.scorers.len());
            let mut violations = 0;
            for &scorer in &config.scorers {
                let s = score_query_edges(graph, &query, scorer)?;
                let row = config
                    .aggregators
                    .iter()
                    .map(|&a| aggregate(&query, &s, a, &config.weights).map(|m| m.value))
                    .collect::<Result<Vec<_>>>()?;
                if check_ordering {
                    let mul = aggregate(&query, &s, Aggregator::Mul, &config.weights)?.value;
                    let min = aggregate(&query, &s, Aggregator::Min, &config.weights)?.value;
                    let avg = aggregate(&query, &s, Aggregator::Avg, &config.weights)?.value;
                    if mul > min + 1e-12 || min > avg + 1e-12 {
                        violations += 1;
                    }
                }
                scores.push(row);
            }
            Ok(ScoredSample {
                label: sample.label.is_positive(),
                scores,
                motif_edges: local.motif_pair_count() - local.of_class(crate::motif::EdgeClass::MotifNonExisting).count(),
                violations,
                capped: sub.dropped > 0,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let labels: Vec<bool> = scored.iter().map(|s| s.label).collect();
    let mut rows = Vec::new();
    for (si, scorer) in config.scorers.iter().enumerate() {
        for (ai, agg) in config.aggregators.iter().enumerate() {
            let values: Vec<f64> = scored.iter().map(|s| s.scores[si][ai]).collect();
            rows.push(BenchRow {
                graph: config.graph_name.clone(),
                motif: template.kind().tag().to_string(),
                k: template.k(),
                scorer: scorer.name().to_string(),
                aggregator: agg.name().to_string(),
                trial,
                auc: Some(auc(&values, &labels)?),
                accuracy: Some(accuracy(&values, &labels, 0.5)?),
                n_train: set.train.len(),
                n_val: set.validation.len(),
                h: config.h,
                seed,
            });
        }
    }
    let bins = template.motif_pairs().len() + 1;
    let mut pos_counts = vec![0u64; bins];
    let mut neg_counts = vec![0u64; bins];
    for s in &scored {
        if s.label {
            pos_counts[s.motif_edges] += 1;
        } else {
            neg_counts[s.motif_edges] += 1;
        }
    }
    let diag = TrialDiagnostics {
        motif: template.kind().tag().to_string(),
        k: template.k(),
        trial,
        chi_square: chi_square(&pos_counts, &neg_counts),
        positive_edge_counts: pos_counts,
        negative_edge_counts: neg_counts,
        ordering_violations: scored.iter().map(|s| s.violations).sum(),
        capped_subgraphs: scored.iter().filter(|s| s.capped).count(),
    };
    Ok((rows, Some(diag)))
}

/// Runs every (motif, trial) job; rows come out ordered by motif, trial,
/// scorer and aggregator regardless of scheduling.
pub fn run_benchmark(g: &Graph, config: &BenchmarkConfig) -> Result<BenchmarkReport> {
    if config.trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    if config.motifs.is_empty() || config.scorers.is_empty() || config.aggregators.is_empty() {
        return Err(Error::invalid("benchmark needs at least one motif, scorer and aggregator"));
    }
    let jobs: Vec<(&MotifTemplate, usize)> = config
        .motifs
        .iter()
        .flat_map(|t| (0..config.trials).map(move |trial| (t, trial)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(t, trial)| run_trial(g, config, t, trial))
        .collect::<Result<Vec<_>>>()?;
    let mut report = BenchmarkReport {
        rows: Vec::new(),
        diagnostics: Vec::new(),
    };
    for (rows, diag) in results {
        report.rows.extend(rows);
        report.diagnostics.extend(diag);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn auc_examples() {
        assert_eq!(auc(&[0.9, 0.1], &[true, false]).unwrap(), 1.0);
        assert_eq!(auc(&[0.1, 0.9], &[true, false]).unwrap(), 0.0);
        assert_eq!(auc(&[0.4; 6], &[true, false, true, false, false, true]).unwrap(), 0.5);
        assert!(auc(&[0.1, 0.2], &[true, true]).is_err());
        assert!(auc(&[0.1], &[true, false]).is_err());
    }

    #[test]
    fn auc_with_partial_ties() {
        // positives 0.5, 0.8; negatives 0.5, 0.2: pairs (0.5,0.5) tie, rest wins
        let v = auc(&[0.5, 0.8, 0.5, 0.2], &[true, true, false, false]).unwrap();
        assert_eq!(v, 3.5 / 4.0);
    }

    #[test]
    fn accuracy_examples() {
        let labels = [true, false, true, false];
        assert_eq!(accuracy(&[0.9, 0.1, 0.7, 0.3], &labels, 0.5).unwrap(), 1.0);
        assert_eq!(accuracy(&[0.1, 0.9, 0.3, 0.7], &labels, 0.5).unwrap(), 0.0);
        assert_eq!(accuracy(&[0.5, 0.5, 0.5, 0.5], &labels, 0.5).unwrap(), 0.5);
    }

    #[test]
    fn chi_square_of_identical_distributions() {
        let c = chi_square(&[10, 20, 30], &[10, 20, 30]);
        assert_eq!(c.statistic, 0.0);
        assert_eq!(c.df, 2);
        assert!((c.p_value - 1.0).abs() < 1e-12);
        let d = chi_square(&[100, 0], &[0, 100]);
        assert!(d.p_value < 1e-10);
    }

    #[test]
    fn mean_and_std() {
        let (m, s) = mean_std(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!((m, s), (2.0, 1.0));
        assert_eq!(mean_std(&[4.0]).unwrap(), (4.0, 0.0));
        assert!(mean_std(&[]).is_none());
    }

    #[test]
    fn unavailable_cells_on_sparse_graph() {
        let g = generators::random_tree(60, 1);
        let mut config = BenchmarkConfig::new("tree", vec![MotifTemplate::clique(3).unwrap()]);
        config.n_per_class = 20;
        config.trials = 2;
        let report = run_benchmark(&g, &config).unwrap();
        assert_eq!(report.rows.len(), 2 * 9);
        assert!(report.rows.iter().all(|r| !r.available()));
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains("unavailable,unavailable"));
    }

    #[test]
    fn planted_cliques_are_easy() {
        // 3-cliques inside planted 6-cliques keep common neighbors after
        // masking; random triples in the sparse background have none
        let (g, _) = generators::planted_cliques(300, 0.01, 6, 20, 4);
        let mut config = BenchmarkConfig::new("planted", vec![MotifTemplate::clique(3).unwrap()]);
        config.mix = Mix::new(0.0, 1.0, 0.0).unwrap();
        config.n_per_class = 40;
        config.trials = 1;
        config.scorers = vec![Scorer::Jaccard];
        let report = run_benchmark(&g, &config).unwrap();
        let cell = report.cell("k_clique", 3, Scorer::Jaccard, Aggregator::Avg).unwrap();
        assert!(cell.auc_mean.unwrap() > 0.95, "{cell:?}");
        assert_eq!(report.diagnostics[0].ordering_violations, 0);
    }
}
