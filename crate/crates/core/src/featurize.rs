//! Enclosing subgraphs and their feature matrices.
//!
//! For a sample with inner vertices `v_1..v_k` the pipeline is:
//!
//! 1. extract the induced subgraph on every vertex within `h` hops of an
//!    inner vertex, inner vertices first in role order;
//! 2. positives lose some of their motif edges (masking) so that the number
//!    of motif edges left follows the negatives' distribution; negatives
//!    lose their existing deal-breaker edges;
//! 3. build `X_s = [X_si | X_E | X_H | X_L]` where `X_H` enumerates the inner
//!    vertices and `X_L` holds each outer vertex's distance to every inner
//!    vertex, measured with all inner-inner edges removed.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::matrix::Matrix;
use crate::motif::{MotifQuery, MotifTemplate};
use crate::sampling::{Label, Sample, SampleSet, Strategy};

pub const DEFAULT_SIZE_CAP: usize = 2000;
pub const MAX_HOPS: usize = 3;

/// Local view of an enclosing subgraph. Local ids `0..k` are the inner
/// vertices in role order; the rest are sorted by (hop distance, global id).
#[derive(Debug, Clone, PartialEq)]
pub struct Subgraph {
    pub graph: Graph,
    /// Local id to global id.
    pub global_ids: Vec<Vertex>,
    /// Hop distance of each local vertex from the inner set in the full graph.
    pub hops: Vec<usize>,
    pub k: usize,
    pub h: usize,
    /// Vertices dropped from the outermost kept ring by the size cap.
    pub dropped: usize,
}

impl Subgraph {
    pub fn s(&self) -> usize {
        self.global_ids.len()
    }

    pub fn inner_local(&self) -> Vec<Vertex> {
        (0..self.k).collect()
    }

    fn with_graph(&self, graph: Graph) -> Subgraph {
        Subgraph { graph, ..self.clone() }
    }
}

fn check_inner(g: &Graph, inner: &[Vertex]) -> Result<()> {
    if inner.is_empty() {
        return Err(Error::invalid("sample has no inner vertices"));
    }
    for (i, &v) in inner.iter().enumerate() {
        g.check(v)?;
        if inner[..i].contains(&v) {
            return Err(Error::invalid(format!("inner vertex {v} repeated")));
        }
    }
    Ok(())
}

fn check_hops(h: usize) -> Result<()> {
    if !(1..=MAX_HOPS).contains(&h) {
        return Err(Error::invalid(format!("h must be in 1..={MAX_HOPS}, got {h}")));
    }
    Ok(())
}

/// Induced subgraph on all vertices within `h` hops of `inner`.
pub fn extract_h_hop(g: &Graph, inner: &[Vertex], h: usize) -> Result<Subgraph> {
    extract_h_hop_capped(g, inner, h, usize::MAX, 0)
}

/// As [`extract_h_hop`], keeping at most `cap` vertices. Rings are kept from
/// the inside out; the first ring that does not fit is down-sampled
/// uniformly (seeded) and everything beyond it is dropped.
pub fn extract_h_hop_capped(g: &Graph, inner: &[Vertex], h: usize, cap: usize, seed: u64) -> Result<Subgraph> {
    check_hops(h)?;
    check_inner(g, inner)?;
    if cap < inner.len() {
        return Err(Error::invalid(format!("size cap {cap} below motif size {}", inner.len())));
    }
    let reached = g.bfs_distances(inner, h)?;
    let mut outer: Vec<(usize, Vertex)> = reached
        .iter()
        .filter(|(_, &d)| d > 0)
        .map(|(&v, &d)| (d, v))
        .collect();
    outer.sort_unstable();
    let mut dropped = 0;
    if inner.len() + outer.len() > cap {
        let room = cap - inner.len();
        let ring = outer[room].0;
        let start = outer.partition_point(|x| x.0 < ring);
        let end = outer.partition_point(|x| x.0 <= ring);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut kept: Vec<(usize, Vertex)> = outer[start..end]
            .choose_multiple(&mut rng, room - start)
            .copied()
            .collect();
        kept.sort_unstable();
        dropped = outer.len() - room;
        outer.truncate(start);
        outer.extend(kept);
    }
    let mut global_ids = inner.to_vec();
    let mut hops = vec![0; inner.len()];
    for (d, v) in outer {
        global_ids.push(v);
        hops.push(d);
    }
    Ok(Subgraph {
        graph: g.induced_subgraph(&global_ids)?,
        global_ids,
        hops,
        k: inner.len(),
        h,
        dropped,
    })
}

/// Distribution of the number of motif edges present in negative samples.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EdgeCountHistogram {
    counts: Vec<u64>,
}

impl EdgeCountHistogram {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    /// Histogram over negatives, counting motif pairs present in `g`.
    pub fn from_negatives<'a>(g: &Graph, template: &MotifTemplate, samples: impl IntoIterator<Item = &'a Sample>) -> Self {
        let mut counts = vec![0u64; template.motif_pairs().len() + 1];
        for s in samples.into_iter().filter(|s| s.label == Label::Negative) {
            let present = template
                .motif_pairs()
                .iter()
                .filter(|&&(a, b)| g.has_edge(s.inner[a], s.inner[b]))
                .count();
            counts[present] += 1;
        }
        Self { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Draws a count strictly below `limit`, proportionally to the
    /// histogram restricted to that range. `None` if that range is empty.
    pub fn draw_below(&self, limit: usize, rng: &mut impl Rng) -> Option<usize> {
        let support = &self.counts[..limit.min(self.counts.len())];
        let total: u64 = support.iter().sum();
        if total == 0 {
            return None;
        }
        let mut pick = rng.gen_range(0..total);
        for (c, &n) in support.iter().enumerate() {
            if pick < n {
                return Some(c);
            }
            pick -= n;
        }
        unreachable!("pick below total")
    }
}

/// Result of preparing a subgraph for its label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preparation {
    /// Positive with some motif edges removed.
    Masked { removed: usize, remaining: usize },
    /// Positive without any motif edge to remove; left unchanged.
    NothingToMask,
    /// Negative with its existing deal-breaker edges removed.
    Stripped { removed: usize },
}

/// Removes motif edges from a positive's subgraph. The number of motif edges
/// left is drawn from `histogram` restricted to counts below the current
/// one, so at least one edge goes; with no mass there, one uniformly chosen
/// motif edge is removed. Only edges among inner vertices are touched.
pub fn mask_positive(sub: &Subgraph, q: &MotifQuery, histogram: &EdgeCountHistogram, seed: u64) -> Result<(Subgraph, Preparation)> {
    check_query(sub, q)?;
    let present: Vec<(Vertex, Vertex)> = q
        .pairs()
        .iter()
        .filter(|p| p.class.is_motif())
        .map(|p| p.roles)
        .filter(|&(a, b)| sub.graph.has_edge(a, b))
        .collect();
    if present.is_empty() {
        return Ok((sub.clone(), Preparation::NothingToMask));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let remaining = histogram.draw_below(present.len(), &mut rng).unwrap_or(present.len() - 1);
    let removed: Vec<(Vertex, Vertex)> = present
        .choose_multiple(&mut rng, present.len() - remaining)
        .copied()
        .collect();
    Ok((
        sub.with_graph(sub.graph.without_edges(&removed)),
        Preparation::Masked {
            removed: removed.len(),
            remaining,
        },
    ))
}

/// Removes the existing deal-breaker edges from a negative's subgraph.
pub fn strip_dealbreakers(sub: &Subgraph, q: &MotifQuery) -> Result<(Subgraph, Preparation)> {
    check_query(sub, q)?;
    let removed: Vec<(Vertex, Vertex)> = q
        .pairs()
        .iter()
        .filter(|p| p.class.is_dealbreaker())
        .map(|p| p.roles)
        .filter(|&(a, b)| sub.graph.has_edge(a, b))
        .collect();
    Ok((
        sub.with_graph(sub.graph.without_edges(&removed)),
        Preparation::Stripped { removed: removed.len() },
    ))
}

fn check_query(sub: &Subgraph, q: &MotifQuery) -> Result<()> {
    if q.k() != sub.k || q.inner() != &sub.global_ids[..sub.k] {
        return Err(Error::invalid("query does not belong to this subgraph"));
    }
    Ok(())
}

/// `s x k` block whose top `k` rows are the identity.
pub fn label_inner(s: usize, k: usize) -> Matrix {
    let mut m = Matrix::zeros(s, k);
    for i in 0..k.min(s) {
        m.set(i, i, 1.0);
    }
    m
}

/// `s x k` block of distances from each outer vertex to each inner vertex
/// after removing all inner-inner edges. Inner rows are zero; unreachable
/// vertices get `2h + 1`.
pub fn label_outer(sub: &Subgraph) -> Matrix {
    let (s, k) = (sub.s(), sub.k);
    let inner_edges: Vec<(Vertex, Vertex)> = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .filter(|&(a, b)| sub.graph.has_edge(a, b))
        .collect();
    let cut = sub.graph.without_edges(&inner_edges);
    let sentinel = (2 * sub.h + 1) as f64;
    let mut m = Matrix::zeros(s, k);
    for j in 0..k {
        let dist = cut.bfs_distances(&[j], s).expect("inner id in range");
        for r in k..s {
            m.set(r, j, dist.get(&r).map_or(sentinel, |&d| d as f64));
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureOptions {
    pub h: usize,
    /// Include `X_H` and `X_L`.
    pub labels: bool,
    /// Include `X_E` when an embedding is supplied.
    pub embedding: bool,
    pub size_cap: usize,
}

impl Default for FeatureOptions {
    fn default() -> Self {
        Self {
            h: 1,
            labels: true,
            embedding: true,
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSubgraph {
    pub subgraph: Subgraph,
    pub label: Label,
    pub strategy: Strategy,
    pub sample_seed: u64,
    pub preparation: Preparation,
    pub x_si: Matrix,
    pub x_e: Matrix,
    pub x_h: Matrix,
    pub x_l: Matrix,
}

impl LabeledSubgraph {
    pub fn k(&self) -> usize {
        self.subgraph.k
    }

    pub fn s(&self) -> usize {
        self.subgraph.s()
    }

    /// `X_s = [X_si | X_E | X_H | X_L]`; disabled blocks have zero columns.
    pub fn features(&self) -> Matrix {
        Matrix::hstack(&[&self.x_si, &self.x_e, &self.x_h, &self.x_l]).expect("blocks share row count")
    }

    pub fn feature_dim(&self) -> usize {
        self.x_si.cols() + self.x_e.cols() + self.x_h.cols() + self.x_l.cols()
    }

    /// The sample's motif query against the prepared local graph.
    pub fn local_query(&self, template: &MotifTemplate) -> Result<MotifQuery> {
        template.instantiate(&self.subgraph.graph, &self.subgraph.inner_local())
    }
}

/// Extracts the sample's subgraph and masks it (positives) or strips its
/// deal-breakers (negatives).
pub fn prepare(
    sample: &Sample,
    g: &Graph,
    template: &MotifTemplate,
    histogram: &EdgeCountHistogram,
    opts: &FeatureOptions,
) -> Result<(Subgraph, Preparation)> {
    let sub = extract_h_hop_capped(g, &sample.inner, opts.h, opts.size_cap, sample.seed)?;
    let q = template.instantiate(g, &sample.inner)?;
    match sample.label {
        Label::Positive => mask_positive(&sub, &q, histogram, sample.seed ^ 0x6d61_736b),
        Label::Negative => strip_dealbreakers(&sub, &q),
    }
}

/// Extract, mask or strip, label and concatenate one sample.
pub fn assemble(
    sample: &Sample,
    g: &Graph,
    template: &MotifTemplate,
    embedding: Option<&Matrix>,
    histogram: &EdgeCountHistogram,
    opts: &FeatureOptions,
) -> Result<LabeledSubgraph> {
    if let Some(e) = embedding {
        if e.rows() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                actual: e.rows(),
            });
        }
    }
    let seed = sample.seed;
    let (sub, preparation) = prepare(sample, g, template, histogram, opts)?;
    let s = sub.s();
    let k = sub.k;
    let x_si = g.features().select_rows(&sub.global_ids);
    let x_e = match embedding {
        Some(e) if opts.embedding => e.select_rows(&sub.global_ids),
        _ => Matrix::zeros(s, 0),
    };
    let (x_h, x_l) = if opts.labels {
        (label_inner(s, k), label_outer(&sub))
    } else {
        (Matrix::zeros(s, 0), Matrix::zeros(s, 0))
    };
    Ok(LabeledSubgraph {
        subgraph: sub,
        label: sample.label,
        strategy: sample.strategy,
        sample_seed: seed,
        preparation,
        x_si,
        x_e,
        x_h,
        x_l,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeaturizedSet {
    pub train: Vec<LabeledSubgraph>,
    pub validation: Vec<LabeledSubgraph>,
    pub histogram: EdgeCountHistogram,
}

/// Featurizes every sample in parallel, keeping the set's order. The
/// masking histogram is taken over all negatives of the set.
pub fn featurize_set(
    g: &Graph,
    template: &MotifTemplate,
    set: &SampleSet,
    embedding: Option<&Matrix>,
    opts: &FeatureOptions,
) -> Result<FeaturizedSet> {
    let histogram = EdgeCountHistogram::from_negatives(g, template, set.all());
    let run = |samples: &[Sample]| -> Result<Vec<LabeledSubgraph>> {
        samples
            .par_iter()
            .map(|s| assemble(s, g, template, embedding, &histogram, opts))
            .collect()
    };
    Ok(FeaturizedSet {
        train: run(&set.train)?,
        validation: run(&set.validation)?,
        histogram,
    })
}
