//! Positive and negative motif samples.
//!
//! Positives are existing instances of the motif, subsampled uniformly when
//! there are more than requested. Negatives come from three strategies:
//!
//! 1. `perturb`: take a positive and swap one or two of its vertices for
//!    vertices within two hops, yielding near misses;
//! 2. `random`: `k` uniformly random vertices;
//! 3. `grow`: start at a random vertex and repeatedly add a random vertex
//!    from the neighborhood of the current set.
//!
//! Dense motifs use a growth sampler that adds the frontier vertex with the
//! most (near) or fewest (far) edges into the current set.
//!
//! Every sample draws from its own RNG stream keyed by (master seed, stream,
//! index), so batches can be generated in parallel and still reproduce.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::motif::{required_dense_edges, MotifKind, MotifTemplate};

/// Perturbation replaces at most this many vertices.
pub const MAX_REPLACED: usize = 2;
/// Replacement candidates lie within this many hops of the kept vertices.
pub const PERTURB_HOPS: usize = 2;
pub const PERTURB_RETRIES: usize = 50;
const DRAW_RETRIES: usize = 100;
/// Star families up to this many candidate instances are enumerated in full.
const STAR_ENUMERATION_CAP: f64 = 2_000_000.0;
/// Share of dense negatives grown toward the threshold; the rest grow sparse.
pub const DENSE_NEAR_FRACTION: f64 = 0.8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Positive,
    Perturb,
    Random,
    Grow,
    Dense,
}

impl Strategy {
    pub fn tag(self) -> &'static str {
        match self {
            Strategy::Positive => "positive",
            Strategy::Perturb => "perturb",
            Strategy::Random => "random",
            Strategy::Grow => "grow",
            Strategy::Dense => "dense",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    Negative,
    Positive,
}

impl Label {
    pub fn is_positive(self) -> bool {
        self == Label::Positive
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    /// Vertices in role order.
    pub inner: Vec<Vertex>,
    pub label: Label,
    pub strategy: Strategy,
    /// Seed of the RNG stream that produced the sample.
    pub seed: u64,
}

impl Sample {
    /// Sorted vertex set, used to detect duplicates.
    pub fn key(&self) -> Vec<Vertex> {
        let mut k = self.inner.clone();
        k.sort_unstable();
        k
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed for the `index`-th draw of stream `stream` under `master`.
pub fn stream_seed(master: u64, stream: u64, index: u64) -> u64 {
    splitmix(splitmix(splitmix(master) ^ stream) ^ index)
}

pub fn stream_rng(master: u64, stream: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream_seed(master, stream, index))
}

mod streams {
    pub const POSITIVE: u64 = 1;
    pub const PERTURB: u64 = 2;
    pub const RANDOM: u64 = 3;
    pub const GROW: u64 = 4;
    pub const DENSE_POS: u64 = 5;
    pub const DENSE_NEG: u64 = 6;
    pub const SHUFFLE: u64 = 7;
    pub const REFILL: u64 = 100;
}

/// Uniform fixed-size subsample of a stream (Algorithm R).
struct Reservoir {
    limit: usize,
    seen: u64,
    items: Vec<Vec<Vertex>>,
    rng: ChaCha8Rng,
}

impl Reservoir {
    fn new(limit: usize, rng: ChaCha8Rng) -> Self {
        Self {
            limit,
            seen: 0,
            items: Vec::new(),
            rng,
        }
    }

    fn offer(&mut self, item: &[Vertex]) {
        if self.items.len() < self.limit {
            self.items.push(item.to_vec());
        } else if self.limit > 0 {
            let j = self.rng.gen_range(0..=self.seen);
            if (j as usize) < self.limit {
                self.items[j as usize] = item.to_vec();
            }
        }
        self.seen += 1;
    }
}

/// Calls `visit` on every k-clique once, vertices ascending.
pub fn for_each_clique(g: &Graph, k: usize, mut visit: impl FnMut(&[Vertex])) {
    fn extend(g: &Graph, k: usize, clique: &mut Vec<Vertex>, cands: &[Vertex], visit: &mut dyn FnMut(&[Vertex])) {
        if clique.len() == k {
            visit(clique);
            return;
        }
        let need = k - clique.len();
        for (i, &v) in cands.iter().enumerate() {
            if cands.len() - i < need {
                break;
            }
            if g.degree(v) + 1 < k {
                continue;
            }
            let next: Vec<Vertex> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.adj(v).binary_search(&w).is_ok())
                .collect();
            clique.push(v);
            extend(g, k, clique, &next, visit);
            clique.pop();
        }
    }
    if k == 0 {
        return;
    }
    let mut clique = Vec::with_capacity(k);
    for v in 0..g.n() {
        if g.degree(v) + 1 < k {
            continue;
        }
        let higher: Vec<Vertex> = g.adj(v).iter().copied().filter(|&w| w > v).collect();
        clique.push(v);
        extend(g, k, &mut clique, &higher, &mut visit);
        clique.pop();
    }
}

fn binomial(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Calls `visit` on every `r`-combination of `items`, in lexicographic order.
fn for_each_combination(items: &[Vertex], r: usize, visit: &mut dyn FnMut(&[Vertex])) {
    fn rec(items: &[Vertex], r: usize, start: usize, cur: &mut Vec<Vertex>, visit: &mut dyn FnMut(&[Vertex])) {
        if cur.len() == r {
            visit(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < r - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, r, i + 1, cur, visit);
            cur.pop();
        }
    }
    rec(items, r, 0, &mut Vec::with_capacity(r), visit);
}

/// Hub-first star instances (`[hub, arms ascending]`), optionally requiring
/// pairwise non-adjacent arms.
fn star_positives(g: &Graph, k: usize, independent_arms: bool, limit: usize, seed: u64) -> Vec<Vec<Vertex>> {
    let arms = k - 1;
    let weights: Vec<f64> = (0..g.n()).map(|v| binomial(g.degree(v), arms)).collect();
    let total: f64 = weights.iter().sum();
    if total == 0.0 {
        return Vec::new();
    }
    let valid = |inst: &[Vertex]| {
        !independent_arms
            || inst[1..]
                .iter()
                .enumerate()
                .all(|(i, &a)| inst[i + 2..].iter().all(|&b| !g.has_edge(a, b)))
    };
    if total <= STAR_ENUMERATION_CAP {
        let mut res = Reservoir::new(limit, stream_rng(seed, streams::POSITIVE, 0));
        let mut inst = vec![0; k];
        for hub in 0..g.n() {
            if weights[hub] == 0.0 {
                continue;
            }
            inst[0] = hub;
            for_each_combination(g.adj(hub), arms, &mut |combo| {
                inst[1..].copy_from_slice(combo);
                if valid(&inst) {
                    res.offer(&inst);
                }
            });
        }
        return res.items;
    }
    // Too many to enumerate: draw uniform stars and keep the valid ones.
    let mut rng = stream_rng(seed, streams::POSITIVE, 1);
    let hubs = WeightedIndex::new(&weights).expect("positive total weight");
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let attempts = limit.saturating_mul(200).max(10_000);
    for _ in 0..attempts {
        if out.len() >= limit {
            break;
        }
        let hub = hubs.sample(&mut rng);
        let nb = g.adj(hub);
        let mut picked: Vec<Vertex> = rand::seq::index::sample(&mut rng, nb.len(), arms)
            .into_iter()
            .map(|i| nb[i])
            .collect();
        picked.sort_unstable();
        let mut inst = Vec::with_capacity(k);
        inst.push(hub);
        inst.extend(picked);
        if valid(&inst) && seen.insert(inst.clone()) {
            out.push(inst);
        }
    }
    out
}

/// Existing instances of `template` in `g`, at most `limit`, subsampled
/// uniformly at random when there are more.
///
/// Returns [`Error::NoInstances`] when the graph holds none.
pub fn enumerate_positives(g: &Graph, template: &MotifTemplate, limit: usize, seed: u64) -> Result<Vec<Sample>> {
    let k = template.k();
    let instances: Vec<Vec<Vertex>> = match template.kind() {
        MotifKind::Clique => {
            let mut res = Reservoir::new(limit, stream_rng(seed, streams::POSITIVE, 0));
            for_each_clique(g, k, |c| res.offer(c));
            res.items
        }
        MotifKind::Star => star_positives(g, k, false, limit, seed),
        MotifKind::DbStar => star_positives(g, k, true, limit, seed),
        MotifKind::Dense { density } => {
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            let attempts = limit.saturating_mul(20).max(200);
            for i in 0..attempts as u64 {
                if out.len() >= limit {
                    break;
                }
                if let Some(s) = sample_dense(g, k, density, DenseSide::Positive, stream_seed(seed, streams::DENSE_POS, i)) {
                    if seen.insert(s.key()) {
                        out.push(s.inner);
                    }
                }
            }
            out
        }
        MotifKind::Custom => {
            let mut res = Reservoir::new(limit, stream_rng(seed, streams::POSITIVE, 0));
            for_each_custom_instance(g, template, &mut |inst| res.offer(inst));
            res.items
        }
    };
    if instances.is_empty() {
        return Err(Error::NoInstances(format!("{}-{}", k, template.kind())));
    }
    Ok(instances
        .into_iter()
        .enumerate()
        .map(|(i, inner)| Sample {
            inner,
            label: Label::Positive,
            strategy: Strategy::Positive,
            seed: stream_seed(seed, streams::POSITIVE, i as u64),
        })
        .collect())
}

/// Backtracking role assignment for arbitrary templates. Roles with a motif
/// pair to an earlier role draw candidates from that vertex's neighbors.
fn for_each_custom_instance(g: &Graph, t: &MotifTemplate, visit: &mut dyn FnMut(&[Vertex])) {
    fn rec(g: &Graph, t: &MotifTemplate, inst: &mut Vec<Vertex>, visit: &mut dyn FnMut(&[Vertex])) {
        let r = inst.len();
        if r == t.k() {
            visit(inst);
            return;
        }
        let anchor = t
            .motif_pairs()
            .iter()
            .find(|&&(a, b)| b == r && a < r)
            .map(|&(a, _)| inst[a]);
        let cands: Vec<Vertex> = match anchor {
            Some(v) => g.adj(v).to_vec(),
            None => (0..g.n()).collect(),
        };
        for c in cands {
            if inst.contains(&c) {
                continue;
            }
            let ok = (0..r).all(|a| match t.class_of((a, r)) {
                crate::motif::RoleClass::Motif => g.has_edge(inst[a], c),
                crate::motif::RoleClass::DealBreaker => !g.has_edge(inst[a], c),
                crate::motif::RoleClass::Inert => true,
            });
            if ok {
                inst.push(c);
                rec(g, t, inst, visit);
                inst.pop();
            }
        }
    }
    rec(g, t, &mut Vec::with_capacity(t.k()), visit);
}

/// Negative strategy 1: replace one or two vertices of a positive with
/// vertices within two hops. `None` when every retry still formed the motif.
pub fn negative_perturb(g: &Graph, template: &MotifTemplate, positive: &[Vertex], seed: u64) -> Option<Sample> {
    let k = positive.len();
    if k < 2 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PERTURB_RETRIES {
        let replace = rng.gen_range(1..=MAX_REPLACED.min(k - 1));
        let positions = rand::seq::index::sample(&mut rng, k, replace).into_vec();
        let kept: Vec<Vertex> = (0..k).filter(|i| !positions.contains(i)).map(|i| positive[i]).collect();
        let candidates: Vec<Vertex> = g
            .bfs_order(&kept, PERTURB_HOPS)
            .expect("kept vertices are valid")
            .into_iter()
            .map(|(v, _)| v)
            .filter(|v| !positive.contains(v))
            .collect();
        if candidates.len() < replace {
            continue;
        }
        let picks = rand::seq::index::sample(&mut rng, candidates.len(), replace);
        let mut inner = positive.to_vec();
        for (pos, pick) in positions.iter().zip(picks.iter()) {
            inner[*pos] = candidates[pick];
        }
        if !template.matches(g, &inner) {
            return Some(Sample {
                inner,
                label: Label::Negative,
                strategy: Strategy::Perturb,
                seed,
            });
        }
    }
    None
}

/// Negative strategy 2: `k` distinct uniform vertices that do not form the
/// motif.
pub fn negative_random(g: &Graph, template: &MotifTemplate, seed: u64) -> Option<Sample> {
    let k = template.k();
    if g.n() < k {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DRAW_RETRIES {
        let inner = rand::seq::index::sample(&mut rng, g.n(), k).into_vec();
        if !template.matches(g, &inner) {
            return Some(Sample {
                inner,
                label: Label::Negative,
                strategy: Strategy::Random,
                seed,
            });
        }
    }
    None
}

/// Negative strategy 3: grow from a random vertex through the union of the
/// current set's neighborhoods. Role order is growth order.
pub fn negative_grow(g: &Graph, template: &MotifTemplate, seed: u64) -> Option<Sample> {
    let k = template.k();
    if g.n() < k {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DRAW_RETRIES {
        let Some(inner) = grow_connected(g, k, &mut rng) else {
            continue;
        };
        if !template.matches(g, &inner) {
            return Some(Sample {
                inner,
                label: Label::Negative,
                strategy: Strategy::Grow,
                seed,
            });
        }
    }
    None
}

fn grow_connected(g: &Graph, k: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vertex>> {
    let start = rng.gen_range(0..g.n());
    let mut set = vec![start];
    let mut frontier: BTreeSet<Vertex> = g.adj(start).iter().copied().collect();
    while set.len() < k {
        if frontier.is_empty() {
            return None;
        }
        let idx = rng.gen_range(0..frontier.len());
        let v = *frontier.iter().nth(idx).expect("index in range");
        frontier.remove(&v);
        set.push(v);
        for &w in g.adj(v) {
            if !set.contains(&w) {
                frontier.insert(w);
            }
        }
    }
    Some(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DenseSide {
    /// Near growth, retried until the result meets the threshold.
    Positive,
    /// Near (80%) or far (20%) growth, retried until below the threshold.
    Negative,
    /// One greedy-max growth, labeled by its density.
    Near,
    /// One greedy-min growth, labeled by its density.
    Far,
}

/// Grows a vertex set from a random start, each step adding the frontier
/// vertex with the most (`Near`) or fewest (`Far`) edges into the set, ties
/// broken at random. The sample is positive iff its internal density
/// reaches `density`.
pub fn sample_dense(g: &Graph, k: usize, density: f64, side: DenseSide, seed: u64) -> Option<Sample> {
    if k < 2 || g.n() < k || !(density > 0.0 && density <= 1.0) {
        return None;
    }
    let required = required_dense_edges(k, density);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attempts = match side {
        DenseSide::Near | DenseSide::Far => DRAW_RETRIES,
        DenseSide::Positive | DenseSide::Negative => PERTURB_RETRIES,
    };
    for _ in 0..attempts {
        let near = match side {
            DenseSide::Near | DenseSide::Positive => true,
            DenseSide::Far => false,
            DenseSide::Negative => rng.gen::<f64>() < DENSE_NEAR_FRACTION,
        };
        let Some((inner, edges)) = grow_by_density(g, k, near, &mut rng) else {
            continue;
        };
        let label = if edges >= required { Label::Positive } else { Label::Negative };
        let wanted = match side {
            DenseSide::Positive => Some(Label::Positive),
            DenseSide::Negative => Some(Label::Negative),
            DenseSide::Near | DenseSide::Far => None,
        };
        if wanted.is_none_or(|w| w == label) {
            return Some(Sample {
                inner,
                label,
                strategy: if label.is_positive() { Strategy::Positive } else { Strategy::Dense },
                seed,
            });
        }
    }
    None
}

fn grow_by_density(g: &Graph, k: usize, near: bool, rng: &mut ChaCha8Rng) -> Option<(Vec<Vertex>, usize)> {
    let start = rng.gen_range(0..g.n());
    let mut set = vec![start];
    let mut edges = 0;
    let mut frontier: BTreeSet<Vertex> = g.adj(start).iter().copied().collect();
    while set.len() < k {
        if frontier.is_empty() {
            return None;
        }
        let links = |v: Vertex| set.iter().filter(|&&s| g.has_edge(s, v)).count();
        let scored: Vec<(Vertex, usize)> = frontier.iter().map(|&v| (v, links(v))).collect();
        let best = if near {
            scored.iter().map(|x| x.1).max()
        } else {
            scored.iter().map(|x| x.1).min()
        }
        .expect("non-empty frontier");
        let ties: Vec<Vertex> = scored.iter().filter(|x| x.1 == best).map(|x| x.0).collect();
        let v = ties[rng.gen_range(0..ties.len())];
        frontier.remove(&v);
        edges += best;
        set.push(v);
        for &w in g.adj(v) {
            if !set.contains(&w) {
                frontier.insert(w);
            }
        }
    }
    Some((set, edges))
}

/// Fractions of negatives drawn by perturbation, random sets and growth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mix {
    pub perturb: f64,
    pub random: f64,
    pub grow: f64,
}

impl Default for Mix {
    fn default() -> Self {
        Self {
            perturb: 0.8,
            random: 0.1,
            grow: 0.1,
        }
    }
}

impl Mix {
    pub fn new(perturb: f64, random: f64, grow: f64) -> Result<Self> {
        let parts = [perturb, random, grow];
        if parts.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::invalid(format!("mix fractions must be >= 0, got {parts:?}")));
        }
        if (parts.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!("mix fractions must sum to 1, got {parts:?}")));
        }
        Ok(Self { perturb, random, grow })
    }

    /// Per-strategy counts for `n` negatives; rounding goes to `grow`.
    pub fn counts(&self, n: usize) -> (usize, usize, usize) {
        let perturb = ((self.perturb * n as f64).round() as usize).min(n);
        let random = ((self.random * n as f64).round() as usize).min(n - perturb);
        (perturb, random, n - perturb - random)
    }
}

impl FromStr for Mix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| Error::invalid(format!("mix {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        match parts.as_slice() {
            [p, r, g] => Mix::new(*p, *r, *g),
            _ => Err(Error::invalid(format!("mix needs three comma-separated fractions, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleConfig {
    pub n_per_class: usize,
    pub mix: Mix,
    pub split: f64,
    pub seed: u64,
}

impl SampleConfig {
    pub fn new(n_per_class: usize, seed: u64) -> Self {
        Self {
            n_per_class,
            mix: Mix::default(),
            split: 0.9,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub train: Vec<Sample>,
    pub validation: Vec<Sample>,
    pub mix: Mix,
    pub split: f64,
}

impl SampleSet {
    pub fn all(&self) -> impl Iterator<Item = &Sample> + '_ {
        self.train.iter().chain(&self.validation)
    }
}

/// Draws samples from `make(index)` in parallel batches until `needed`
/// fresh (not yet seen) vertex sets were collected or attempts run out.
fn collect_fresh<F>(needed: usize, seen: &mut HashSet<Vec<Vertex>>, make: F) -> Vec<Sample>
where
    F: Fn(u64) -> Option<Sample> + Sync,
{
    let mut out = Vec::with_capacity(needed);
    let max_attempts = (needed as u64).saturating_mul(20) + 100;
    let mut next = 0u64;
    while out.len() < needed && next < max_attempts {
        let batch = (((needed - out.len()) as u64) * 2).max(32).min(max_attempts - next);
        let drawn: Vec<Option<Sample>> = (next..next + batch).into_par_iter().map(&make).collect();
        next += batch;
        for s in drawn.into_iter().flatten() {
            if out.len() == needed {
                break;
            }
            if seen.insert(s.key()) {
                out.push(s);
            }
        }
    }
    out
}

/// Balanced, split and shuffled sample set for `template`.
///
/// Both classes hold `n_per_class` samples with pairwise distinct vertex
/// sets. Each class is split by `split` separately so train and validation
/// stay balanced, then each part is shuffled.
pub fn build_sample_set(g: &Graph, template: &MotifTemplate, config: &SampleConfig) -> Result<SampleSet> {
    let n = config.n_per_class;
    if n == 0 {
        return Err(Error::invalid("need at least one sample per class"));
    }
    if !(config.split > 0.0 && config.split <= 1.0) {
        return Err(Error::invalid(format!("split must be in (0, 1], got {}", config.split)));
    }
    let seed = config.seed;
    let mut shuffle_rng = stream_rng(seed, streams::SHUFFLE, 0);

    let mut positives = match enumerate_positives(g, template, n.saturating_mul(2), seed) {
        Ok(p) => p,
        Err(Error::NoInstances(_)) => Vec::new(),
        Err(e) => return Err(e),
    };
    positives.shuffle(&mut shuffle_rng);
    let mut seen = HashSet::new();
    positives.retain(|s| seen.insert(s.key()));
    if positives.len() < n {
        return Err(Error::InsufficientPositives {
            requested: n,
            achieved: positives.len(),
        });
    }
    positives.truncate(n);

    let mut negatives = Vec::with_capacity(n);
    if let MotifKind::Dense { density } = template.kind() {
        let k = template.k();
        negatives = collect_fresh(n, &mut seen, |i| {
            sample_dense(g, k, density, DenseSide::Negative, stream_seed(seed, streams::DENSE_NEG, i))
        });
    } else {
        let (n_perturb, n_random, n_grow) = config.mix.counts(n);
        let pos = &positives;
        negatives.extend(collect_fresh(n_perturb, &mut seen, |i| {
            let base = &pos[(i as usize) % pos.len()].inner;
            negative_perturb(g, template, base, stream_seed(seed, streams::PERTURB, i))
        }));
        negatives.extend(collect_fresh(n_random, &mut seen, |i| {
            negative_random(g, template, stream_seed(seed, streams::RANDOM, i))
        }));
        negatives.extend(collect_fresh(n_grow, &mut seen, |i| {
            negative_grow(g, template, stream_seed(seed, streams::GROW, i))
        }));
        // Shortfalls (e.g. no room for perturbation) are refilled by the
        // other strategies.
        for (round, strategy) in [Strategy::Grow, Strategy::Random, Strategy::Perturb].into_iter().enumerate() {
            let missing = n - negatives.len();
            if missing == 0 {
                break;
            }
            let stream = streams::REFILL + round as u64;
            negatives.extend(collect_fresh(missing, &mut seen, |i| {
                let s = stream_seed(seed, stream, i);
                match strategy {
                    Strategy::Grow => negative_grow(g, template, s),
                    Strategy::Random => negative_random(g, template, s),
                    _ => negative_perturb(g, template, &pos[(i as usize) % pos.len()].inner, s),
                }
            }));
        }
    }
    if negatives.len() < n {
        return Err(Error::InsufficientNegatives {
            requested: n,
            achieved: negatives.len(),
        });
    }

    negatives.shuffle(&mut shuffle_rng);
    let cut = |len: usize| ((config.split * len as f64).round() as usize).min(len);
    let (pos_cut, neg_cut) = (cut(positives.len()), cut(negatives.len()));
    let mut validation: Vec<Sample> = positives.split_off(pos_cut);
    validation.extend(negatives.split_off(neg_cut));
    let mut train = positives;
    train.extend(negatives);
    train.shuffle(&mut shuffle_rng);
    validation.shuffle(&mut shuffle_rng);
    Ok(SampleSet {
        train,
        validation,
        mix: config.mix,
        split: config.split,
    })
}
