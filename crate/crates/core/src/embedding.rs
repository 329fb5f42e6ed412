//! Node embeddings from uniform random walks.
//!
//! Walk co-occurrences within a sliding window are reweighted by positive
//! pointwise mutual information and the resulting symmetric matrix is
//! factorized by a truncated eigendecomposition; row `v` of `U sqrt(L)` is
//! the embedding of `v`. Externally trained embeddings can be imported
//! instead.

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};

use nalgebra::{DMatrix, SymmetricEigen};
use rand::prelude::*;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::matrix::Matrix;
use crate::motif::MotifTemplate;
use crate::sampling::{stream_rng, Sample};

pub const CACHE_ENV: &str = "MOTIF_CACHE_DIR";
/// Graphs up to this size are factorized exactly.
const DENSE_LIMIT: usize = 400;
const OVERSAMPLE: usize = 16;
const POWER_ITERATIONS: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingParams {
    pub walks_per_node: usize,
    pub walk_length: usize,
    pub window: usize,
    pub dim: usize,
}

impl Default for EmbeddingParams {
    fn default() -> Self {
        Self {
            walks_per_node: 10,
            walk_length: 80,
            window: 10,
            dim: 128,
        }
    }
}

impl EmbeddingParams {
    fn validate(&self) -> Result<()> {
        if self.walks_per_node == 0 || self.walk_length < 2 || self.window == 0 || self.dim == 0 {
            return Err(Error::invalid(format!(
                "embedding needs walks_per_node >= 1, walk_length >= 2, window >= 1, dim >= 1; got {self:?}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    WalkFactorization,
    Imported,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    pub values: Matrix,
    pub provenance: Provenance,
}

impl EmbeddingMatrix {
    pub fn n(&self) -> usize {
        self.values.rows()
    }

    pub fn dim(&self) -> usize {
        self.values.cols()
    }
}

/// `walks_per_node` uniform walks from every vertex, round by round. Walks
/// stop early at isolated vertices.
pub fn generate_walks(g: &Graph, walks_per_node: usize, walk_length: usize, seed: u64) -> Result<Vec<Vec<Vertex>>> {
    if walks_per_node == 0 || walk_length < 2 {
        return Err(Error::invalid("walks need walks_per_node >= 1 and walk_length >= 2"));
    }
    let starts: Vec<(usize, Vertex)> = (0..walks_per_node).flat_map(|r| (0..g.n()).map(move |v| (r, v))).collect();
    Ok(starts
        .into_par_iter()
        .map(|(round, start)| {
            let mut rng = stream_rng(seed, round as u64, start as u64);
            let mut walk = Vec::with_capacity(walk_length);
            walk.push(start);
            let mut at = start;
            while walk.len() < walk_length {
                let nb = g.adj(at);
                if nb.is_empty() {
                    break;
                }
                at = nb[rng.gen_range(0..nb.len())];
                walk.push(at);
            }
            walk
        })
        .collect())
}

/// Symmetric sparse matrix as sorted rows.
struct SparseSym {
    rows: Vec<Vec<(usize, f64)>>,
}

impl SparseSym {
    fn n(&self) -> usize {
        self.rows.len()
    }

    fn mul(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let cols = x.ncols();
        let out: Vec<Vec<f64>> = self
            .rows
            .par_iter()
            .map(|row| {
                let mut acc = vec![0.0; cols];
                for &(j, a) in row {
                    for (c, slot) in acc.iter_mut().enumerate() {
                        *slot += a * x[(j, c)];
                    }
                }
                acc
            })
            .collect();
        DMatrix::from_fn(self.n(), cols, |r, c| out[r][c])
    }

    fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n(), self.n());
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, a) in row {
                m[(i, j)] = a;
            }
        }
        m
    }
}

fn cooccurrence(corpus: &[Vec<Vertex>], n: usize, window: usize) -> Result<Vec<Vec<(usize, f64)>>> {
    let mut counts: Vec<HashMap<usize, f64>> = vec![HashMap::new(); n];
    for walk in corpus {
        for (i, &a) in walk.iter().enumerate() {
            if a >= n {
                return Err(Error::VertexOutOfRange { vertex: a, n });
            }
            for &b in walk.iter().skip(i + 1).take(window) {
                if b >= n {
                    return Err(Error::VertexOutOfRange { vertex: b, n });
                }
                *counts[a].entry(b).or_insert(0.0) += 1.0;
                *counts[b].entry(a).or_insert(0.0) += 1.0;
            }
        }
    }
    Ok(counts
        .into_iter()
        .map(|row| {
            let mut r: Vec<(usize, f64)> = row.into_iter().collect();
            r.sort_unstable_by_key(|x| x.0);
            r
        })
        .collect())
}

/// Positive PMI of a symmetric count matrix: `max(0, ln(C_ij D / (r_i r_j)))`.
fn ppmi(counts: Vec<Vec<(usize, f64)>>) -> SparseSym {
    let sums: Vec<f64> = counts.iter().map(|r| r.iter().map(|x| x.1).sum()).collect();
    let total: f64 = sums.iter().sum();
    let rows = counts
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .filter_map(|(j, c)| {
                    let v = (c * total / (sums[i] * sums[j])).ln();
                    (v > 0.0).then_some((j, v))
                })
                .collect()
        })
        .collect();
    SparseSym { rows }
}

/// Top `f` eigenpairs (largest eigenvalues first) of a symmetric matrix.
fn top_eigenpairs(a: &SparseSym, f: usize, seed: u64) -> (Vec<f64>, DMatrix<f64>) {
    top_eigenpairs_with(a, f, seed, DENSE_LIMIT)
}

fn top_eigenpairs_with(a: &SparseSym, f: usize, seed: u64, dense_limit: usize) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.n();
    let (values, vectors) = if n <= dense_limit {
        let eig = SymmetricEigen::new(a.to_dense());
        (eig.eigenvalues.as_slice().to_vec(), eig.eigenvectors)
    } else {
        // Randomized subspace iteration followed by Rayleigh-Ritz.
        let width = (f + OVERSAMPLE.max(f)).min(n);
        let mut rng = stream_rng(seed, u64::MAX, 0);
        let mut q = DMatrix::from_fn(n, width, |_, _| rng.gen_range(-1.0..1.0));
        q = q.qr().q();
        for _ in 0..POWER_ITERATIONS {
            q = a.mul(&q).qr().q();
        }
        let t = q.transpose() * a.mul(&q);
        let t = (&t + t.transpose()) * 0.5;
        let eig = SymmetricEigen::new(t);
        (eig.eigenvalues.as_slice().to_vec(), &q * eig.eigenvectors)
    };
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&x, &y| values[y].total_cmp(&values[x]).then(x.cmp(&y)));
    order.truncate(f);
    let mut out = DMatrix::zeros(n, f);
    for (c, &src) in order.iter().enumerate() {
        let col = vectors.column(src);
        // Fix the sign so the largest-magnitude entry is positive.
        let pivot = col.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
        let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
        for r in 0..n {
            out[(r, c)] = sign * col[r];
        }
    }
    (order.iter().map(|&i| values[i]).collect(), out)
}

/// PPMI factorization of a walk corpus over `n` vertices.
pub fn embed_from_walks(corpus: &[Vec<Vertex>], n: usize, dim: usize, window: usize, seed: u64) -> Result<EmbeddingMatrix> {
    if corpus.is_empty() || n == 0 {
        return Err(Error::EmptyInput);
    }
    if dim > n {
        return Err(Error::invalid(format!("embedding dimension {dim} exceeds vertex count {n}")));
    }
    if window == 0 {
        return Err(Error::invalid("window must be >= 1"));
    }
    let a = ppmi(cooccurrence(corpus, n, window)?);
    let (lambda, u) = top_eigenpairs(&a, dim, seed);
    let mut values = Matrix::zeros(n, dim);
    for c in 0..dim {
        let scale = lambda[c].max(0.0).sqrt();
        for r in 0..n {
            values.set(r, c, u[(r, c)] * scale);
        }
    }
    Ok(EmbeddingMatrix {
        values,
        provenance: Provenance::WalkFactorization,
    })
}

pub fn embed_graph(g: &Graph, params: &EmbeddingParams, seed: u64) -> Result<EmbeddingMatrix> {
    params.validate()?;
    let walks = generate_walks(g, params.walks_per_node, params.walk_length, seed)?;
    embed_from_walks(&walks, g.n(), params.dim, params.window, seed)
}

/// `g` plus every missing motif pair of the given samples, for embedding
/// with candidate links present.
pub fn inject_candidates<'a>(g: &Graph, template: &MotifTemplate, samples: impl IntoIterator<Item = &'a Sample>) -> Result<Graph> {
    let mut added = Vec::new();
    for s in samples {
        for &(a, b) in template.motif_pairs() {
            let (u, v) = (s.inner[a], s.inner[b]);
            if !g.has_edge(u, v) {
                added.push((u.min(v), u.max(v)));
            }
        }
    }
    added.sort_unstable();
    added.dedup();
    g.with_edges(&added)
}

/// Writes `n f` then one `<source id> <f floats>` line per vertex.
pub fn export_embedding<W: Write>(writer: W, g: &Graph, values: &Matrix) -> Result<()> {
    if values.rows() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            actual: values.rows(),
        });
    }
    let mut w = BufWriter::new(writer);
    writeln!(w, "{} {}", values.rows(), values.cols())?;
    for v in 0..g.n() {
        write!(w, "{}", g.source_id(v))?;
        for x in values.row(v) {
            write!(w, " {x}")?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads the format of [`export_embedding`], reindexing rows by the graph's
/// source ids. Every vertex needs exactly one row.
pub fn import_embedding<R: BufRead>(reader: R, g: &Graph) -> Result<EmbeddingMatrix> {
    let mut lines = reader.lines().enumerate();
    let (n, f) = loop {
        let Some((i, line)) = lines.next() else {
            return Err(Error::EmptyInput);
        };
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parse = |t: Option<&str>| -> Result<usize> {
            t.and_then(|t| t.parse().ok()).ok_or_else(|| Error::Parse {
                line: i + 1,
                message: "header must be `<n> <f>`".into(),
            })
        };
        let mut parts = line.split_whitespace();
        break (parse(parts.next())?, parse(parts.next())?);
    };
    if n != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), actual: n });
    }
    let index = g.id_index();
    let mut values = Matrix::zeros(n, f);
    let mut seen = vec![false; n];
    for (i, line) in lines {
        let line = line?;
        let mut parts = line.split_whitespace();
        let Some(id) = parts.next() else { continue };
        let err = |message: String| Error::Parse { line: i + 1, message };
        let &v = index.get(id).ok_or_else(|| err(format!("unknown vertex id {id:?}")))?;
        if seen[v] {
            return Err(err(format!("duplicate row for vertex {id:?}")));
        }
        let row = parts
            .map(|t| t.parse::<f64>().map_err(|e| err(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != f {
            return Err(err(format!("expected {f} values, found {}", row.len())));
        }
        if row.iter().any(|x| !x.is_finite()) {
            return Err(err("non-finite value".into()));
        }
        values.row_mut(v).copy_from_slice(&row);
        seen[v] = true;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::invalid(format!("no embedding row for vertex {:?}", g.source_id(missing))));
    }
    Ok(EmbeddingMatrix {
        values,
        provenance: Provenance::Imported,
    })
}

/// Embeddings stored on disk, keyed by graph content, parameters and seed.
#[derive(Debug, Clone)]
pub struct EmbeddingCache {
    dir: PathBuf,
}

impl EmbeddingCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Cache at `$MOTIF_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).map(Self::new)
    }

    pub fn key(g: &Graph, params: &EmbeddingParams, seed: u64) -> String {
        let mut h = Sha256::new();
        h.update(g.content_hash().as_bytes());
        h.update(
            format!(
                "|{}|{}|{}|{}|{}",
                params.walks_per_node, params.walk_length, params.window, params.dim, seed
            )
            .as_bytes(),
        );
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.emb"))
    }

    /// Loads the cached embedding or computes and stores it.
    pub fn get_or_compute(&self, g: &Graph, params: &EmbeddingParams, seed: u64) -> Result<EmbeddingMatrix> {
        let path = self.path_for(&Self::key(g, params, seed));
        if path.exists() {
            log::debug!("embedding cache hit: {}", path.display());
            let mut e = import_embedding(std::io::BufReader::new(fs::File::open(&path)?), g)?;
            e.provenance = Provenance::WalkFactorization;
            return Ok(e);
        }
        let e = embed_graph(g, params, seed)?;
        fs::create_dir_all(&self.dir)?;
        let tmp = path.with_extension("tmp");
        export_embedding(fs::File::create(&tmp)?, g, &e.values)?;
        fs::rename(&tmp, &path)?;
        Ok(e)
    }
}

/// Computes an embedding, going through `$MOTIF_CACHE_DIR` when it is set.
pub fn embed_cached(g: &Graph, params: &EmbeddingParams, seed: u64) -> Result<EmbeddingMatrix> {
    match EmbeddingCache::from_env() {
        Some(cache) => cache.get_or_compute(g, params, seed),
        None => embed_graph(g, params, seed),
    }
}

pub fn read_embedding_file(path: &Path, g: &Graph) -> Result<EmbeddingMatrix> {
    import_embedding(std::io::BufReader::new(fs::File::open(path)?), g)
}
