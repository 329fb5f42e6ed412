//! Immutable undirected simple graph in compressed sparse row form.
//!
//! Vertices are dense indices `0..n`. Source files may use arbitrary string
//! ids; the graph keeps the original id of every vertex so results can be
//! reported in the input's vocabulary. Neighbor lists are sorted ascending,
//! which makes `has_edge` a binary search and every traversal deterministic.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::io::BufRead;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    ids: Vec<String>,
    features: Matrix,
}

/// Bookkeeping from parsing an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub lines: usize,
    pub self_loops_dropped: usize,
    pub duplicate_edges: usize,
}

impl Graph {
    /// Builds a graph over `n` vertices named `"0".."n-1"`.
    ///
    /// Self-loops are dropped and duplicate or reversed pairs collapse to a
    /// single undirected edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let ids = (0..n).map(|v| v.to_string()).collect();
        Self::build(ids, edges).map(|(g, _)| g)
    }

    fn build<I>(ids: Vec<String>, edges: I) -> Result<(Graph, LoadStats)>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let n = ids.len();
        let mut stats = LoadStats::default();
        let mut lists: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                stats.self_loops_dropped += 1;
                continue;
            }
            lists[u].push(v);
            lists[v].push(u);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        let mut directed = 0usize;
        for list in &mut lists {
            directed += list.len();
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        stats.duplicate_edges = (directed - targets.len()) / 2;
        let graph = Graph {
            offsets,
            targets,
            ids,
            features: Matrix::zeros(n, 0),
        };
        Ok((graph, stats))
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sorted neighbors of `v`; panics when `v` is out of range.
    #[inline]
    pub fn adj(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn neighbors(&self, v: Vertex) -> Result<&[Vertex]> {
        self.check(v)?;
        Ok(self.adj(v))
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// False for out-of-range vertices and for `u == v`.
    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.adj(a).binary_search(&b).is_ok()
    }

    pub fn check(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.adj(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn source_id(&self, v: Vertex) -> &str {
        &self.ids[v]
    }

    pub fn source_ids(&self) -> &[String] {
        &self.ids
    }

    /// Linear scan; build a map with [`Graph::id_index`] for repeated lookups.
    pub fn index_of(&self, id: &str) -> Option<Vertex> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn id_index(&self) -> HashMap<&str, Vertex> {
        self.ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect()
    }

    /// Input vertex features (`n × d`, `d = 0` when none were supplied).
    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn with_features(mut self, features: Matrix) -> Result<Graph> {
        if features.rows() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: features.rows(),
            });
        }
        self.features = features;
        Ok(self)
    }

    /// Multi-source BFS truncated at `h_max` hops.
    ///
    /// Returns every reached vertex with its distance to the closest source.
    pub fn bfs_distances(&self, sources: &[Vertex], h_max: usize) -> Result<BTreeMap<Vertex, usize>> {
        Ok(self.bfs_order(sources, h_max)?.into_iter().collect())
    }

    /// Like [`Graph::bfs_distances`] but in discovery order (sources first).
    pub fn bfs_order(&self, sources: &[Vertex], h_max: usize) -> Result<Vec<(Vertex, usize)>> {
        if sources.is_empty() {
            return Err(Error::invalid("bfs needs at least one source"));
        }
        for &s in sources {
            self.check(s)?;
        }
        let mut dist = vec![usize::MAX; self.n()];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] == usize::MAX {
                dist[s] = 0;
                order.push((s, 0));
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u];
            if d == h_max {
                continue;
            }
            for &w in self.adj(u) {
                if dist[w] == usize::MAX {
                    dist[w] = d + 1;
                    order.push((w, d + 1));
                    queue.push_back(w);
                }
            }
        }
        Ok(order)
    }

    /// Induced subgraph; local vertex `i` is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Result<Graph> {
        let mut local = HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            self.check(v)?;
            if local.insert(v, i).is_some() {
                return Err(Error::invalid(format!("vertex {v} listed twice")));
            }
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for w in self.adj(v) {
                if let Some(&j) = local.get(w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        let ids = vertices.iter().map(|&v| self.ids[v].clone()).collect();
        let (mut g, _) = Self::build(ids, edges)?;
        g.features = self.features.select_rows(vertices);
        Ok(g)
    }

    /// Copy of the graph without the given pairs. Absent pairs are ignored.
    pub fn without_edges(&self, removed: &[(Vertex, Vertex)]) -> Graph {
        if removed.is_empty() {
            return self.clone();
        }
        let mut drop: Vec<(Vertex, Vertex)> = removed
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        drop.sort_unstable();
        let edges: Vec<_> = self
            .edges()
            .filter(|e| drop.binary_search(e).is_err())
            .collect();
        self.rebuilt(edges)
    }

    /// Copy of the graph with extra edges added. Existing pairs are ignored.
    pub fn with_edges(&self, added: &[(Vertex, Vertex)]) -> Result<Graph> {
        for &(u, v) in added {
            self.check(u)?;
            self.check(v)?;
        }
        let edges: Vec<_> = self.edges().chain(added.iter().copied()).collect();
        Ok(self.rebuilt(edges))
    }

    fn rebuilt(&self, edges: Vec<(Vertex, Vertex)>) -> Graph {
        let (mut g, _) = Self::build(self.ids.clone(), edges).expect("edges within range");
        g.features = self.features.clone();
        g
    }

    /// SHA-256 over vertex ids and the CSR arrays, hex encoded.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        for id in &self.ids {
            h.update(id.as_bytes());
            h.update([0u8]);
        }
        for &o in &self.offsets {
            h.update((o as u64).to_le_bytes());
        }
        for &t in &self.targets {
            h.update((t as u64).to_le_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Parses a whitespace-separated edge list.
///
/// Lines starting with `#` or `%` and blank lines are skipped. Extra columns
/// after the two ids (weights, timestamps) are ignored. Vertex ids are
/// densified in order of first appearance.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<(Graph, LoadStats)> {
    let mut index: HashMap<String, Vertex> = HashMap::new();
    let mut ids: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut lines = 0;
    let mut intern = |id: &str| -> Vertex {
        if let Some(&v) = index.get(id) {
            return v;
        }
        let v = ids.len();
        ids.push(id.to_string());
        index.insert(id.to_string(), v);
        v
    };
    for (no, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        lines += 1;
        let mut parts = line.split_whitespace();
        let (a, b) = match (parts.next(), parts.next()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: no + 1,
                    message: format!("expected two vertex ids, got {line:?}"),
                })
            }
        };
        let u = intern(a);
        let v = intern(b);
        edges.push((u, v));
    }
    if ids.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (graph, mut stats) = Graph::build(ids, edges)?;
    stats.lines = lines;
    Ok((graph, stats))
}

pub fn parse_edge_list(text: &str) -> Result<(Graph, LoadStats)> {
    load_edge_list(text.as_bytes())
}

/// Reads a vertex feature file: one line per vertex, `<id> <d floats>`.
pub fn load_features<R: BufRead>(reader: R, graph: &Graph) -> Result<Matrix> {
    let index = graph.id_index();
    let mut rows: Vec<Option<Vec<f64>>> = vec![None; graph.n()];
    let mut dim: Option<usize> = None;
    for (no, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: no + 1,
            message,
        };
        let mut parts = line.split_whitespace();
        let id = parts.next().expect("non-empty line");
        let v = *index
            .get(id)
            .ok_or_else(|| parse_err(format!("unknown vertex id {id:?}")))?;
        let values = parts
            .map(|t| t.parse::<f64>().map_err(|e| parse_err(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        match dim {
            None => dim = Some(values.len()),
            Some(d) if d != values.len() => {
                return Err(parse_err(format!("expected {d} values, got {}", values.len())))
            }
            _ => {}
        }
        rows[v] = Some(values);
    }
    let d = dim.unwrap_or(0);
    let mut m = Matrix::zeros(graph.n(), d);
    for (v, row) in rows.into_iter().enumerate() {
        let row = row.ok_or_else(|| {
            Error::invalid(format!("feature file has no row for vertex {:?}", graph.source_id(v)))
        })?;
        m.row_mut(v).copy_from_slice(&row);
    }
    Ok(m)
}
