//! Motif templates and queries.
//!
//! A template describes a motif over role indices `0..k`; a query binds a
//! template to concrete vertices and classifies every vertex pair inside the
//! motif into exactly one [`EdgeClass`]. Roles are positional: for stars,
//! role `0` is the hub.
//!
//! Star sizes count vertices: a `k`-star has a hub and `k - 1` arms, so a
//! 7-db-star carries C(6, 2) = 15 deal-breaker pairs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Pair of role indices with `a < b`.
pub type RolePair = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MotifKind {
    Clique,
    Star,
    DbStar,
    /// At least `ceil(density * C(k, 2))` of the pairs present.
    Dense { density: f64 },
    Custom,
}

impl MotifKind {
    pub fn tag(&self) -> &'static str {
        match self {
            MotifKind::Clique => "k_clique",
            MotifKind::Star => "k_star",
            MotifKind::DbStar => "k_db_star",
            MotifKind::Dense { .. } => "k_dense",
            MotifKind::Custom => "custom",
        }
    }

    /// Short name used on the command line and in reports.
    pub fn name(&self) -> &'static str {
        match self {
            MotifKind::Clique => "clique",
            MotifKind::Star => "star",
            MotifKind::DbStar => "db-star",
            MotifKind::Dense { .. } => "dense",
            MotifKind::Custom => "custom",
        }
    }
}

impl fmt::Display for MotifKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MotifTemplate {
    kind: MotifKind,
    k: usize,
    motif_pairs: Vec<RolePair>,
    dealbreaker_pairs: Vec<RolePair>,
}

pub(crate) fn all_role_pairs(k: usize) -> Vec<RolePair> {
    (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect()
}

pub(crate) fn pair_count(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

impl MotifTemplate {
    pub fn new(kind: MotifKind, k: usize) -> Result<Self> {
        match kind {
            MotifKind::Clique => Self::clique(k),
            MotifKind::Star => Self::star(k),
            MotifKind::DbStar => Self::db_star(k),
            MotifKind::Dense { density } => Self::dense(k, density),
            MotifKind::Custom => Err(Error::invalid("custom templates need explicit pairs; use MotifTemplate::custom")),
        }
    }

    pub fn clique(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid(format!("clique needs k >= 2, got {k}")));
        }
        Ok(Self {
            kind: MotifKind::Clique,
            k,
            motif_pairs: all_role_pairs(k),
            dealbreaker_pairs: Vec::new(),
        })
    }

    /// Hub role 0 with `k - 1` arms; arm-arm pairs are inert.
    pub fn star(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::invalid(format!("star needs k >= 3, got {k}")));
        }
        Ok(Self {
            kind: MotifKind::Star,
            k,
            motif_pairs: (1..k).map(|a| (0, a)).collect(),
            dealbreaker_pairs: Vec::new(),
        })
    }

    /// Star whose arm-arm pairs are deal-breakers.
    pub fn db_star(k: usize) -> Result<Self> {
        let star = Self::star(k)?;
        let arms: Vec<RolePair> = all_role_pairs(k).into_iter().filter(|&(a, _)| a != 0).collect();
        let mut t = star.with_dealbreakers(&arms)?;
        t.kind = MotifKind::DbStar;
        Ok(t)
    }

    /// Density-threshold motif. Every pair counts as a motif pair for scoring
    /// and masking; instance checks use the edge-count threshold instead.
    pub fn dense(k: usize, density: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid(format!("dense motif needs k >= 2, got {k}")));
        }
        if !(density > 0.0 && density <= 1.0) {
            return Err(Error::invalid(format!("density must be in (0, 1], got {density}")));
        }
        Ok(Self {
            kind: MotifKind::Dense { density },
            k,
            motif_pairs: all_role_pairs(k),
            dealbreaker_pairs: Vec::new(),
        })
    }

    pub fn custom(k: usize, motif_pairs: &[RolePair], dealbreaker_pairs: &[RolePair]) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid(format!("motif needs k >= 2, got {k}")));
        }
        let norm = |pairs: &[RolePair]| -> Result<Vec<RolePair>> {
            let mut out = Vec::with_capacity(pairs.len());
            for &(a, b) in pairs {
                if a == b || a >= k || b >= k {
                    return Err(Error::invalid(format!("role pair ({a}, {b}) invalid for k = {k}")));
                }
                out.push((a.min(b), a.max(b)));
            }
            out.sort_unstable();
            out.dedup();
            Ok(out)
        };
        let motif_pairs = norm(motif_pairs)?;
        let dealbreaker_pairs = norm(dealbreaker_pairs)?;
        if let Some(p) = motif_pairs.iter().find(|p| dealbreaker_pairs.contains(p)) {
            return Err(Error::invalid(format!("pair {p:?} is both motif and deal-breaker")));
        }
        Ok(Self {
            kind: MotifKind::Custom,
            k,
            motif_pairs,
            dealbreaker_pairs,
        })
    }

    /// Same template with extra pairs turned into deal-breakers. The pairs
    /// must currently be inert.
    pub fn with_dealbreakers(&self, pairs: &[RolePair]) -> Result<Self> {
        let mut t = self.clone();
        for &(a, b) in pairs {
            let p = (a.min(b), a.max(b));
            if t.motif_pairs.contains(&p) {
                return Err(Error::invalid(format!("pair {p:?} is a motif pair")));
            }
            if p.1 >= t.k || p.0 == p.1 {
                return Err(Error::invalid(format!("role pair {p:?} invalid for k = {}", t.k)));
            }
            if !t.dealbreaker_pairs.contains(&p) {
                t.dealbreaker_pairs.push(p);
            }
        }
        t.dealbreaker_pairs.sort_unstable();
        Ok(t)
    }

    pub fn kind(&self) -> MotifKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn motif_pairs(&self) -> &[RolePair] {
        &self.motif_pairs
    }

    pub fn dealbreaker_pairs(&self) -> &[RolePair] {
        &self.dealbreaker_pairs
    }

    /// Number of present motif pairs an instance needs.
    pub fn required_edges(&self) -> usize {
        match self.kind {
            MotifKind::Dense { density } => required_dense_edges(self.k, density),
            _ => self.motif_pairs.len(),
        }
    }

    pub fn class_of(&self, pair: RolePair) -> RoleClass {
        if self.motif_pairs.binary_search(&pair).is_ok() {
            RoleClass::Motif
        } else if self.dealbreaker_pairs.binary_search(&pair).is_ok() {
            RoleClass::DealBreaker
        } else {
            RoleClass::Inert
        }
    }

    /// Binds the template to `inner` (role order) and classifies every pair
    /// against `g`.
    pub fn instantiate(&self, g: &Graph, inner: &[Vertex]) -> Result<MotifQuery> {
        if inner.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                actual: inner.len(),
            });
        }
        check_inner(g, inner)?;
        let pairs = all_role_pairs(self.k)
            .into_iter()
            .map(|(a, b)| {
                let (u, v) = (inner[a], inner[b]);
                let class = EdgeClass::classify(self.class_of((a, b)), g.has_edge(u, v));
                QueryPair { roles: (a, b), u, v, class }
            })
            .collect();
        Ok(MotifQuery {
            inner: inner.to_vec(),
            kind: self.kind,
            required: self.required_edges(),
            pairs,
        })
    }

    /// True iff `inner` forms an instance in `g`. Cheaper than building a
    /// query: stops at the first failing pair.
    pub fn matches(&self, g: &Graph, inner: &[Vertex]) -> bool {
        match self.kind {
            MotifKind::Dense { .. } => {
                let present = self
                    .motif_pairs
                    .iter()
                    .filter(|&&(a, b)| g.has_edge(inner[a], inner[b]))
                    .count();
                present >= self.required_edges()
            }
            _ => {
                self.motif_pairs.iter().all(|&(a, b)| g.has_edge(inner[a], inner[b]))
                    && !self
                        .dealbreaker_pairs
                        .iter()
                        .any(|&(a, b)| g.has_edge(inner[a], inner[b]))
            }
        }
    }
}

pub fn required_dense_edges(k: usize, density: f64) -> usize {
    let raw = density * pair_count(k) as f64;
    // guard against 0.9 * 10 = 9.000000000000002
    (raw - 1e-9).ceil().max(0.0) as usize
}

fn check_inner(g: &Graph, inner: &[Vertex]) -> Result<()> {
    for (i, &v) in inner.iter().enumerate() {
        g.check(v)?;
        if inner[..i].contains(&v) {
            return Err(Error::invalid(format!("inner vertex {v} repeated")));
        }
    }
    Ok(())
}

/// Role of a pair in a template, before looking at the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoleClass {
    Motif,
    DealBreaker,
    Inert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    MotifNonExisting,
    MotifExisting,
    DealBreakerNonExisting,
    DealBreakerExisting,
    Inert,
}

impl EdgeClass {
    fn classify(role: RoleClass, present: bool) -> Self {
        match (role, present) {
            (RoleClass::Motif, false) => EdgeClass::MotifNonExisting,
            (RoleClass::Motif, true) => EdgeClass::MotifExisting,
            (RoleClass::DealBreaker, false) => EdgeClass::DealBreakerNonExisting,
            (RoleClass::DealBreaker, true) => EdgeClass::DealBreakerExisting,
            (RoleClass::Inert, _) => EdgeClass::Inert,
        }
    }

    pub fn is_motif(self) -> bool {
        matches!(self, EdgeClass::MotifNonExisting | EdgeClass::MotifExisting)
    }

    pub fn is_dealbreaker(self) -> bool {
        matches!(self, EdgeClass::DealBreakerNonExisting | EdgeClass::DealBreakerExisting)
    }

    pub fn exists(self) -> bool {
        matches!(self, EdgeClass::MotifExisting | EdgeClass::DealBreakerExisting)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryPair {
    pub roles: RolePair,
    pub u: Vertex,
    pub v: Vertex,
    pub class: EdgeClass,
}

/// A motif bound to vertices, with every inner pair classified.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifQuery {
    inner: Vec<Vertex>,
    kind: MotifKind,
    required: usize,
    /// All C(k, 2) pairs in lexicographic role order.
    pairs: Vec<QueryPair>,
}

impl MotifQuery {
    pub fn inner(&self) -> &[Vertex] {
        &self.inner
    }

    pub fn k(&self) -> usize {
        self.inner.len()
    }

    pub fn kind(&self) -> MotifKind {
        self.kind
    }

    pub fn pairs(&self) -> &[QueryPair] {
        &self.pairs
    }

    pub fn of_class(&self, class: EdgeClass) -> impl Iterator<Item = &QueryPair> + '_ {
        self.pairs.iter().filter(move |p| p.class == class)
    }

    pub fn count(&self, class: EdgeClass) -> usize {
        self.of_class(class).count()
    }

    /// Motif and deal-breaker pairs (the pairs that matter), in role order.
    pub fn scored_pairs(&self) -> impl Iterator<Item = &QueryPair> + '_ {
        self.pairs.iter().filter(|p| p.class != EdgeClass::Inert)
    }

    pub fn motif_pair_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.class.is_motif()).count()
    }

    pub fn has_dealbreakers(&self) -> bool {
        self.pairs.iter().any(|p| p.class.is_dealbreaker())
    }

    pub fn has_existing_dealbreaker(&self) -> bool {
        self.pairs.iter().any(|p| p.class == EdgeClass::DealBreakerExisting)
    }

    pub fn required_edges(&self) -> usize {
        self.required
    }

    /// The same motif over other vertices (e.g. local subgraph ids),
    /// reclassified against `g`.
    pub fn rebind(&self, g: &Graph, inner: &[Vertex]) -> Result<MotifQuery> {
        if inner.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                actual: inner.len(),
            });
        }
        check_inner(g, inner)?;
        let pairs = self
            .pairs
            .iter()
            .map(|p| {
                let (u, v) = (inner[p.roles.0], inner[p.roles.1]);
                let role = if p.class.is_motif() {
                    RoleClass::Motif
                } else if p.class.is_dealbreaker() {
                    RoleClass::DealBreaker
                } else {
                    RoleClass::Inert
                };
                QueryPair {
                    roles: p.roles,
                    u,
                    v,
                    class: EdgeClass::classify(role, g.has_edge(u, v)),
                }
            })
            .collect();
        Ok(MotifQuery {
            inner: inner.to_vec(),
            kind: self.kind,
            required: self.required,
            pairs,
        })
    }
}

/// Classifies explicit vertex pairs over `inner` against `g`.
///
/// Pairs not listed as motif or deal-breaker pairs become inert.
pub fn build_query(
    g: &Graph,
    inner: &[Vertex],
    motif_pairs: &[(Vertex, Vertex)],
    dealbreaker_pairs: &[(Vertex, Vertex)],
) -> Result<MotifQuery> {
    check_inner(g, inner)?;
    if inner.len() < 2 {
        return Err(Error::invalid("a motif needs at least two vertices"));
    }
    let to_roles = |pairs: &[(Vertex, Vertex)]| -> Result<Vec<RolePair>> {
        pairs
            .iter()
            .map(|&(u, v)| {
                let a = inner.iter().position(|&x| x == u);
                let b = inner.iter().position(|&x| x == v);
                match (a, b) {
                    (Some(a), Some(b)) if a != b => Ok((a.min(b), a.max(b))),
                    _ => Err(Error::invalid(format!("pair ({u}, {v}) is not a pair of inner vertices"))),
                }
            })
            .collect()
    };
    let template = MotifTemplate::custom(inner.len(), &to_roles(motif_pairs)?, &to_roles(dealbreaker_pairs)?)?;
    template.instantiate(g, inner)
}

/// True iff the query's vertices form the motif in `g`.
pub fn is_instance(g: &Graph, q: &MotifQuery) -> bool {
    let present = |p: &QueryPair| g.has_edge(p.u, p.v);
    match q.kind {
        MotifKind::Dense { .. } => {
            q.pairs.iter().filter(|p| p.class.is_motif() && present(p)).count() >= q.required
        }
        _ => q.pairs.iter().all(|p| {
            if p.class.is_motif() {
                present(p)
            } else if p.class.is_dealbreaker() {
                !present(p)
            } else {
                true
            }
        }),
    }
}

/// Number of distinct non-empty edge sets over `k` vertices, `2^C(k,2) - 1`.
pub fn count_possible_motifs(k: usize) -> Result<u64> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be >= 2, got {k}")));
    }
    let pairs = pair_count(k);
    if pairs > 62 {
        return Err(Error::invalid(format!(
            "2^{pairs} - 1 motifs exceeds the supported integer range"
        )));
    }
    Ok((1u64 << pairs) - 1)
}

impl FromStr for MotifKind {
    type Err = Error;

    /// Parses `clique`, `star`, `db-star`, `dense`. Dense gets the default
    /// 0.9 threshold; override with [`MotifKind::Dense`] directly.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clique" => Ok(MotifKind::Clique),
            "star" => Ok(MotifKind::Star),
            "db-star" | "dbstar" | "db_star" => Ok(MotifKind::DbStar),
            "dense" => Ok(MotifKind::Dense { density: 0.9 }),
            other => Err(Error::invalid(format!(
                "unknown motif {other:?} (expected clique, star, db-star or dense)"
            ))),
        }
    }
}

/// Parses a custom query:
///
/// ```text
/// inner a b c
/// motif a,b a,c
/// dealbreaker b,c
/// ```
///
/// Ids are the graph's source ids. `#` starts a comment line.
pub fn parse_query_spec(text: &str, g: &Graph) -> Result<MotifQuery> {
    let index = g.id_index();
    let mut inner = None;
    let mut motif = Vec::new();
    let mut dealbreakers = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: no + 1, message };
        let mut tokens = line.split_whitespace();
        let key = tokens.next().expect("non-empty");
        let lookup = |id: &str| -> Result<Vertex> {
            index
                .get(id)
                .copied()
                .ok_or_else(|| err(format!("unknown vertex id {id:?}")))
        };
        match key {
            "inner" => {
                inner = Some(tokens.map(lookup).collect::<Result<Vec<_>>>()?);
            }
            "motif" | "dealbreaker" => {
                for tok in tokens {
                    let (a, b) = tok
                        .split_once(',')
                        .ok_or_else(|| err(format!("pair {tok:?} must look like u,v")))?;
                    let pair = (lookup(a)?, lookup(b)?);
                    if key == "motif" {
                        motif.push(pair);
                    } else {
                        dealbreakers.push(pair);
                    }
                }
            }
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }
    let inner = inner.ok_or_else(|| Error::invalid("query spec has no `inner` line"))?;
    build_query(g, &inner, &motif, &dealbreakers)
}
