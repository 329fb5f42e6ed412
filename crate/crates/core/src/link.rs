//! First-order link prediction scores and their normalization into `[0, 1]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::motif::{EdgeClass, MotifQuery, RolePair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scorer {
    Jaccard,
    CommonNeighbors,
    AdamicAdar,
}

impl Scorer {
    pub const ALL: [Scorer; 3] = [Scorer::Jaccard, Scorer::CommonNeighbors, Scorer::AdamicAdar];

    pub fn name(self) -> &'static str {
        match self {
            Scorer::Jaccard => "jaccard",
            Scorer::CommonNeighbors => "cn",
            Scorer::AdamicAdar => "aa",
        }
    }

    pub fn score(self, g: &Graph, u: Vertex, v: Vertex) -> Result<f64> {
        match self {
            Scorer::Jaccard => jaccard(g, u, v),
            Scorer::CommonNeighbors => common_neighbors(g, u, v),
            Scorer::AdamicAdar => adamic_adar(g, u, v),
        }
    }
}

impl fmt::Display for Scorer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scorer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jaccard" => Ok(Scorer::Jaccard),
            "cn" => Ok(Scorer::CommonNeighbors),
            "aa" => Ok(Scorer::AdamicAdar),
            other => Err(Error::invalid(format!(
                "unknown scorer {other:?} (valid: jaccard, cn, aa)"
            ))),
        }
    }
}

fn distinct_pair(g: &Graph, u: Vertex, v: Vertex) -> Result<()> {
    g.check(u)?;
    g.check(v)?;
    if u == v {
        return Err(Error::invalid(format!("link score of vertex {u} with itself")));
    }
    Ok(())
}

/// Merge-walks two sorted lists, calling `f` on each common element.
fn for_each_common(a: &[Vertex], b: &[Vertex], mut f: impl FnMut(Vertex)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

fn common_count(g: &Graph, u: Vertex, v: Vertex) -> usize {
    let mut c = 0;
    for_each_common(g.adj(u), g.adj(v), |_| c += 1);
    c
}

/// `|N(u) ∩ N(v)| / |N(u) ∪ N(v)|`, zero when both neighborhoods are empty.
pub fn jaccard(g: &Graph, u: Vertex, v: Vertex) -> Result<f64> {
    distinct_pair(g, u, v)?;
    let common = common_count(g, u, v);
    let union = g.degree(u) + g.degree(v) - common;
    Ok(if union == 0 { 0.0 } else { common as f64 / union as f64 })
}

pub fn common_neighbors(g: &Graph, u: Vertex, v: Vertex) -> Result<f64> {
    distinct_pair(g, u, v)?;
    Ok(common_count(g, u, v) as f64)
}

/// Sum of `1 / ln d(z)` over common neighbors `z`. Every common neighbor has
/// degree at least 2, so each term is finite.
pub fn adamic_adar(g: &Graph, u: Vertex, v: Vertex) -> Result<f64> {
    distinct_pair(g, u, v)?;
    let mut total = 0.0;
    for_each_common(g.adj(u), g.adj(v), |z| total += 1.0 / (g.degree(z) as f64).ln());
    Ok(total)
}

/// Raw scores divided by `c = max(1, ceil(max raw))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalized {
    pub raw: Vec<f64>,
    pub normalized: Vec<f64>,
    pub c: f64,
}

pub fn normalize(raw: &[f64]) -> Result<Normalized> {
    if let Some(bad) = raw.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(Error::invalid(format!("raw scores must be finite and >= 0, got {bad}")));
    }
    let max = raw.iter().copied().fold(0.0f64, f64::max);
    let c = max.ceil().max(1.0);
    Ok(Normalized {
        raw: raw.to_vec(),
        normalized: raw.iter().map(|x| x / c).collect(),
        c,
    })
}

/// Per-pair scores over a query's motif and deal-breaker pairs, in the
/// query's role order.
///
/// Pairs that already exist carry score 1; the remaining pairs are scored
/// and normalized jointly. The edge class travels with every entry so
/// aggregators can apply deal-breaker rules.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkScoreVector {
    pub pairs: Vec<RolePair>,
    pub classes: Vec<EdgeClass>,
    pub raw: Vec<f64>,
    pub normalized: Vec<f64>,
    pub c: f64,
}

impl LinkScoreVector {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Builds a vector from already-normalized values, for callers that
    /// bring their own link scores. Values must lie in `[0, 1]`.
    pub fn from_normalized(q: &MotifQuery, values: &[f64]) -> Result<LinkScoreVector> {
        let scored: Vec<_> = q.scored_pairs().collect();
        if scored.len() != values.len() {
            return Err(Error::LengthMismatch {
                expected: scored.len(),
                actual: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::invalid(format!("normalized score {bad} outside [0, 1]")));
        }
        Ok(LinkScoreVector {
            pairs: scored.iter().map(|p| p.roles).collect(),
            classes: scored.iter().map(|p| p.class).collect(),
            raw: values.to_vec(),
            normalized: values.to_vec(),
            c: 1.0,
        })
    }
}

pub fn score_query_edges(g: &Graph, q: &MotifQuery, scorer: Scorer) -> Result<LinkScoreVector> {
    let scored: Vec<_> = q.scored_pairs().copied().collect();
    let mut raw = vec![1.0; scored.len()];
    let mut missing = Vec::new();
    for (i, p) in scored.iter().enumerate() {
        if !p.class.exists() {
            raw[i] = scorer.score(g, p.u, p.v)?;
            missing.push(i);
        }
    }
    let norm = normalize(&missing.iter().map(|&i| raw[i]).collect::<Vec<_>>())?;
    let mut normalized = vec![1.0; scored.len()];
    for (slot, &i) in missing.iter().enumerate() {
        normalized[i] = norm.normalized[slot];
    }
    Ok(LinkScoreVector {
        pairs: scored.iter().map(|p| p.roles).collect(),
        classes: scored.iter().map(|p| p.class).collect(),
        raw,
        normalized,
        c: norm.c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::motif::{build_query, MotifTemplate};
    use approx::assert_abs_diff_eq;

    #[test]
    fn jaccard_examples() {
        // a-b, a-c, b-d, c-d with a=0 b=1 c=2 d=3
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(jaccard(&g, 0, 3).unwrap(), 1.0);
        let p = generators::path(4);
        assert_eq!(jaccard(&p, 0, 2).unwrap(), 0.5);
        let iso = Graph::from_edges(2, []).unwrap();
        assert_eq!(jaccard(&iso, 0, 1).unwrap(), 0.0);
        assert!(jaccard(&p, 1, 1).is_err());
    }

    #[test]
    fn common_neighbor_examples() {
        assert_eq!(common_neighbors(&generators::path(3), 0, 2).unwrap(), 1.0);
        let k4 = generators::complete(4);
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    assert_eq!(common_neighbors(&k4, u, v).unwrap(), 2.0);
                }
            }
        }
    }

    #[test]
    fn adamic_adar_examples() {
        let g = generators::path(3);
        assert_abs_diff_eq!(adamic_adar(&g, 0, 2).unwrap(), 1.442_695_040_888_963_4, epsilon = 1e-12);
        assert_eq!(adamic_adar(&generators::path(4), 0, 3).unwrap(), 0.0);
        assert!(adamic_adar(&g, 2, 2).is_err());
    }

    #[test]
    fn normalization_examples() {
        let n = normalize(&[0.5, 1.0]).unwrap();
        assert_eq!((n.c, n.normalized.clone()), (1.0, vec![0.5, 1.0]));
        let n = normalize(&[3.0, 7.0, 2.0]).unwrap();
        assert_eq!(n.c, 7.0);
        assert_eq!(n.normalized, vec![3.0 / 7.0, 1.0, 2.0 / 7.0]);
        let n = normalize(&[0.0, 0.0]).unwrap();
        assert_eq!((n.c, n.normalized.clone()), (1.0, vec![0.0, 0.0]));
        let n = normalize(&[2.5]).unwrap();
        assert_eq!(n.c, 3.0);
        assert!(normalize(&[-0.1]).is_err());
        assert!(normalize(&[f64::NAN]).is_err());
        assert!(normalize(&[f64::INFINITY]).is_err());
    }

    #[test]
    fn scorer_names() {
        for s in Scorer::ALL {
            assert_eq!(s.name().parse::<Scorer>().unwrap(), s);
        }
        let err = "katz".parse::<Scorer>().unwrap_err().to_string();
        assert!(err.contains("jaccard, cn, aa"));
    }

    #[test]
    fn fully_existing_motif_scores_all_ones() {
        let g = generators::complete(4);
        let q = MotifTemplate::clique(4).unwrap().instantiate(&g, &[0, 1, 2, 3]).unwrap();
        let s = score_query_edges(&g, &q, Scorer::CommonNeighbors).unwrap();
        assert_eq!(s.normalized, vec![1.0; 6]);
    }

    #[test]
    fn partially_existing_triangle() {
        // 0-1 present; 0-2 and 1-2 missing; both share neighbor 3, 0 also has 4.
        let g = Graph::from_edges(5, [(0, 1), (0, 3), (1, 3), (2, 3), (0, 4)]).unwrap();
        let q = MotifTemplate::clique(3).unwrap().instantiate(&g, &[0, 1, 2]).unwrap();
        let s = score_query_edges(&g, &q, Scorer::Jaccard).unwrap();
        let j02 = jaccard(&g, 0, 2).unwrap();
        let j12 = jaccard(&g, 1, 2).unwrap();
        assert_eq!(s.normalized, vec![1.0, j02, j12]);
    }

    #[test]
    fn existing_dealbreaker_is_flagged() {
        let g = generators::complete(3);
        let q = build_query(&g, &[0, 1, 2], &[(0, 1), (0, 2)], &[(1, 2)]).unwrap();
        let s = score_query_edges(&g, &q, Scorer::Jaccard).unwrap();
        assert_eq!(s.classes[2], EdgeClass::DealBreakerExisting);
    }
}
