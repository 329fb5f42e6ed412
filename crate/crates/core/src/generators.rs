//! Seeded synthetic graphs for tests, examples and sanity benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("valid clique")
}

/// Hub `0` joined to `arms` leaves.
pub fn star(arms: usize) -> Graph {
    Graph::from_edges(arms + 1, (1..=arms).map(|a| (0, a))).expect("valid star")
}

/// Uniform random recursive tree.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    Graph::from_edges(n, edges).expect("valid tree")
}

/// G(n, p).
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid G(n,p)")
}

/// G(n, p) background with `count` cliques of `size` planted on disjoint
/// random vertex sets. Returns the graph and the planted sets.
pub fn planted_cliques(n: usize, p: f64, size: usize, count: usize, seed: u64) -> (Graph, Vec<Vec<Vertex>>) {
    assert!(size * count <= n, "not enough vertices for disjoint cliques");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut planted = Vec::with_capacity(count);
    for c in 0..count {
        let mut members = order[c * size..(c + 1) * size].to_vec();
        members.sort_unstable();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                edges.push((u, v));
            }
        }
        planted.push(members);
    }
    (Graph::from_edges(n, edges).expect("valid planted graph"), planted)
}

/// Random graph with heavy-tailed degrees and triangle closure, shaped like a
/// small hub-and-spoke transport network. Each new vertex attaches to
/// `attach` existing vertices by preferential attachment and, with
/// probability `closure`, also to a neighbor of its first target.
pub fn clustered_scale_free(n: usize, attach: usize, closure: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core = attach + 1;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut endpoints: Vec<Vertex> = Vec::new();
    let add = |u: Vertex, v: Vertex, edges: &mut Vec<_>, adj: &mut Vec<Vec<Vertex>>, endpoints: &mut Vec<Vertex>| {
        if u != v && !adj[u].contains(&v) {
            edges.push((u, v));
            adj[u].push(v);
            adj[v].push(u);
            endpoints.push(u);
            endpoints.push(v);
        }
    };
    for u in 0..core.min(n) {
        for v in u + 1..core.min(n) {
            add(u, v, &mut edges, &mut adj, &mut endpoints);
        }
    }
    for v in core..n {
        let mut targets = Vec::new();
        while targets.len() < attach {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        let first = targets[0];
        for t in targets {
            add(v, t, &mut edges, &mut adj, &mut endpoints);
        }
        if rng.gen::<f64>() < closure {
            let nb = &adj[first];
            let w = nb[rng.gen_range(0..nb.len())];
            add(v, w, &mut edges, &mut adj, &mut endpoints);
        }
    }
    Graph::from_edges(n, edges).expect("valid generated graph")
}
