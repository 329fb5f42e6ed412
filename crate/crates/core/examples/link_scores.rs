//! Pairwise link heuristics and their normalization.
//!
//!     cargo run --example link_scores

use motif_predict::graph::load_edge_list;
use motif_predict::link::{normalize, Scorer};

fn main() -> motif_predict::Result<()> {
    let text = include_str!("../data/karate.txt");
    let (g, _) = load_edge_list(text.as_bytes())?;
    let pairs = [("0", "33"), ("0", "1"), ("5", "16"), ("23", "25")];

    println!("{:>8} {:>8} {:>8} {:>8}", "pair", "jaccard", "cn", "aa");
    for (a, b) in pairs {
        let (u, v) = (g.index_of(a).unwrap(), g.index_of(b).unwrap());
        let s: Vec<f64> = Scorer::ALL.iter().map(|sc| sc.score(&g, u, v)).collect::<Result<_, _>>()?;
        println!("{:>8} {:>8.3} {:>8.3} {:>8.3}", format!("{a}-{b}"), s[0], s[1], s[2]);
    }

    let raw: Vec<f64> = pairs
        .iter()
        .map(|(a, b)| Scorer::CommonNeighbors.score(&g, g.index_of(a).unwrap(), g.index_of(b).unwrap()))
        .collect::<Result<_, _>>()?;
    let n = normalize(&raw)?;
    println!("\ncommon neighbors {:?} / c = {} -> {:?}", n.raw, n.c, n.normalized);
    Ok(())
}
