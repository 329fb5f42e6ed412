//! Load an edge list and look around it.
//!
//!     cargo run --example graph_basics -- [edge-list]

use std::fs::File;
use std::io::BufReader;

use motif_predict::graph::load_edge_list;

fn main() -> motif_predict::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/karate.txt").to_string());
    let (g, stats) = load_edge_list(BufReader::new(File::open(&path)?))?;
    println!("{path}: {} vertices, {} edges", g.n(), g.m());
    println!("{} self-loops dropped, {} duplicates merged", stats.self_loops_dropped, stats.duplicate_edges);

    let hub = (0..g.n()).max_by_key(|&v| g.degree(v)).expect("non-empty graph");
    println!("max degree {} at vertex {:?}", g.degree(hub), g.source_id(hub));

    let rings = g.bfs_order(&[hub], 2)?;
    for h in 0..=2 {
        let count = rings.iter().filter(|&&(_, d)| d == h).count();
        println!("  {count} vertices at distance {h}");
    }
    println!("content hash {}", &g.content_hash()[..16]);
    Ok(())
}
