//! Random-walk node embeddings: compute, write, read back.
//!
//!     cargo run --release --example embedding

use motif_predict::embedding::{embed_graph, export_embedding, generate_walks, import_embedding, EmbeddingParams};
use motif_predict::graph::load_edge_list;

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot / (norm(a) * norm(b)).max(f64::MIN_POSITIVE)
}

fn main() -> motif_predict::Result<()> {
    let (g, _) = load_edge_list(include_str!("../data/karate.txt").as_bytes())?;
    let walks = generate_walks(&g, 1, 8, 0)?;
    println!("first walk: {:?}", walks[0]);

    let params = EmbeddingParams { dim: 8, ..EmbeddingParams::default() };
    let e = embed_graph(&g, &params, 0)?;
    println!("embedding {} x {}", e.n(), e.dim());

    let v = |id: &str| e.values.row(g.index_of(id).unwrap());
    for (a, b) in [("0", "1"), ("0", "33"), ("32", "33")] {
        println!("cos({a}, {b}) = {:.3}", cosine(v(a), v(b)));
    }

    let mut buf = Vec::new();
    export_embedding(&mut buf, &g, &e.values)?;
    let back = import_embedding(&buf[..], &g)?;
    println!("round trip max error {:e}", back.values.as_slice().iter().zip(e.values.as_slice()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
    Ok(())
}
