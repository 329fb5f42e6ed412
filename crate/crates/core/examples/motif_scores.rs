//! Mul, Avg and Min motif scores, with and without deal-breakers.
//!
//!     cargo run --example motif_scores

use motif_predict::aggregate::{aggregate, Aggregator, WeightMode};
use motif_predict::graph::load_edge_list;
use motif_predict::link::{score_query_edges, Scorer};
use motif_predict::motif::MotifTemplate;

fn main() -> motif_predict::Result<()> {
    let (g, _) = load_edge_list(include_str!("../data/karate.txt").as_bytes())?;
    let ids = |list: &[&str]| list.iter().map(|id| g.index_of(id).unwrap()).collect::<Vec<_>>();

    let cases = [
        ("clique", MotifTemplate::clique(4)?, ids(&["0", "1", "2", "7"])),
        ("clique", MotifTemplate::clique(4)?, ids(&["0", "1", "2", "33"])),
        ("star", MotifTemplate::star(4)?, ids(&["33", "8", "9", "14"])),
        ("db-star", MotifTemplate::db_star(4)?, ids(&["33", "8", "9", "14"])),
        ("db-star", MotifTemplate::db_star(4)?, ids(&["0", "1", "2", "3"])),
    ];
    for weights in [WeightMode::UniformNonExisting, WeightMode::UniformAll] {
        println!("weights {weights:?}");
        for (name, template, inner) in &cases {
            let q = template.instantiate(&g, inner)?;
            let s = score_query_edges(&g, &q, Scorer::Jaccard)?;
            let v: Vec<f64> = Aggregator::ALL
                .iter()
                .map(|&a| aggregate(&q, &s, a, &weights).map(|m| m.value))
                .collect::<Result<_, _>>()?;
            let label: Vec<&str> = inner.iter().map(|&x| g.source_id(x)).collect();
            println!("  {name:8} {:<12} mul {:.4}  avg {:.4}  min {:.4}", label.join(","), v[0], v[1], v[2]);
        }
    }
    Ok(())
}
