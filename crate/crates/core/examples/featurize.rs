//! Enclosing subgraphs, masking and node labels for one positive and one
//! negative sample.
//!
//!     cargo run --example featurize

use motif_predict::featurize::{assemble, EdgeCountHistogram, FeatureOptions};
use motif_predict::graph::load_edge_list;
use motif_predict::motif::MotifTemplate;
use motif_predict::sampling::{build_sample_set, Label, SampleConfig};

fn main() -> motif_predict::Result<()> {
    let (g, _) = load_edge_list(include_str!("../data/karate.txt").as_bytes())?;
    let template = MotifTemplate::clique(3)?;
    let set = build_sample_set(&g, &template, &SampleConfig::new(20, 4))?;
    let histogram = EdgeCountHistogram::from_negatives(&g, &template, set.all());
    println!("negative motif-edge histogram {:?}", histogram.counts());

    let opts = FeatureOptions { h: 1, ..FeatureOptions::default() };
    for label in [Label::Positive, Label::Negative] {
        let sample = set.all().find(|s| s.label == label).unwrap();
        let ls = assemble(sample, &g, &template, None, &histogram, &opts)?;
        let sub = &ls.subgraph;
        println!(
            "\n{label:?} {:?}: {} vertices, {} edges, {:?}",
            sample.inner,
            sub.s(),
            sub.graph.m(),
            ls.preparation
        );
        println!("feature width {} (X_H {} + X_L {})", ls.feature_dim(), ls.x_h.cols(), ls.x_l.cols());
        for row in 0..sub.s().min(6) {
            let f = ls.features();
            println!("  global {:>2}: {:?}", sub.global_ids[row], f.row(row));
        }
    }
    Ok(())
}
