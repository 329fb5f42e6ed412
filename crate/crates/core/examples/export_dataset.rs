//! Sample, featurize and write a JSON Lines dataset.
//!
//!     cargo run --release --example export_dataset -- [out-prefix]

use std::path::PathBuf;

use motif_predict::dataset::{export_dataset, import_dataset, read_meta, ExportOptions};
use motif_predict::embedding::{embed_graph, EmbeddingParams};
use motif_predict::featurize::{featurize_set, FeatureOptions};
use motif_predict::generators::clustered_scale_free;
use motif_predict::motif::MotifTemplate;
use motif_predict::sampling::{build_sample_set, SampleConfig};

fn main() -> motif_predict::Result<()> {
    let prefix = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("motif_triangles"));
    let g = clustered_scale_free(600, 4, 0.6, 2);
    let template = MotifTemplate::clique(3)?;
    let set = build_sample_set(&g, &template, &SampleConfig::new(500, 2))?;
    let params = EmbeddingParams { dim: 16, ..EmbeddingParams::default() };
    let embedding = embed_graph(&g, &params, 2)?;
    let opts = FeatureOptions::default();
    let featurized = featurize_set(&g, &template, &set, Some(&embedding.values), &opts)?;

    let counts = export_dataset(
        &featurized,
        &template,
        &ExportOptions {
            graph_name: "scale-free",
            h: opts.h,
            input_dim: 0,
            embedding_dim: embedding.dim(),
            labels: opts.labels,
            size_cap: opts.size_cap,
        },
        &prefix,
    )?;
    println!("wrote {} train / {} validation records under {}", counts.train, counts.validation, prefix.display());

    let meta = read_meta(&prefix)?;
    println!("feature dim {}, negative edge histogram {:?}", meta.feature_dim, meta.negative_edge_histogram);
    let (train, _) = import_dataset(&prefix)?;
    let r = &train[0];
    println!("record {}: label {}, {} nodes, {} edges, strategy {}", r.id, r.label, r.num_nodes, r.edges.len(), r.meta.strategy_tag);
    Ok(())
}
