//! Heuristic benchmark: AUC of Mul/Avg/Min for each scorer.
//!
//!     cargo run --release --example benchmark -- [edge-list]
//!
//! Without an argument it runs on a clustered scale-free graph.

use std::fs::File;
use std::io::BufReader;

use motif_predict::eval::{run_benchmark, BenchmarkConfig};
use motif_predict::generators::clustered_scale_free;
use motif_predict::graph::load_edge_list;
use motif_predict::motif::MotifTemplate;

fn main() -> motif_predict::Result<()> {
    let (g, name) = match std::env::args().nth(1) {
        Some(path) => (load_edge_list(BufReader::new(File::open(&path)?))?.0, path),
        None => (clustered_scale_free(600, 5, 0.7, 4), "scale-free".to_string()),
    };
    let motifs = vec![
        MotifTemplate::clique(3)?,
        MotifTemplate::clique(4)?,
        MotifTemplate::star(5)?,
        MotifTemplate::db_star(4)?,
    ];
    let mut config = BenchmarkConfig::new(name, motifs);
    config.n_per_class = 500;
    config.trials = 3;
    let report = run_benchmark(&g, &config)?;
    report.write_summary_csv(std::io::stdout())?;
    report.write_diagnostics(std::io::stderr())?;
    Ok(())
}
