//! Balanced positive/negative motif samples.
//!
//!     cargo run --release --example sampling

use motif_predict::generators::clustered_scale_free;
use motif_predict::motif::MotifTemplate;
use motif_predict::sampling::{build_sample_set, sample_dense, DenseSide, Label, Mix, SampleConfig, Strategy};

fn main() -> motif_predict::Result<()> {
    let g = clustered_scale_free(500, 4, 0.6, 1);
    println!("graph: {} vertices, {} edges", g.n(), g.m());

    for template in [MotifTemplate::clique(3)?, MotifTemplate::star(5)?, MotifTemplate::db_star(4)?] {
        let mut config = SampleConfig::new(400, 7);
        config.mix = Mix::new(0.6, 0.2, 0.2)?;
        let set = build_sample_set(&g, &template, &config)?;
        let count = |s: Strategy| set.all().filter(|x| x.strategy == s).count();
        println!(
            "{:14} train {} val {} | positive {} perturb {} random {} grow {}",
            template.kind().name(),
            set.train.len(),
            set.validation.len(),
            count(Strategy::Positive),
            count(Strategy::Perturb),
            count(Strategy::Random),
            count(Strategy::Grow),
        );
        let first = set.train.iter().find(|s| s.label == Label::Negative).unwrap();
        println!("  e.g. negative {:?} via {}", first.inner, first.strategy.tag());
    }

    for side in [DenseSide::Positive, DenseSide::Near, DenseSide::Far] {
        match sample_dense(&g, 6, 0.8, side, 3) {
            Some(s) => println!("dense 6 @ 0.8 {side:?}: {:?}", s.inner),
            None => println!("dense 6 @ 0.8 {side:?}: none found"),
        }
    }
    Ok(())
}
