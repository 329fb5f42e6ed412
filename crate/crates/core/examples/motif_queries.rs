//! Motif templates, bound queries and the pair taxonomy.
//!
//!     cargo run --example motif_queries

use motif_predict::graph::parse_edge_list;
use motif_predict::motif::{count_possible_motifs, is_instance, parse_query_spec, EdgeClass, MotifTemplate};

fn main() -> motif_predict::Result<()> {
    for k in 2..=5 {
        println!("{k} vertices: {} possible motifs", count_possible_motifs(k)?);
    }

    // Hub a with arms b, c, d; c and d are already linked.
    let (g, _) = parse_edge_list("a b\na c\nc d\nb e\n")?;
    let inner: Vec<_> = ["a", "b", "c", "d"].iter().map(|id| g.index_of(id).unwrap()).collect();

    for template in [
        MotifTemplate::clique(4)?,
        MotifTemplate::star(4)?,
        MotifTemplate::db_star(4)?,
        MotifTemplate::dense(4, 0.5)?,
    ] {
        let q = template.instantiate(&g, &inner)?;
        println!("\n{} (instance: {})", template.kind().name(), is_instance(&g, &q));
        for p in q.pairs() {
            if p.class != EdgeClass::Inert {
                println!("  {}-{}  {:?}", g.source_id(p.u), g.source_id(p.v), p.class);
            }
        }
    }

    let q = parse_query_spec("inner a b e\nmotif a,b b,e\ndealbreaker a,e\n", &g)?;
    println!("\ncustom query: instance {}, {} motif pairs", is_instance(&g, &q), q.motif_pair_count());
    Ok(())
}
