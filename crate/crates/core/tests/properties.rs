use proptest::prelude::*;

use motif_predict::aggregate::{aggregate, score_avg_db, score_min, score_mul, Aggregator, WeightMode, WeightVector};
use motif_predict::eval::auc;
use motif_predict::featurize::{extract_h_hop, mask_positive, EdgeCountHistogram};
use motif_predict::graph::parse_edge_list;
use motif_predict::link::{normalize, score_query_edges, LinkScoreVector, Scorer};
use motif_predict::motif::{is_instance, EdgeClass, MotifTemplate};
use motif_predict::{Graph, Vertex};

const TOL: f64 = 1e-12;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..n * 3).prop_map(move |edges| Graph::from_edges(n, edges).unwrap())
    })
}

fn templates(k: usize) -> Vec<MotifTemplate> {
    let mut t = vec![MotifTemplate::clique(k).unwrap(), MotifTemplate::dense(k, 0.7).unwrap()];
    if k >= 3 {
        t.push(MotifTemplate::star(k).unwrap());
        t.push(MotifTemplate::db_star(k).unwrap());
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degrees_sum_to_twice_edges(g in graph_strategy(40)) {
        let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.m());
        for v in 0..g.n() {
            prop_assert_eq!(g.degree(v), g.neighbors(v).unwrap().len());
        }
    }

    #[test]
    fn bfs_distance_is_symmetric(g in graph_strategy(30)) {
        let dist: Vec<_> = (0..g.n()).map(|v| g.bfs_distances(&[v], g.n()).unwrap()).collect();
        for u in 0..g.n() {
            for (&v, &d) in &dist[u] {
                prop_assert_eq!(dist[v].get(&u), Some(&d));
            }
        }
    }

    #[test]
    fn reloading_an_edge_list_is_stable(g in graph_strategy(30)) {
        let text: String = g.edges().map(|(u, v)| format!("{u} {v}\n")).collect();
        if text.is_empty() {
            return Ok(());
        }
        let (a, _) = parse_edge_list(&text).unwrap();
        let (b, _) = parse_edge_list(&text).unwrap();
        prop_assert_eq!(a.content_hash(), b.content_hash());
        prop_assert_eq!(a.m(), g.m());
    }

    #[test]
    fn query_classes_tile_all_pairs(g in graph_strategy(20), k in 2usize..6, seed in any::<u64>()) {
        prop_assume!(k <= g.n());
        let inner: Vec<Vertex> = (0..k).map(|i| (i + seed as usize) % g.n()).collect();
        let mut inner = inner;
        inner.sort_unstable();
        inner.dedup();
        prop_assume!(inner.len() == k);
        for t in templates(k) {
            let q = t.instantiate(&g, &inner).unwrap();
            let total: usize = [
                EdgeClass::MotifNonExisting,
                EdgeClass::MotifExisting,
                EdgeClass::DealBreakerNonExisting,
                EdgeClass::DealBreakerExisting,
                EdgeClass::Inert,
            ]
            .iter()
            .map(|&c| q.count(c))
            .sum();
            prop_assert_eq!(total, k * (k - 1) / 2);
        }
    }

    #[test]
    fn normalized_scores_are_bounded_and_symmetric(g in graph_strategy(30), a in 0usize..30, b in 0usize..30) {
        let (u, v) = (a % g.n(), b % g.n());
        prop_assume!(u != v);
        for scorer in Scorer::ALL {
            let s = scorer.score(&g, u, v).unwrap();
            prop_assert_eq!(s, scorer.score(&g, v, u).unwrap());
            let n = normalize(&[s]).unwrap();
            prop_assert!((0.0..=1.0).contains(&n.normalized[0]));
        }
    }

    #[test]
    fn normalization_preserves_order(raw in proptest::collection::vec(0.0f64..50.0, 1..12)) {
        let n = normalize(&raw).unwrap();
        prop_assert!(n.c >= 1.0);
        for i in 0..raw.len() {
            prop_assert!((0.0..=1.0).contains(&n.normalized[i]));
            for j in 0..raw.len() {
                prop_assert_eq!(raw[i] < raw[j], n.normalized[i] < n.normalized[j]);
            }
        }
    }

    #[test]
    fn aggregators_stay_in_unit_interval(g in graph_strategy(25), k in 3usize..6, seed in any::<u64>()) {
        prop_assume!(k <= g.n());
        let start = seed as usize % g.n();
        let inner: Vec<Vertex> = (0..k).map(|i| (start + i) % g.n()).collect();
        for t in templates(k) {
            let q = t.instantiate(&g, &inner).unwrap();
            for scorer in Scorer::ALL {
                let s = score_query_edges(&g, &q, scorer).unwrap();
                for weights in [WeightMode::UniformNonExisting, WeightMode::UniformAll] {
                    for agg in Aggregator::ALL {
                        let x = aggregate(&q, &s, agg, &weights).unwrap().value;
                        prop_assert!((0.0..=1.0).contains(&x), "{agg} gave {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn raising_one_missing_score_never_lowers_any_aggregator(
        k in 3usize..7,
        scores in proptest::collection::vec(0.0f64..=1.0, 21),
        which in 0usize..21,
        bump in 0.0f64..=1.0,
        dealbreakers in any::<bool>(),
    ) {
        let g = Graph::from_edges(k, Vec::new()).unwrap();
        let inner: Vec<Vertex> = (0..k).collect();
        let t = if dealbreakers { MotifTemplate::db_star(k).unwrap() } else { MotifTemplate::star(k).unwrap() };
        let q = t.instantiate(&g, &inner).unwrap();
        let classes: Vec<EdgeClass> = q.scored_pairs().map(|p| p.class).collect();
        let n = classes.len();
        let before: Vec<f64> = scores[..n].to_vec();
        let motif_slots: Vec<usize> = (0..n).filter(|&i| classes[i] == EdgeClass::MotifNonExisting).collect();
        let i = motif_slots[which % motif_slots.len()];
        let mut after = before.clone();
        after[i] = (after[i] + bump).min(1.0);
        let w = WeightVector::new(vec![1.0 / n as f64; n]).unwrap();
        let eval = |x: &[f64]| {
            let s = LinkScoreVector::from_normalized(&q, x).unwrap();
            [
                score_mul(&q, &s).unwrap().value,
                score_avg_db(&q, &s, &w).unwrap().value,
                score_min(&q, &s).unwrap().value,
            ]
        };
        let (lo, hi) = (eval(&before), eval(&after));
        for j in 0..3 {
            prop_assert!(hi[j] + TOL >= lo[j], "aggregator {j}: {} -> {}", lo[j], hi[j]);
        }
    }

    #[test]
    fn instances_score_one(k in 3usize..7, extra in 0usize..6) {
        let n = k + extra;
        let mut edges: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        edges.extend((k..n).map(|v| (v, v % k)));
        let g = Graph::from_edges(n, edges).unwrap();
        let inner: Vec<Vertex> = (0..k).collect();
        for t in [MotifTemplate::clique(k).unwrap(), MotifTemplate::star(k).unwrap()] {
            let q = t.instantiate(&g, &inner).unwrap();
            prop_assert!(is_instance(&g, &q));
            for scorer in Scorer::ALL {
                let s = score_query_edges(&g, &q, scorer).unwrap();
                for agg in Aggregator::ALL {
                    let x = aggregate(&q, &s, agg, &WeightMode::UniformNonExisting).unwrap().value;
                    prop_assert!((x - 1.0).abs() <= TOL, "{agg} gave {x}");
                }
            }
        }
    }

    #[test]
    fn auc_ignores_monotone_transforms(
        scores in proptest::collection::vec(-3.0f64..3.0, 2..200),
        labels in proptest::collection::vec(any::<bool>(), 200),
    ) {
        let mut labels = labels[..scores.len()].to_vec();
        labels[0] = true;
        labels[1] = false;
        let cubed: Vec<f64> = scores.iter().map(|x| x * x * x).collect();
        let a = auc(&scores, &labels).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!((a - auc(&cubed, &labels).unwrap()).abs() <= TOL);
    }

    #[test]
    fn masking_only_removes_edges(g in graph_strategy(40), seed in any::<u64>()) {
        let t = MotifTemplate::clique(3).unwrap();
        let triangle = (0..g.n()).find_map(|a| {
            g.adj(a).iter().find_map(|&b| {
                g.adj(b).iter().find(|&&c| c != a && g.has_edge(a, c)).map(|&c| vec![a, b, c])
            })
        });
        let Some(inner) = triangle else { return Ok(()) };
        let q = t.instantiate(&g, &inner).unwrap();
        let sub = extract_h_hop(&g, &inner, 1).unwrap();
        let hist = EdgeCountHistogram::from_counts(vec![3, 5, 2, 1]);
        let (masked, _) = mask_positive(&sub, &q, &hist, seed).unwrap();
        prop_assert_eq!(masked.global_ids.clone(), sub.global_ids.clone());
        prop_assert!(masked.graph.m() < sub.graph.m());
        for (u, v) in masked.graph.edges() {
            prop_assert!(sub.graph.has_edge(u, v));
        }
    }
}

#[test]
fn toggling_star_arms_gives_db_star() {
    for k in 3..8 {
        let arms: Vec<(usize, usize)> = (1..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        let toggled = MotifTemplate::star(k).unwrap().with_dealbreakers(&arms).unwrap();
        let db = MotifTemplate::db_star(k).unwrap();
        assert_eq!(toggled.motif_pairs(), db.motif_pairs());
        assert_eq!(toggled.dealbreaker_pairs(), db.dealbreaker_pairs());
        assert_eq!(db.dealbreaker_pairs().len(), (k - 1) * (k - 2) / 2);
    }
}
