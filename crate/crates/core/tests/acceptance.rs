//! Acceptance suite for the motif-prediction engine.
//!
//! Every test prints one `PASS` or `FAIL` line naming its criterion and then
//! asserts. Run with `cargo test --test acceptance -- --nocapture` to see
//! the report.
//!
//! The heuristic-trend criterion needs the USAir edge list, read from
//! `$MOTIF_USAIR` or `crates/core/data/USAir.txt`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use motif_predict::aggregate::{aggregate, score_avg, score_min, score_mul, Aggregator, WeightMode, WeightVector};
use motif_predict::dataset::{export_dataset, import_dataset, read_meta, ExportOptions};
use motif_predict::embedding::{embed_graph, EmbeddingParams};
use motif_predict::eval::{auc, run_benchmark, BenchmarkConfig};
use motif_predict::featurize::{extract_h_hop, featurize_set, FeatureOptions};
use motif_predict::generators;
use motif_predict::graph::load_edge_list;
use motif_predict::link::{score_query_edges, LinkScoreVector, Scorer};
use motif_predict::matrix::Matrix;
use motif_predict::motif::{count_possible_motifs, MotifTemplate};
use motif_predict::sampling::{build_sample_set, SampleConfig};
use motif_predict::{Graph, Vertex};

fn report(criterion: &str, ok: bool, detail: &str) {
    println!("{} {criterion}: {detail}", if ok { "PASS" } else { "FAIL" });
}

fn within(criterion: &str, elapsed: Duration, limit: Duration) -> bool {
    let ok = elapsed < limit;
    if !ok {
        report(criterion, false, &format!("took {elapsed:.2?}, limit {limit:?}"));
    }
    ok
}

fn random_simplex(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -rng.gen_range(f64::EPSILON..1.0f64).ln()).collect();
    let sum: f64 = raw.iter().sum();
    let mut w: Vec<f64> = raw.iter().map(|x| x / sum).collect();
    let drift: f64 = 1.0 - w.iter().sum::<f64>();
    w[0] += drift;
    w
}

#[test]
fn product_never_exceeds_weighted_mean() {
    const NAME: &str = "Score ordering (mul <= min <= avg)";
    const TOL: f64 = 1e-12;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    let empty: Vec<Graph> = (2..=7).map(|k| Graph::from_edges(k, Vec::new()).unwrap()).collect();
    let mut draw_failures = 0;
    for _ in 0..10_000 {
        let k = rng.gen_range(2..=7);
        let g = &empty[k - 2];
        let inner: Vec<Vertex> = (0..k).collect();
        let q = MotifTemplate::clique(k).unwrap().instantiate(g, &inner).unwrap();
        let n = q.scored_pairs().count();
        let x: Vec<f64> = (0..n)
            .map(|_| match rng.gen_range(0..10) {
                0 => 0.0,
                1 => 1.0,
                _ => rng.gen::<f64>(),
            })
            .collect();
        let s = LinkScoreVector::from_normalized(&q, &x).unwrap();
        let w = WeightVector::new(random_simplex(&mut rng, n)).unwrap();
        let mul = score_mul(&q, &s).unwrap().value;
        let avg = score_avg(&q, &s, &w).unwrap().value;
        let product: f64 = x.iter().product();
        let dot: f64 = w.as_slice().iter().zip(&x).map(|(a, b)| a * b).sum();
        if mul > avg + TOL || product > dot + TOL {
            draw_failures += 1;
        }
    }

    let mut query_failures = 0;
    let mut queries = 0;
    let templates = [
        MotifTemplate::clique(3).unwrap(),
        MotifTemplate::clique(4).unwrap(),
        MotifTemplate::star(4).unwrap(),
        MotifTemplate::dense(5, 0.8).unwrap(),
    ];
    let mut seed = 0;
    while queries < 1_000 {
        seed += 1;
        let g = generators::erdos_renyi(40, rng.gen_range(0.05..0.4), seed);
        for template in &templates {
            let mut inner: Vec<Vertex> = (0..g.n()).collect();
            for i in 0..template.k() {
                let j = rng.gen_range(i..g.n());
                inner.swap(i, j);
            }
            inner.truncate(template.k());
            let q = template.instantiate(&g, &inner).unwrap();
            assert!(!q.has_dealbreakers());
            for scorer in Scorer::ALL {
                let s = score_query_edges(&g, &q, scorer).unwrap();
                for weights in [WeightMode::UniformNonExisting, WeightMode::UniformAll] {
                    let mul = aggregate(&q, &s, Aggregator::Mul, &weights).unwrap().value;
                    let min = score_min(&q, &s).unwrap().value;
                    let avg = aggregate(&q, &s, Aggregator::Avg, &weights).unwrap().value;
                    if mul > min + TOL || min > avg + TOL {
                        query_failures += 1;
                    }
                }
            }
            queries += 1;
        }
    }

    let elapsed = start.elapsed();
    let ok = draw_failures == 0 && query_failures == 0 && within(NAME, elapsed, Duration::from_secs(10));
    report(
        NAME,
        ok,
        &format!("10000 draws ({draw_failures} violations), {queries} queries ({query_failures} violations), {elapsed:.2?}"),
    );
    assert!(ok);
}

fn brute_force_motif_count(k: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
    let mut seen: HashSet<BTreeSet<(usize, usize)>> = HashSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let set: BTreeSet<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| *p)
            .collect();
        if !set.is_empty() {
            seen.insert(set);
        }
    }
    seen.len() as u64
}

#[test]
fn motif_counts_match_enumeration() {
    const NAME: &str = "Motif count oracle";
    let start = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for (k, expected) in [(2, 1), (3, 7), (4, 63)] {
        let counted = count_possible_motifs(k).unwrap();
        let brute = brute_force_motif_count(k);
        ok &= counted == brute && brute == expected;
        detail.push(format!("k={k}: {counted} vs {brute}"));
    }
    ok &= within(NAME, start.elapsed(), Duration::from_secs(1));
    report(NAME, ok, &detail.join(", "));
    assert!(ok);
}

fn all_pairs_distances(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|s| {
            let mut dist = vec![usize::MAX; g.n()];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in g.adj(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            dist
        })
        .collect()
}

#[test]
fn extraction_matches_all_pairs_bfs() {
    const NAME: &str = "Subgraph-extraction equivalence";
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut mismatches = 0;
    let mut checks = 0;
    for graph_no in 0..100u64 {
        let n = rng.gen_range(5..=200);
        let g = match graph_no % 3 {
            0 => generators::erdos_renyi(n, rng.gen_range(0.005..0.08), graph_no),
            1 => generators::random_tree(n, graph_no),
            _ => generators::clustered_scale_free(n.max(8), 2, 0.5, graph_no),
        };
        let dist = all_pairs_distances(&g);
        let k = rng.gen_range(1..=4.min(g.n()));
        let mut inner: Vec<Vertex> = Vec::new();
        while inner.len() < k {
            let v = rng.gen_range(0..g.n());
            if !inner.contains(&v) {
                inner.push(v);
            }
        }
        for h in 1..=3 {
            let oracle: BTreeSet<Vertex> = (0..g.n())
                .filter(|&v| inner.iter().any(|&i| dist[i][v] <= h))
                .collect();
            let sub = extract_h_hop(&g, &inner, h).unwrap();
            let got: BTreeSet<Vertex> = sub.global_ids.iter().copied().collect();
            checks += 1;
            if got != oracle || sub.global_ids.len() != got.len() || sub.global_ids[..k] != inner[..] {
                mismatches += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = mismatches == 0 && within(NAME, elapsed, Duration::from_secs(30));
    report(NAME, ok, &format!("{checks} extractions, {mismatches} mismatches, {elapsed:.2?}"));
    assert!(ok);
}

fn pairwise_auc(scores: &[f64], labels: &[bool]) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for (i, &sp) in scores.iter().enumerate() {
        if !labels[i] {
            continue;
        }
        for (j, &sn) in scores.iter().enumerate() {
            if labels[j] {
                continue;
            }
            pairs += 1.0;
            if sp > sn {
                wins += 1.0;
            } else if sp == sn {
                wins += 0.5;
            }
        }
    }
    wins / pairs
}

#[test]
fn auc_matches_pairwise_count() {
    const NAME: &str = "AUC oracle";
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for i in 0..1_000 {
        let n = rng.gen_range(2..300);
        let mut labels: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        labels[0] = true;
        labels[1] = false;
        let levels = if i % 2 == 0 { 7 } else { 1_000_000 };
        let scores: Vec<f64> = (0..n).map(|_| rng.gen_range(0..levels) as f64 / levels as f64).collect();
        let fast = auc(&scores, &labels).unwrap();
        worst = worst.max((fast - pairwise_auc(&scores, &labels)).abs());
    }
    let elapsed = start.elapsed();
    let ok = worst <= 1e-12 && within(NAME, elapsed, Duration::from_secs(10));
    report(NAME, ok, &format!("1000 vectors, max deviation {worst:e}, {elapsed:.2?}"));
    assert!(ok);
}

#[test]
fn existing_dealbreaker_zeroes_score() {
    const NAME: &str = "Deal-breaker zeroing";
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    let mut nonzero = 0;
    for k in 3..=5 {
        let template = MotifTemplate::db_star(k).unwrap();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        let outer = 6;
        let outer_edges: Vec<(usize, usize)> = (0..k + outer)
            .flat_map(|a| (k.max(a + 1)..k + outer).map(move |b| (a, b)))
            .filter(|_| rng.gen_bool(0.4))
            .collect();
        for mask in 0u32..(1 << pairs.len()) {
            let mut edges = outer_edges.clone();
            edges.extend(pairs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, p)| *p));
            let g = Graph::from_edges(k + outer, edges).unwrap();
            let inner: Vec<Vertex> = (0..k).collect();
            let q = template.instantiate(&g, &inner).unwrap();
            if !q.has_existing_dealbreaker() {
                continue;
            }
            for scorer in Scorer::ALL {
                let s = score_query_edges(&g, &q, scorer).unwrap();
                for weights in [WeightMode::UniformNonExisting, WeightMode::UniformAll] {
                    for agg in Aggregator::ALL {
                        checked += 1;
                        if aggregate(&q, &s, agg, &weights).unwrap().value != 0.0 {
                            nonzero += 1;
                        }
                    }
                }
            }
        }
    }
    let ok = checked > 0 && nonzero == 0;
    report(NAME, ok, &format!("{checked} scores over db-star queries with k=3..5, {nonzero} nonzero"));
    assert!(ok);
}

fn usair_path() -> PathBuf {
    std::env::var_os("MOTIF_USAIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("data/USAir.txt"))
}

#[test]
fn heuristic_trend_on_usair() {
    const NAME: &str = "Heuristic trend on USAir";
    let path = usair_path();
    let file = match std::fs::File::open(&path) {
        Ok(f) => f,
        Err(e) => {
            report(NAME, false, &format!("cannot read {}: {e}; set MOTIF_USAIR", path.display()));
            panic!("USAir edge list not available at {}", path.display());
        }
    };
    let (g, _) = load_edge_list(std::io::BufReader::new(file)).unwrap();
    println!("USAir: {} vertices, {} edges", g.n(), g.m());

    let start = Instant::now();
    let mut config = BenchmarkConfig::new(
        "USAir",
        vec![MotifTemplate::clique(3).unwrap(), MotifTemplate::clique(5).unwrap()],
    );
    config.scorers = vec![Scorer::Jaccard];
    config.n_per_class = 2000;
    config.trials = 5;
    let bench = run_benchmark(&g, &config).unwrap();
    let elapsed = start.elapsed();

    let mut ok = within(NAME, elapsed, Duration::from_secs(300));
    let mut detail = Vec::new();
    for k in [3, 5] {
        let cell = |agg| bench.cell("k_clique", k, Scorer::Jaccard, agg);
        let (Some(mul), Some(avg), Some(min)) = (cell(Aggregator::Mul), cell(Aggregator::Avg), cell(Aggregator::Min)) else {
            ok = false;
            detail.push(format!("k={k}: cells missing"));
            continue;
        };
        let stats = |r: &motif_predict::eval::SummaryRow| r.auc_mean.zip(r.auc_std);
        let (Some((m_mul, s_mul)), Some((m_avg, s_avg)), Some((m_min, s_min))) = (stats(&mul), stats(&avg), stats(&min)) else {
            ok = false;
            detail.push(format!("k={k}: unavailable"));
            continue;
        };
        let avg_min = m_avg + s_avg.max(s_min) >= m_min;
        let min_mul = m_min + s_min.max(s_mul) >= m_mul;
        let signal = k != 3 || m_avg >= 0.6;
        ok &= avg_min && min_mul && signal;
        detail.push(format!(
            "k={k}: avg {m_avg:.3}±{s_avg:.3}, min {m_min:.3}±{s_min:.3}, mul {m_mul:.3}±{s_mul:.3}"
        ));
    }
    detail.push(format!("{elapsed:.2?}"));
    report(NAME, ok, &detail.join("; "));
    assert!(ok);
}

fn write_edge_list(g: &Graph, path: &Path) {
    let text: String = g.edges().map(|(u, v)| format!("{u} {v}\n")).collect();
    std::fs::write(path, text).unwrap();
}

fn run_cli(dir: &Path, cache: &Path, args: &[&str]) {
    let status = Command::new(env!("CARGO_BIN_EXE_motif-predict"))
        .args(args)
        .current_dir(dir)
        .env("MOTIF_CACHE_DIR", cache)
        .status()
        .unwrap();
    assert!(status.success(), "motif-predict {args:?} failed");
}

#[test]
fn export_and_bench_are_byte_identical() {
    const NAME: &str = "Determinism";
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_edge_list(&generators::clustered_scale_free(400, 4, 0.6, 21), &dir.join("g.txt"));

    let mut runs = Vec::new();
    for (run, threads) in [(0, "1"), (1, "3")] {
        let cache = dir.join(format!("cache{run}"));
        let export = format!("ds{run}");
        let bench = format!("bench{run}.csv");
        run_cli(
            dir,
            &cache,
            &[
                "export", "--graph", "g.txt", "--k", "3", "--samples", "300", "--seed", "7", "--dim", "8",
                "--walks", "3", "--walk-length", "20", "--threads", threads, "--out", &export,
            ],
        );
        run_cli(
            dir,
            &cache,
            &["bench", "--graph", "g.txt", "--k", "3,4", "--samples", "300", "--trials", "2", "--seed", "7", "--threads", threads, "--out", &bench],
        );
        let files = [
            format!("{export}.train.jsonl"),
            format!("{export}.val.jsonl"),
            format!("{export}.meta.json"),
            bench.clone(),
            format!("bench{run}.summary.csv"),
        ];
        runs.push(files.map(|f| std::fs::read(dir.join(f)).unwrap()));
    }
    let identical = runs[0].iter().zip(&runs[1]).filter(|(a, b)| a == b).count();
    let non_empty = runs[0].iter().all(|f| !f.is_empty());
    let ok = identical == runs[0].len() && non_empty;
    report(NAME, ok, &format!("{identical} of {} output files identical across two runs", runs[0].len()));
    assert!(ok);
}

#[test]
fn exported_records_have_expected_shape() {
    const NAME: &str = "Pipeline shape checks";
    let start = Instant::now();
    let k = 4;
    let d = 3;
    let g = generators::clustered_scale_free(1500, 3, 0.5, 17);
    let x = Matrix::from_rows(&(0..g.n()).map(|v| vec![v as f64, g.degree(v) as f64, 1.0]).collect::<Vec<_>>()).unwrap();
    let g = g.with_features(x).unwrap();
    let template = MotifTemplate::db_star(k).unwrap();
    let set = build_sample_set(&g, &template, &SampleConfig::new(2000, 4)).unwrap();
    let params = EmbeddingParams {
        walks_per_node: 4,
        walk_length: 20,
        window: 5,
        dim: 8,
    };
    let embedding = embed_graph(&g, &params, 4).unwrap();
    let f = embedding.dim();
    let opts = FeatureOptions::default();
    let featurized = featurize_set(&g, &template, &set, Some(&embedding.values), &opts).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    let prefix = tmp.path().join("shape");
    export_dataset(
        &featurized,
        &template,
        &ExportOptions {
            graph_name: "shape",
            h: opts.h,
            input_dim: d,
            embedding_dim: f,
            labels: true,
            size_cap: opts.size_cap,
        },
        &prefix,
    )
    .unwrap();
    let (train, val) = import_dataset(&prefix).unwrap();
    let meta = read_meta(&prefix).unwrap();

    let motif_pairs = template.motif_pairs();
    let dealbreakers = template.dealbreaker_pairs();
    let mut problems: Vec<String> = Vec::new();
    let records: Vec<_> = train.iter().chain(&val).collect();
    for r in &records {
        let edges: HashSet<(usize, usize)> = r.edges.iter().map(|&[u, v]| (u, v)).collect();
        if r.features.iter().any(|row| row.len() != d + f + 2 * k) {
            problems.push(format!("record {}: feature width", r.id));
        }
        for (row, values) in r.features.iter().enumerate() {
            let one_hot = &values[d + f..d + f + k];
            let expected = |col: usize| if row < k && col == row { 1.0 } else { 0.0 };
            if one_hot.iter().enumerate().any(|(col, &x)| x != expected(col)) {
                problems.push(format!("record {} row {row}: X_H block", r.id));
            }
        }
        if r.label == 1 {
            let present = motif_pairs.iter().filter(|p| edges.contains(p)).count();
            if present >= motif_pairs.len() {
                problems.push(format!("record {}: positive with every motif edge", r.id));
            }
        } else if dealbreakers.iter().any(|p| edges.contains(p)) {
            problems.push(format!("record {}: negative with a deal-breaker edge", r.id));
        }
    }
    let count_ok = records.len() == 4000 && meta.train_records + meta.val_records == 4000 && meta.feature_dim == d + f + 2 * k;
    let elapsed = start.elapsed();
    let ok = problems.is_empty() && count_ok;
    report(
        NAME,
        ok,
        &format!(
            "{} records ({} train, {} val), feature dim {}, {} problems, {elapsed:.2?}",
            records.len(),
            train.len(),
            val.len(),
            meta.feature_dim,
            problems.len()
        ),
    );
    for p in problems.iter().take(10) {
        println!("  {p}");
    }
    assert!(ok);
}
