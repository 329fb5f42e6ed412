use std::path::Path;
use std::process::{Command, Output};

use motif_predict::generators;

fn cli(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motif-predict"))
        .args(args)
        .current_dir(dir)
        .env("MOTIF_CACHE_DIR", dir.join("cache"))
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let g = generators::clustered_scale_free(200, 3, 0.6, 13);
    let text: String = g.edges().map(|(u, v)| format!("v{u} v{v}\n")).collect();
    std::fs::write(dir.path().join("g.txt"), text).unwrap();
    dir
}

#[test]
fn score_prints_one_line_per_aggregator() {
    let dir = workspace();
    std::fs::write(dir.path().join("q.txt"), "inner v0 v1 v2\n").unwrap();
    let o = cli(dir.path(), &["score", "--graph", "g.txt", "--queries", "q.txt", "--scorers", "jaccard"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "query\tscorer\taggregator\tscore");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("v0,v1,v2\tjaccard\tmul\t"));
}

#[test]
fn bad_inputs_exit_nonzero_with_a_message() {
    let dir = workspace();
    std::fs::write(dir.path().join("bad.txt"), "inner v0 nope v2\n").unwrap();
    std::fs::write(dir.path().join("w.txt"), "0.5 0.6 0.1\n").unwrap();
    std::fs::write(dir.path().join("q.txt"), "inner v0 v1 v2\n").unwrap();
    let cases: &[&[&str]] = &[
        &["score", "--graph", "g.txt", "--queries", "bad.txt"],
        &["score", "--graph", "g.txt", "--queries", "q.txt", "--weights", "file:w.txt"],
        &["bench", "--graph", "g.txt", "--scorers", "katz"],
        &["export", "--graph", "missing.txt", "--out", "x"],
    ];
    for args in cases {
        let o = cli(dir.path(), args);
        assert!(!o.status.success(), "{args:?} should fail");
        assert!(stderr(&o).starts_with("error: "), "{args:?}: {}", stderr(&o));
    }
    let o = cli(dir.path(), &["bench", "--graph", "g.txt", "--scorers", "katz"]);
    assert!(stderr(&o).contains("jaccard, cn, aa"));
}

#[test]
fn sparse_motifs_are_reported_unavailable() {
    let dir = workspace();
    let o = cli(
        dir.path(),
        &["bench", "--graph", "g.txt", "--k", "7", "--samples", "500", "--trials", "2", "--scorers", "jaccard", "--aggregators", "mul,avg,min"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 2 * 3);
    assert!(rows.iter().all(|r| r.contains("unavailable")), "{out}");
}

#[test]
fn bench_rows_cover_every_cell() {
    let dir = workspace();
    let o = cli(
        dir.path(),
        &["bench", "--graph", "g.txt", "--k", "3,4", "--samples", "100", "--trials", "5", "--scorers", "jaccard", "--out", "b.csv"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("b.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 3 * 5);
    let summary = std::fs::read_to_string(dir.path().join("b.summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 1 + 2 * 3);
}

#[test]
fn embed_then_auc() {
    let dir = workspace();
    let o = cli(dir.path(), &["embed", "--graph", "g.txt", "--dim", "4", "--walks", "2", "--walk-length", "10", "--out", "e.txt"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let e = std::fs::read_to_string(dir.path().join("e.txt")).unwrap();
    assert_eq!(e.lines().next(), Some("200 4"));
    assert_eq!(e.lines().count(), 201);

    std::fs::write(dir.path().join("s.csv"), "score,label\n0.9,1\n0.8,1\n0.3,0\n0.85,0\n").unwrap();
    let o = cli(dir.path(), &["auc", "--input", "s.csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "auc\t0.75\naccuracy\t0.75\n");
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = workspace();
    std::fs::write(dir.path().join("run.conf"), "graph = g.txt\nk = 3\nsamples = 60\ntrials = 1\nscorers = cn\n").unwrap();
    let o = cli(dir.path(), &["bench", "--config", "run.conf", "--scorers", "aa"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().skip(1).all(|l| l.contains(",aa,")), "{out}");
}
