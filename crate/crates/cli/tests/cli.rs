use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mcs_core::format::save_graph;
use mcs_core::{ColoredDag, DagBuilder};

fn mcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcs"))
        .args(args)
        .output()
        .unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn rows(bytes: &[u8]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(bytes);
    let head = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|x| x.unwrap().iter().map(String::from).collect())
        .collect();
    (head, rows)
}

fn fixture() -> ColoredDag {
    let mut b = DagBuilder::new(vec![0, 1, 2, 3, 4]);
    for (c, l) in [(0, "r"), (1, "u"), (2, "v"), (3, "x"), (4, "y"), (2, "z")] {
        b.add_node(c, l);
    }
    for (s, t, w) in [
        (0, 1, 2.0),
        (1, 2, 1.0),
        (2, 3, 3.0),
        (2, 4, 2.0),
        (0, 5, 5.0),
    ] {
        b.add_edge(s, t, w).unwrap();
    }
    b.build(0).unwrap()
}

fn chain(colors: usize) -> ColoredDag {
    let mut b = DagBuilder::new((0..colors).collect());
    for c in 0..colors {
        b.add_node(c, "");
    }
    for u in 0..colors {
        for v in u + 1..colors {
            b.add_edge(u, v, 1.0).unwrap();
        }
    }
    b.build(0).unwrap()
}

fn corpus(dir: &Path, n: usize) -> PathBuf {
    let out = dir.join("corpus");
    let o = mcs(&[
        "gen",
        "--output",
        p(&out),
        "--count",
        &n.to_string(),
        "--seed",
        "11",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn solve_fixture_with_cp1_and_max() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("fixture.json");
    save_graph(&fixture(), &g).unwrap();

    let o = mcs(&["solve", "--input", p(&g), "--method", "cp1"]);
    assert!(o.status.success());
    let (head, r) = rows(&o.stdout);
    assert_eq!(
        head,
        ["input", "method", "score", "tree_size", "seconds", "error"]
    );
    assert_eq!(r.len(), 1);
    assert_eq!(r[0][0], "fixture");
    assert_eq!(r[0][2].parse::<f64>().unwrap(), 8.0);
    assert_eq!(r[0][3], "5");

    let trees = dir.path().join("trees");
    let o = mcs(&[
        "solve",
        "--input",
        p(&g),
        "--method",
        "max",
        "--trees",
        p(&trees),
    ]);
    assert!(o.status.success());
    let (_, r) = rows(&o.stdout);
    let methods: Vec<&str> = r.iter().map(|x| x[1].as_str()).collect();
    assert_eq!(
        methods,
        [
            "kruskal",
            "prim",
            "insertion",
            "topdown",
            "cp1",
            "cp2",
            "cp3",
            "max"
        ]
    );
    let best = r[..7]
        .iter()
        .map(|x| x[2].parse::<f64>().unwrap())
        .fold(f64::MIN, f64::max);
    assert_eq!(r[7][2].parse::<f64>().unwrap(), best);
    assert_eq!(fs::read_dir(&trees).unwrap().count(), 1);
}

#[test]
fn capacity_error_is_a_row() {
    let dir = tempfile::tempdir().unwrap();
    let ok = dir.path().join("ok.json");
    let big = dir.path().join("big.json");
    save_graph(&fixture(), &ok).unwrap();
    save_graph(&chain(23), &big).unwrap();
    let o = mcs(&["solve", "--input", p(&ok), p(&big), "--method", "exact"]);
    assert_eq!(o.status.code(), Some(1));
    let (_, r) = rows(&o.stdout);
    assert_eq!(r.len(), 2);
    assert_eq!(r[0][2].parse::<f64>().unwrap(), 8.0);
    assert!(r[0][5].is_empty());
    assert!(r[1][2].is_empty());
    assert!(!r[1][5].is_empty());
}

#[test]
fn bad_flags_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    save_graph(&fixture(), &g).unwrap();
    assert_eq!(
        mcs(&["solve", "--input", p(&g), "--method", "bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mcs(&[
            "eval",
            "--input",
            p(dir.path()),
            "--output",
            p(&dir.path().join("e"))
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        mcs(&["gen", "--output", p(dir.path()), "--ppm", "-1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn gen_is_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let ca = corpus(a.path(), 1);
    let cb = corpus(b.path(), 1);
    let mut files: Vec<PathBuf> = Vec::new();
    for e in fs::read_dir(&ca).unwrap() {
        let e = e.unwrap().path();
        if e.is_dir() {
            for f in fs::read_dir(&e).unwrap() {
                files.push(f.unwrap().path());
            }
        } else {
            files.push(e);
        }
    }
    assert!(files.len() > 3);
    for f in files {
        let rel = f.strip_prefix(&ca).unwrap();
        assert_eq!(
            fs::read(&f).unwrap(),
            fs::read(cb.join(rel)).unwrap(),
            "{rel:?}"
        );
    }
}

#[test]
fn empty_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let c = corpus(dir.path(), 0);
    let (head, r) = rows(&fs::read(c.join("corpus.csv")).unwrap());
    assert_eq!(head[0], "compound");
    assert!(r.is_empty());
}

#[test]
fn rank_and_kbest() {
    let dir = tempfile::tempdir().unwrap();
    let c = corpus(dir.path(), 3);

    let o = mcs(&["rank", "--input", p(&c), "--method", "cp3", "--k", "2"]);
    assert!(o.status.success());
    let (head, r) = rows(&o.stdout);
    assert_eq!(head[..3], ["compound", "method", "rank"]);
    assert_eq!(r.len(), 6);

    let o = mcs(&[
        "rank",
        "--input",
        p(&c),
        "--kbest",
        "--method",
        "cp3",
        "--k",
        "2",
        "--warmup",
        "3",
    ]);
    assert!(o.status.success());
    let (_, r) = rows(&o.stdout);
    assert_eq!(r.len(), 6);
    let solves: usize = r
        .iter()
        .step_by(2)
        .map(|x| x[5].parse::<usize>().unwrap())
        .sum();
    let cands: usize = r
        .iter()
        .step_by(2)
        .map(|x| x[6].parse::<usize>().unwrap())
        .sum();
    assert!(solves < cands, "{solves} of {cands}");
    for x in &r {
        assert!(x[4].parse::<f64>().unwrap() >= x[3].parse::<f64>().unwrap() - 1e-9);
    }
}

#[test]
fn eval_writes_a_summary_per_method() {
    let dir = tempfile::tempdir().unwrap();
    let c = corpus(dir.path(), 2);
    let out = dir.path().join("eval");
    let o = mcs(&[
        "eval",
        "--input",
        p(&c),
        "--method",
        "topdown,cp3,exact",
        "--output",
        p(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for m in ["topdown", "cp3", "exact"] {
        let (head, r) = rows(&fs::read(out.join(format!("summary_{m}.csv"))).unwrap());
        assert_eq!(head, ["metric", "value"]);
        assert!(r.iter().any(|x| x[0] == "top1"));
    }
    let (_, r) = rows(&fs::read(out.join("topk.csv")).unwrap());
    assert_eq!(r.len(), 3 * mcs_core::ranking::MAX_TOPK);
    assert!(out.join("instance.csv").is_file());
}

#[test]
fn bench_cumulative_is_monotone() {
    let dir = tempfile::tempdir().unwrap();
    let c = corpus(dir.path(), 3);
    let o = mcs(&["bench", "--input", p(&c), "--method", "cp1,exact"]);
    assert!(o.status.success());
    let (head, r) = rows(&o.stdout);
    assert_eq!(
        head,
        [
            "series",
            "position",
            "fraction",
            "compound",
            "seconds",
            "cumulative_seconds"
        ]
    );
    for series in ["build", "cp1", "exact"] {
        let s: Vec<&Vec<String>> = r.iter().filter(|x| x[0] == series).collect();
        assert_eq!(s.len(), 3);
        assert_eq!(s[2][2].parse::<f64>().unwrap(), 1.0);
        for w in s.windows(2) {
            assert!(w[1][4].parse::<f64>().unwrap() >= w[0][4].parse::<f64>().unwrap());
            assert!(w[1][5].parse::<f64>().unwrap() >= w[0][5].parse::<f64>().unwrap());
        }
    }
}

#[test]
fn build_from_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let c = corpus(dir.path(), 1);
    let name = fs::read_dir(&c)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|e| e.is_dir())
        .unwrap();
    let (_, idx) = rows(&fs::read(c.join("corpus.csv")).unwrap());
    let out = dir.path().join("rebuilt");
    let o = mcs(&[
        "build",
        "--input",
        p(&name.join("spectrum.txt")),
        "--output",
        p(&out),
        "--truth",
        &idx[0][3],
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        fs::read(name.join("manifest.csv")).unwrap(),
        fs::read(out.join("manifest.csv")).unwrap()
    );
}
