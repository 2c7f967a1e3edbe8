use std::collections::BTreeSet;

use mcs_core::builder::{
    synthetic_corpus, BuildParams, CompoundInstance, Formula, GeneratorConfig,
};
use mcs_core::ranking::*;
use mcs_core::{Execution, Heuristic, Method, SolveOptions};

fn corpus(n: usize) -> Vec<CompoundInstance> {
    synthetic_corpus(
        &GeneratorConfig::default(),
        n,
        &BuildParams::default(),
        Execution::Parallel,
    )
    .unwrap()
    .into_iter()
    .map(|e| e.compound)
    .collect()
}

fn f(s: &str) -> Formula {
    s.parse().unwrap()
}

#[test]
fn truth_rank_counts_strictly_greater() {
    assert_eq!(truth_rank_of([5.0, 3.0, 3.0, 1.0], 3.0), 2);
    assert_eq!(truth_rank_of([3.0, 3.0, 3.0], 3.0), 1);
    assert_eq!(truth_rank_of([1.0], 1.0), 1);
    assert_eq!(truth_rank_of([9.0, 8.0, 0.5], 0.5), 3);
}

#[test]
fn tie_order() {
    use std::cmp::Ordering::*;
    let (a, b) = (f("C6H12O6"), f("C5H8O7"));
    assert_eq!(candidate_order((2.0, 5.0, &a), (1.0, 0.0, &b)), Less);
    assert_eq!(candidate_order((1.0, -1.0, &a), (1.0, 2.0, &b)), Less);
    assert_eq!(candidate_order((1.0, 3.0, &a), (1.0, -2.0, &b)), Greater);
    // equal score and |error|: formula string decides
    assert_eq!(candidate_order((1.0, 2.0, &a), (1.0, -2.0, &b)), Greater);
}

#[test]
fn jaccard_and_pearson_oracles() {
    let a: BTreeSet<i32> = (0..10).collect();
    let b: BTreeSet<i32> = (5..20).collect();
    assert!((jaccard(&a, &b) - 5.0 / 20.0).abs() < 1e-12);
    let pts: Vec<(f64, f64)> = (0..50).map(|i| (i as f64, 3.0 * i as f64 - 7.0)).collect();
    assert!((pearson(&pts).unwrap() - 1.0).abs() < 1e-12);
    let pts = [(1.0, 2.0), (2.0, 1.0), (3.0, 4.0), (4.0, 3.0)];
    // sxy = 3, sxx = syy = 5
    assert!((pearson(&pts).unwrap() - 0.6).abs() < 1e-12);
}

#[test]
fn ranking_is_sorted_and_mode_independent() {
    for c in corpus(6) {
        for m in [
            Method::Exact,
            Method::Heuristic(Heuristic::Cp3),
            Method::Maximum,
        ] {
            let seq = rank_candidates(&c, m, SolveOptions::default(), Execution::Sequential);
            let par = rank_candidates(&c, m, SolveOptions::default(), Execution::Parallel);
            assert_eq!(seq.entries.len(), c.candidates.len());
            let a: Vec<(usize, f64)> = seq.entries.iter().map(|e| (e.index, e.score)).collect();
            let b: Vec<(usize, f64)> = par.entries.iter().map(|e| (e.index, e.score)).collect();
            assert_eq!(a, b);
            for w in seq.entries.windows(2) {
                assert_ne!(
                    candidate_order(
                        (w[0].score, w[0].mass_error_ppm, &w[0].formula),
                        (w[1].score, w[1].mass_error_ppm, &w[1].formula)
                    ),
                    std::cmp::Ordering::Greater
                );
            }
            let t = c.truth_index().unwrap();
            let ts = seq.entries.iter().find(|e| e.index == t).unwrap().score;
            assert_eq!(
                seq.truth_rank,
                Some(1 + seq.entries.iter().filter(|e| e.score > ts).count())
            );
        }
    }
}

#[test]
fn kbest_without_pruning_is_full_exact() {
    for c in corpus(8) {
        let opts = KBestOptions {
            delta_override: Some(f64::INFINITY),
            ..KBestOptions::default()
        };
        let r = kbest_exact_with_gap(
            &c,
            5,
            10,
            Method::Heuristic(Heuristic::Cp1),
            opts,
            Execution::Sequential,
        );
        assert_eq!(r.exact_solves, c.candidates.len());
        let full = rank_candidates(
            &c,
            Method::Exact,
            SolveOptions::default(),
            Execution::Sequential,
        );
        let got: Vec<usize> = r.top.iter().map(|e| e.index).collect();
        let want: Vec<usize> = full.top(5).iter().map(|e| e.index).collect();
        assert_eq!(got, want);
    }
}

#[test]
fn kbest_gap_is_sound_and_short_lists_flagged() {
    for c in corpus(10) {
        let r = kbest_exact_with_gap(
            &c,
            3,
            4,
            Method::Heuristic(Heuristic::Cp3),
            KBestOptions::default(),
            Execution::Parallel,
        );
        assert!(r.gap.delta >= 0.0);
        for e in &r.top {
            assert!(e.exact_score >= e.heuristic_score - 1e-9);
            assert!(e.exact_score - e.heuristic_score <= r.gap.delta + 1e-9);
        }
        assert!(r.exact_solves >= 4.min(c.candidates.len()));
        assert_eq!(r.candidates, c.candidates.len());
        let all = kbest_exact_with_gap(
            &c,
            c.candidates.len() + 2,
            1,
            Method::Maximum,
            KBestOptions::default(),
            Execution::Sequential,
        );
        assert!(all.short);
        assert_eq!(all.top.len(), c.candidates.len());
    }
}

#[test]
fn summary_matches_hand_counts() {
    let compounds = corpus(12);
    let methods = [Method::Heuristic(Heuristic::TopDown), Method::Exact];
    let sums = evaluate_corpus(
        &compounds,
        &methods,
        SolveOptions::default(),
        Execution::Parallel,
    );
    assert_eq!(sums.len(), 2);
    for s in &sums {
        let ranks: Vec<usize> = compounds
            .iter()
            .map(|c| {
                rank_candidates(c, s.method, SolveOptions::default(), Execution::Sequential)
                    .truth_rank
                    .unwrap()
            })
            .collect();
        for k in 1..=MAX_TOPK {
            let want = ranks.iter().filter(|&&r| r <= k).count() as f64 / compounds.len() as f64;
            assert!((s.topk_rate[k - 1] - want).abs() < 1e-12);
        }
        assert_eq!(s.compounds(), 12);
        assert_eq!(s.pp_vs_exact.len(), MAX_TOPK);
    }
    let exact = &sums[1];
    assert!(exact
        .relative_scores()
        .iter()
        .all(|&r| (r - 1.0).abs() < 1e-12));
    assert!(exact.pp_vs_exact.iter().all(|&p| p == 0.0));
    let td = &sums[0];
    for (h, e) in td.score_pairs() {
        assert!(h <= e + 1e-9);
    }
    let without_exact = evaluate_corpus(
        &compounds[..2],
        &methods[..1],
        SolveOptions::default(),
        Execution::Sequential,
    );
    assert!(without_exact[0].pp_vs_exact.is_empty());
}

#[test]
fn missing_truth_counts_as_miss() {
    let mut compounds = corpus(4);
    compounds[0].truth = Some(f("C99H2"));
    let sums = evaluate_corpus(
        &compounds,
        &[Method::Exact],
        SolveOptions::default(),
        Execution::Sequential,
    );
    assert_eq!(sums[0].excluded_no_truth(), 1);
    assert!(*sums[0].topk_rate.last().unwrap() <= 0.75 + 1e-12);
    assert_eq!(sums[0].relative_scores().len(), 3);
}

fn read_csv(bytes: &[u8]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(bytes);
    let head = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|x| x.unwrap().iter().map(String::from).collect())
        .collect();
    (head, rows)
}

#[test]
fn csv_columns() {
    let compounds = corpus(3);
    let methods = [Method::Heuristic(Heuristic::Cp3), Method::Exact];
    let sums = evaluate_corpus(
        &compounds,
        &methods,
        SolveOptions::default(),
        Execution::Sequential,
    );

    let mut buf = Vec::new();
    write_topk_csv(&mut buf, &sums).unwrap();
    let (head, rows) = read_csv(&buf);
    assert_eq!(head, ["method", "k", "rate", "pp_vs_exact"]);
    assert_eq!(rows.len(), 2 * MAX_TOPK);
    assert_eq!(rows[0][0], "cp3");

    let mut buf = Vec::new();
    write_instance_csv(&mut buf, &sums).unwrap();
    let (head, rows) = read_csv(&buf);
    assert_eq!(head, ["compound", "method", "metric", "value"]);
    for metric in [
        "truth_rank",
        "relative_score",
        "jaccard_fragments",
        "jaccard_losses",
        "seconds",
    ] {
        assert_eq!(
            rows.iter()
                .filter(|r| r[1] == "cp3" && r[2] == metric)
                .count(),
            3,
            "{metric}"
        );
    }

    let c = &compounds[0];
    let ranking = rank_candidates(
        c,
        Method::Exact,
        SolveOptions::default(),
        Execution::Sequential,
    );
    let mut buf = Vec::new();
    write_ranking_csv(&mut buf, &[(c.name.clone(), ranking, c.truth)]).unwrap();
    let (head, rows) = read_csv(&buf);
    assert_eq!(
        head,
        [
            "compound",
            "method",
            "rank",
            "formula",
            "mass_error_ppm",
            "score",
            "seconds",
            "tree_size",
            "truth"
        ]
    );
    assert_eq!(rows.len(), c.candidates.len());
    assert_eq!(rows.iter().filter(|r| r[8] == "true").count(), 1);

    let r = kbest_exact_with_gap(
        c,
        2,
        3,
        Method::Heuristic(Heuristic::Cp3),
        KBestOptions::default(),
        Execution::Sequential,
    );
    let mut buf = Vec::new();
    write_kbest_csv(&mut buf, &[(c.name.clone(), r)]).unwrap();
    let (head, rows) = read_csv(&buf);
    assert_eq!(
        head,
        [
            "compound",
            "position",
            "formula",
            "heuristic_score",
            "exact_score",
            "exact_solves",
            "candidates",
            "delta",
            "short"
        ]
    );
    assert_eq!(rows.len(), 2);
}
