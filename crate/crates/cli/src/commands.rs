use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use mcs_core::builder::{
    build_compound, synthetic_corpus, write_bundle, GeneratorConfig, ManifestRow, Spectrum,
};
use mcs_core::format::{load_graph, GraphFile};
use mcs_core::par::{self, with_threads};
use mcs_core::ranking::{
    evaluate_corpus, kbest_exact_with_gap, rank_candidates, write_instance_csv, write_kbest_csv,
    write_ranking_csv, write_topk_csv, EvalSummary, KBestOptions,
};
use mcs_core::{Execution, Method, SolveOptions};

use crate::io::{
    build_params, bundle_dirs, csv_failure, load_compounds, output, parse_method, parse_methods,
    CORPUS_INDEX,
};
use crate::{BenchArgs, BuildArgs, EvalArgs, Failure, GenArgs, RankArgs, SolveArgs};

fn execution(threads: usize) -> Execution {
    if threads == 1 {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

pub fn gen(a: GenArgs) -> Result<(), Failure> {
    let mut cfg = match &a.config {
        Some(p) => GeneratorConfig::from_toml(&fs::read_to_string(p)?)?,
        None => GeneratorConfig::default(),
    };
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    let params = build_params(&a.build)?;
    let exec = execution(a.threads);
    let corpus = with_threads(a.threads, || synthetic_corpus(&cfg, a.count, &params, exec))?;
    fs::create_dir_all(&a.output)?;
    let mut w = csv::Writer::from_path(a.output.join(CORPUS_INDEX)).map_err(csv_failure)?;
    w.write_record(["compound", "seed", "candidates", "truth", "truth_index"])
        .map_err(csv_failure)?;
    for (i, e) in corpus.iter().enumerate() {
        let c = &e.compound;
        write_bundle(&a.output.join(&c.name), c, Some(&e.planted))?;
        w.write_record([
            c.name.clone(),
            cfg.seed.wrapping_add(i as u64).to_string(),
            c.candidates.len().to_string(),
            c.truth.map(|t| t.to_string()).unwrap_or_default(),
            c.truth_index().map(|t| t.to_string()).unwrap_or_default(),
        ])
        .map_err(csv_failure)?;
    }
    w.flush()?;
    let candidates: usize = corpus.iter().map(|e| e.compound.candidates.len()).sum();
    eprintln!(
        "wrote {} compounds ({candidates} candidates) to {}",
        corpus.len(),
        a.output.display()
    );
    Ok(())
}

pub fn build(a: BuildArgs) -> Result<(), Failure> {
    let params = build_params(&a.build)?;
    let spectrum = Spectrum::load(&a.input)?;
    let truth = a.truth.as_deref().map(str::parse).transpose()?;
    let name = a
        .output
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "compound".into());
    let mut c = with_threads(a.threads, || {
        build_compound(name, &spectrum, &params, execution(a.threads))
    })?;
    c.truth = truth;
    write_bundle(&a.output, &c, None)?;
    eprintln!(
        "{} candidates written to {}",
        c.candidates.len(),
        a.output.display()
    );
    if truth.is_some() && c.truth_index().is_none() {
        return Err(Failure::Partial(
            "truth formula is not among the candidates".into(),
        ));
    }
    Ok(())
}

/// Graph files to solve: plain files as given, bundles expanded through
/// their candidate manifest.
fn solve_units(inputs: &[PathBuf]) -> Result<Vec<(String, PathBuf)>, Failure> {
    let mut units = Vec::new();
    for p in inputs {
        if p.is_dir() {
            for dir in bundle_dirs(std::slice::from_ref(p))? {
                let manifest = dir.join("manifest.csv");
                let mut r = csv::Reader::from_path(&manifest).map_err(csv_failure)?;
                let bundle = dir
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                for row in r.deserialize() {
                    let row: ManifestRow = row.map_err(csv_failure)?;
                    let stem = row.graph.trim_end_matches(".json");
                    units.push((format!("{bundle}/{stem}"), dir.join(&row.graph)));
                }
            }
        } else {
            let stem = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            units.push((stem, p.clone()));
        }
    }
    Ok(units)
}

struct SolveRow {
    input: String,
    method: String,
    score: Option<f64>,
    tree_size: Option<usize>,
    seconds: Option<f64>,
    error: String,
}

pub fn solve(a: SolveArgs) -> Result<(), Failure> {
    let method = parse_method(&a.method)?;
    let units = solve_units(&a.input)?;
    if let Some(dir) = &a.trees {
        fs::create_dir_all(dir)?;
    }
    let exec = execution(a.threads);
    let results = with_threads(a.threads, || {
        par::map(exec, &units, |(name, path)| {
            solve_one(name, path, method, a.trees.as_deref())
        })
    });
    let mut out = csv::Writer::from_writer(output(a.output.as_deref())?);
    out.write_record(["input", "method", "score", "tree_size", "seconds", "error"])
        .map_err(csv_failure)?;
    let opt = |x: Option<String>| x.unwrap_or_default();
    let mut errors = 0;
    let mut total = 0;
    for rows in &results {
        for r in rows {
            total += 1;
            if !r.error.is_empty() {
                errors += 1;
            }
            out.write_record([
                r.input.clone(),
                r.method.clone(),
                opt(r.score.map(|s| s.to_string())),
                opt(r.tree_size.map(|s| s.to_string())),
                opt(r.seconds.map(|s| s.to_string())),
                r.error.clone(),
            ])
            .map_err(csv_failure)?;
        }
    }
    out.flush()?;
    if errors > 0 {
        return Err(Failure::Partial(format!("{errors} of {total} rows failed")));
    }
    Ok(())
}

fn solve_one(name: &str, path: &Path, method: Method, trees: Option<&Path>) -> Vec<SolveRow> {
    let fail = |e: String| {
        vec![SolveRow {
            input: name.to_string(),
            method: method.name().to_string(),
            score: None,
            tree_size: None,
            seconds: None,
            error: e,
        }]
    };
    let g = match load_graph(path) {
        Ok(g) => g,
        Err(e) => return fail(format!("{}: {e}", path.display())),
    };
    let s = match method.solve(&g, SolveOptions::default().max_colors) {
        Ok(s) => s,
        Err(e) => return fail(e.to_string()),
    };
    let mut rows = Vec::new();
    for (h, score) in s.per_heuristic.iter().flatten() {
        rows.push(SolveRow {
            input: name.to_string(),
            method: h.name().to_string(),
            score: Some(*score),
            tree_size: None,
            seconds: None,
            error: String::new(),
        });
    }
    let mut error = String::new();
    if let Some(dir) = trees {
        let file = dir.join(format!("{}.{}.json", name.replace('/', "_"), method.name()));
        let dump = fs::File::create(&file)
            .map_err(mcs_core::Error::from)
            .and_then(|f| GraphFile::from_tree(&g, &s.tree).write(std::io::BufWriter::new(f)));
        if let Err(e) = dump {
            error = format!("tree dump: {e}");
        }
    }
    rows.push(SolveRow {
        input: name.to_string(),
        method: method.name().to_string(),
        score: Some(s.tree.score()),
        tree_size: Some(s.tree.size()),
        seconds: Some(s.elapsed.as_secs_f64()),
        error,
    });
    rows
}

pub fn rank(a: RankArgs) -> Result<(), Failure> {
    let method = parse_method(&a.method)?;
    let compounds = load_compounds(&a.input)?;
    let exec = execution(a.threads);
    let out = output(a.output.as_deref())?;
    let mut failed = 0;
    if a.kbest {
        let k = a.k.unwrap_or(5);
        if k == 0 {
            return Err(Failure::Config("--k must be at least 1".into()));
        }
        let rows: Vec<_> = with_threads(a.threads, || {
            compounds
                .iter()
                .map(|c| {
                    let r =
                        kbest_exact_with_gap(c, k, a.warmup, method, KBestOptions::default(), exec);
                    (c.name.clone(), r)
                })
                .collect()
        });
        let solves: usize = rows.iter().map(|r| r.1.exact_solves).sum();
        let cands: usize = rows.iter().map(|r| r.1.candidates).sum();
        failed = rows.iter().map(|r| r.1.failed).sum();
        write_kbest_csv(out, &rows)?;
        eprintln!("{solves} exact solves for {cands} candidates");
    } else {
        let rows: Vec<_> = with_threads(a.threads, || {
            compounds
                .iter()
                .map(|c| {
                    let mut r = rank_candidates(c, method, SolveOptions::default(), exec);
                    if let Some(k) = a.k {
                        r.entries.truncate(k);
                    }
                    (c.name.clone(), r, c.truth)
                })
                .collect()
        });
        for (name, r, _) in &rows {
            for f in &r.failed {
                eprintln!("{name}: candidate {} ({}): {}", f.index, f.formula, f.error);
            }
            failed += r.failed.len();
        }
        write_ranking_csv(out, &rows)?;
    }
    if failed > 0 {
        return Err(Failure::Partial(format!("{failed} candidates failed")));
    }
    Ok(())
}

fn write_summary(path: &Path, s: &EvalSummary) -> Result<(), Failure> {
    let mut w = csv::Writer::from_path(path).map_err(csv_failure)?;
    w.write_record(["metric", "value"]).map_err(csv_failure)?;
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    let mut rows = vec![
        ("compounds", s.compounds().to_string()),
        ("excluded_no_truth", s.excluded_no_truth().to_string()),
        ("relative_scores", s.relative_scores().len().to_string()),
        ("relative_excluded", s.relative_excluded().to_string()),
        ("mean_relative", opt(s.mean_relative())),
        (
            "fraction_relative_at_least_0.99",
            opt(s.fraction_relative_at_least(0.99)),
        ),
        ("score_correlation", opt(s.score_correlation())),
    ];
    for k in [1, 5, 10] {
        let name: &'static str = match k {
            1 => "top1",
            5 => "top5",
            _ => "top10",
        };
        rows.push((name, s.topk_rate[k - 1].to_string()));
    }
    for (m, v) in rows {
        w.write_record([m, v.as_str()]).map_err(csv_failure)?;
    }
    w.flush()?;
    Ok(())
}

pub fn eval(a: EvalArgs) -> Result<(), Failure> {
    let methods = parse_methods(&a.method)?;
    let compounds = load_compounds(&a.input)?;
    let exec = execution(a.threads);
    let sums = with_threads(a.threads, || {
        evaluate_corpus(&compounds, &methods, SolveOptions::default(), exec)
    });
    fs::create_dir_all(&a.output)?;
    write_topk_csv(output(Some(&a.output.join("topk.csv")))?, &sums)?;
    write_instance_csv(output(Some(&a.output.join("instance.csv")))?, &sums)?;
    for s in &sums {
        write_summary(
            &a.output.join(format!("summary_{}.csv", s.method.name())),
            s,
        )?;
        eprintln!(
            "{:>9}  top1 {:.3}  top5 {:.3}",
            s.method.name(),
            s.topk_rate[0],
            s.topk_rate[4]
        );
    }
    let failed: usize = sums
        .iter()
        .flat_map(|s| &s.instances)
        .map(|m| m.failed)
        .sum();
    if failed > 0 {
        return Err(Failure::Partial(format!(
            "{failed} candidate solves failed"
        )));
    }
    Ok(())
}

/// Per-compound seconds of one series; `None` when any solve failed.
type Series = (String, Vec<(String, Option<f64>)>);

pub fn bench(a: BenchArgs) -> Result<(), Failure> {
    let methods = parse_methods(&a.method)?;
    let params = build_params(&a.build)?;
    let dirs = bundle_dirs(&a.input)?;
    let compounds = load_compounds(&a.input)?;
    let exec = execution(a.threads);
    let max_colors = SolveOptions::default().max_colors;

    let (build_times, method_times) = with_threads(a.threads, || {
        let build_times = par::map(exec, &dirs, |d| {
            let spectrum = Spectrum::load(d.join("spectrum.txt")).ok()?;
            let start = Instant::now();
            build_compound("bench", &spectrum, &params, Execution::Sequential).ok()?;
            Some(start.elapsed().as_secs_f64())
        });
        let method_times: Vec<Vec<Option<f64>>> = methods
            .iter()
            .map(|&m| {
                par::map(exec, &compounds, |c| {
                    c.candidates.iter().try_fold(0.0, |acc, cand| {
                        m.solve(&cand.graph, max_colors)
                            .ok()
                            .map(|s| acc + s.elapsed.as_secs_f64())
                    })
                })
            })
            .collect();
        (build_times, method_times)
    });

    let names: Vec<String> = compounds.iter().map(|c| c.name.clone()).collect();
    let label = |times: Vec<Option<f64>>| -> Vec<(String, Option<f64>)> {
        names.iter().cloned().zip(times).collect()
    };
    let mut series: Vec<Series> = vec![("build".into(), label(build_times))];
    for (m, t) in methods.iter().zip(method_times) {
        series.push((m.name().to_string(), label(t)));
    }

    let mut w = csv::Writer::from_writer(output(a.output.as_deref())?);
    w.write_record([
        "series",
        "position",
        "fraction",
        "compound",
        "seconds",
        "cumulative_seconds",
    ])
    .map_err(csv_failure)?;
    let mut failed = 0;
    for (name, times) in series {
        let mut ok: Vec<(String, f64)> = Vec::new();
        for (c, t) in times {
            match t {
                Some(t) => ok.push((c, t)),
                None => failed += 1,
            }
        }
        ok.sort_by(|x, y| x.1.total_cmp(&y.1).then_with(|| x.0.cmp(&y.0)));
        let n = ok.len();
        let mut cum = 0.0;
        for (i, (c, t)) in ok.into_iter().enumerate() {
            cum += t;
            w.write_record([
                name.clone(),
                (i + 1).to_string(),
                ((i + 1) as f64 / n as f64).to_string(),
                c,
                t.to_string(),
                cum.to_string(),
            ])
            .map_err(csv_failure)?;
        }
        eprintln!("{name:>9}  {n} instances  {cum:.4} s total");
    }
    w.flush()?;
    if failed > 0 {
        return Err(Failure::Partial(format!(
            "{failed} instances failed and were left out"
        )));
    }
    Ok(())
}
