//! CSV output. Column orders are fixed:
//!
//! ```text
//! topk:     method,k,rate,pp_vs_exact
//! instance: compound,method,metric,value
//! ranking:  compound,method,rank,formula,mass_error_ppm,score,seconds,tree_size,truth
//! kbest:    compound,position,formula,heuristic_score,exact_score,exact_solves,candidates,delta,short
//! ```
//!
//! Instance metrics are `truth_rank`, `heuristic_score`, `exact_score`,
//! `relative_score`, `heuristic_size`, `exact_size`, `jaccard_fragments`,
//! `jaccard_losses`, `failed` and `seconds`; rows whose value is undefined
//! are omitted.

use std::io::Write;

use crate::builder::Formula;
use crate::error::{Error, Result};

use super::eval::EvalSummary;
use super::kbest::KBestResult;
use super::CandidateRanking;

fn csv_err(e: csv::Error) -> Error {
    Error::Config(format!("csv: {e}"))
}

pub fn write_topk_csv(out: impl Write, summaries: &[EvalSummary]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["method", "k", "rate", "pp_vs_exact"])
        .map_err(csv_err)?;
    for s in summaries {
        for (i, rate) in s.topk_rate.iter().enumerate() {
            let pp = s
                .pp_vs_exact
                .get(i)
                .map(|x| x.to_string())
                .unwrap_or_default();
            w.write_record([
                s.method.name().to_string(),
                (i + 1).to_string(),
                rate.to_string(),
                pp,
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_instance_csv(out: impl Write, summaries: &[EvalSummary]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["compound", "method", "metric", "value"])
        .map_err(csv_err)?;
    for s in summaries {
        let method = s.method.name();
        for m in &s.instances {
            let mut rows: Vec<(&str, String)> = Vec::new();
            if let Some(r) = m.truth_rank {
                rows.push(("truth_rank", r.to_string()));
            }
            if let Some(t) = &m.truth {
                rows.push(("heuristic_score", t.heuristic_score.to_string()));
                rows.push(("exact_score", t.exact_score.to_string()));
                if let Some(r) = t.relative {
                    rows.push(("relative_score", r.to_string()));
                }
                rows.push(("heuristic_size", t.heuristic_size.to_string()));
                rows.push(("exact_size", t.exact_size.to_string()));
                rows.push(("jaccard_fragments", t.jaccard_fragments.to_string()));
                rows.push(("jaccard_losses", t.jaccard_losses.to_string()));
            }
            rows.push(("failed", m.failed.to_string()));
            rows.push(("seconds", m.seconds.to_string()));
            for (metric, value) in rows {
                w.write_record([m.compound.as_str(), method, metric, value.as_str()])
                    .map_err(csv_err)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// One block of rows per `(compound, ranking, truth)`.
pub fn write_ranking_csv(
    out: impl Write,
    rows: &[(String, CandidateRanking, Option<Formula>)],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "compound",
        "method",
        "rank",
        "formula",
        "mass_error_ppm",
        "score",
        "seconds",
        "tree_size",
        "truth",
    ])
    .map_err(csv_err)?;
    for (compound, ranking, truth) in rows {
        for (i, e) in ranking.entries.iter().enumerate() {
            w.write_record([
                compound.clone(),
                ranking.method.name().to_string(),
                (i + 1).to_string(),
                e.formula.to_string(),
                e.mass_error_ppm.to_string(),
                e.score.to_string(),
                e.elapsed.as_secs_f64().to_string(),
                e.tree.size().to_string(),
                (Some(e.formula) == *truth).to_string(),
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_kbest_csv(out: impl Write, rows: &[(String, KBestResult)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "compound",
        "position",
        "formula",
        "heuristic_score",
        "exact_score",
        "exact_solves",
        "candidates",
        "delta",
        "short",
    ])
    .map_err(csv_err)?;
    for (compound, r) in rows {
        for (i, e) in r.top.iter().enumerate() {
            w.write_record([
                compound.clone(),
                (i + 1).to_string(),
                e.formula.to_string(),
                e.heuristic_score.to_string(),
                e.exact_score.to_string(),
                r.exact_solves.to_string(),
                r.candidates.to_string(),
                r.gap.delta.to_string(),
                r.short.to_string(),
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}
