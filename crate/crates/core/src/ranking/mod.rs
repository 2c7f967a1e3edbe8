//! Candidate ranking, the gap-pruned k-best exact procedure, and corpus
//! evaluation metrics.

mod eval;
mod kbest;
mod metrics;
mod report;

use std::cmp::Ordering;
use std::time::Duration;

use crate::builder::{CompoundInstance, Formula};
use crate::graph::SubtreeSolution;
use crate::method::{Method, SolveOptions};
use crate::par::{self, Execution};

pub use eval::{
    evaluate_compound, evaluate_corpus, summarize, CompoundOutcome, EvalSummary, InstanceMetrics,
    TruthComparison, MAX_TOPK,
};
pub use kbest::{kbest_exact_with_gap, GapEstimate, KBestEntry, KBestOptions, KBestResult};
pub use metrics::{compare_structures, jaccard, loss_label, pearson, StructureComparison};
pub use report::{write_instance_csv, write_kbest_csv, write_ranking_csv, write_topk_csv};

#[derive(Debug, Clone)]
pub struct RankedCandidate {
    /// Position in `CompoundInstance::candidates`.
    pub index: usize,
    pub formula: Formula,
    pub mass_error_ppm: f64,
    pub score: f64,
    pub elapsed: Duration,
    pub tree: SubtreeSolution,
}

#[derive(Debug, Clone)]
pub struct FailedCandidate {
    pub index: usize,
    pub formula: Formula,
    pub error: String,
}

#[derive(Debug, Clone)]
pub struct CandidateRanking {
    pub method: Method,
    pub entries: Vec<RankedCandidate>,
    /// Candidates the solver refused; they take no part in the ranking.
    pub failed: Vec<FailedCandidate>,
    pub truth_rank: Option<usize>,
}

impl CandidateRanking {
    pub fn top(&self, k: usize) -> &[RankedCandidate] {
        &self.entries[..k.min(self.entries.len())]
    }
}

/// Candidate order: score descending, then smaller absolute mass error, then
/// formula string.
pub fn candidate_order(a: (f64, f64, &Formula), b: (f64, f64, &Formula)) -> Ordering {
    b.0.total_cmp(&a.0)
        .then(a.1.abs().total_cmp(&b.1.abs()))
        .then_with(|| a.2.to_string().cmp(&b.2.to_string()))
}

/// 1 + number of scores strictly greater than `truth`.
pub fn truth_rank_of(scores: impl IntoIterator<Item = f64>, truth: f64) -> usize {
    1 + scores.into_iter().filter(|&s| s > truth).count()
}

/// Solves every candidate with `method` and sorts by score.
pub fn rank_candidates(
    c: &CompoundInstance,
    method: Method,
    opts: SolveOptions,
    exec: Execution,
) -> CandidateRanking {
    let solved = par::map(exec, &c.candidates, |cand| {
        method.solve(&cand.graph, opts.max_colors)
    });
    let mut entries = Vec::new();
    let mut failed = Vec::new();
    for (index, (cand, r)) in c.candidates.iter().zip(solved).enumerate() {
        match r {
            Ok(s) => entries.push(RankedCandidate {
                index,
                formula: cand.formula,
                mass_error_ppm: cand.mass_error_ppm,
                score: s.tree.score(),
                elapsed: s.elapsed,
                tree: s.tree,
            }),
            Err(e) => failed.push(FailedCandidate {
                index,
                formula: cand.formula,
                error: e.to_string(),
            }),
        }
    }
    entries.sort_by(|a, b| {
        candidate_order(
            (a.score, a.mass_error_ppm, &a.formula),
            (b.score, b.mass_error_ppm, &b.formula),
        )
    });
    let truth_rank = c.truth_index().and_then(|t| {
        let ts = entries.iter().find(|e| e.index == t)?.score;
        Some(truth_rank_of(entries.iter().map(|e| e.score), ts))
    });
    CandidateRanking {
        method,
        entries,
        failed,
        truth_rank,
    }
}
