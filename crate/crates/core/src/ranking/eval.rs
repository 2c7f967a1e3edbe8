use crate::builder::CompoundInstance;
use crate::graph::SubtreeSolution;
use crate::method::{Method, SolveOptions};
use crate::par::{self, Execution};

use super::metrics::{compare_structures, pearson};
use super::truth_rank_of;

/// Identification rates are reported for k = 1..=MAX_TOPK.
pub const MAX_TOPK: usize = 25;

/// Heuristic against exact on the truth candidate of one compound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruthComparison {
    pub heuristic_score: f64,
    pub exact_score: f64,
    /// `heuristic / exact`; 1 when both are 0, `None` when only exact is 0.
    pub relative: Option<f64>,
    pub heuristic_size: usize,
    pub exact_size: usize,
    pub jaccard_fragments: f64,
    pub jaccard_losses: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceMetrics {
    pub compound: String,
    pub candidates: usize,
    pub truth_rank: Option<usize>,
    pub truth: Option<TruthComparison>,
    pub failed: usize,
    pub seconds: f64,
}

/// Per-method results for one compound.
#[derive(Debug, Clone)]
pub struct CompoundOutcome {
    pub compound: String,
    pub has_truth: bool,
    pub per_method: Vec<(Method, InstanceMetrics)>,
}

#[derive(Debug, Clone)]
pub struct EvalSummary {
    pub method: Method,
    pub instances: Vec<InstanceMetrics>,
    /// `topk_rate[k - 1]`: fraction of all compounds whose truth formula
    /// ranks within the top k.
    pub topk_rate: Vec<f64>,
    /// Percentage points relative to the exact method at the same k.
    pub pp_vs_exact: Vec<f64>,
}

impl EvalSummary {
    pub fn compounds(&self) -> usize {
        self.instances.len()
    }

    /// Compounds whose truth formula is not among the candidates.
    pub fn excluded_no_truth(&self) -> usize {
        self.instances
            .iter()
            .filter(|m| m.truth_rank.is_none())
            .count()
    }

    pub fn comparisons(&self) -> impl Iterator<Item = &TruthComparison> + '_ {
        self.instances.iter().filter_map(|m| m.truth.as_ref())
    }

    pub fn relative_scores(&self) -> Vec<f64> {
        self.comparisons().filter_map(|t| t.relative).collect()
    }

    /// Truth instances with exact score 0 and heuristic score nonzero.
    pub fn relative_excluded(&self) -> usize {
        self.comparisons().filter(|t| t.relative.is_none()).count()
    }

    pub fn tree_size_pairs(&self) -> Vec<(usize, usize)> {
        self.comparisons()
            .map(|t| (t.heuristic_size, t.exact_size))
            .collect()
    }

    pub fn score_pairs(&self) -> Vec<(f64, f64)> {
        self.comparisons()
            .map(|t| (t.heuristic_score, t.exact_score))
            .collect()
    }

    pub fn jaccard_fragments(&self) -> Vec<f64> {
        self.comparisons().map(|t| t.jaccard_fragments).collect()
    }

    pub fn jaccard_losses(&self) -> Vec<f64> {
        self.comparisons().map(|t| t.jaccard_losses).collect()
    }

    pub fn mean_relative(&self) -> Option<f64> {
        let r = self.relative_scores();
        (!r.is_empty()).then(|| r.iter().sum::<f64>() / r.len() as f64)
    }

    /// Fraction of relative scores at or above `threshold`.
    pub fn fraction_relative_at_least(&self, threshold: f64) -> Option<f64> {
        let r = self.relative_scores();
        (!r.is_empty())
            .then(|| r.iter().filter(|&&x| x >= threshold).count() as f64 / r.len() as f64)
    }

    pub fn score_correlation(&self) -> Option<f64> {
        pearson(&self.score_pairs())
    }

    pub fn total_seconds(&self) -> f64 {
        self.instances.iter().map(|m| m.seconds).sum()
    }
}

struct Solved {
    scores: Vec<Option<f64>>,
    truth_tree: Option<SubtreeSolution>,
    failed: usize,
    seconds: f64,
}

fn solve_all(
    c: &CompoundInstance,
    method: Method,
    opts: SolveOptions,
    truth: Option<usize>,
) -> Solved {
    let mut scores = Vec::with_capacity(c.candidates.len());
    let mut truth_tree = None;
    let mut failed = 0;
    let mut seconds = 0.0;
    for (i, cand) in c.candidates.iter().enumerate() {
        match method.solve(&cand.graph, opts.max_colors) {
            Ok(s) => {
                seconds += s.elapsed.as_secs_f64();
                scores.push(Some(s.tree.score()));
                if Some(i) == truth {
                    truth_tree = Some(s.tree);
                }
            }
            Err(_) => {
                failed += 1;
                scores.push(None);
            }
        }
    }
    Solved {
        scores,
        truth_tree,
        failed,
        seconds,
    }
}

/// Runs the exact solver and every method on all candidates of `c`.
/// Exact results are computed once and reused if `methods` lists exact.
pub fn evaluate_compound(
    c: &CompoundInstance,
    methods: &[Method],
    opts: SolveOptions,
) -> CompoundOutcome {
    let truth = c.truth_index();
    let exact = solve_all(c, Method::Exact, opts, truth);
    let mut per_method = Vec::with_capacity(methods.len());
    for &m in methods {
        let own;
        let s = if m == Method::Exact {
            &exact
        } else {
            own = solve_all(c, m, opts, truth);
            &own
        };
        let truth_rank = truth.and_then(|t| {
            let ts = s.scores[t]?;
            Some(truth_rank_of(s.scores.iter().flatten().copied(), ts))
        });
        let comparison = match (truth, &s.truth_tree, &exact.truth_tree) {
            (Some(t), Some(ht), Some(et)) => {
                let g = &c.candidates[t].graph;
                let (h, e) = (ht.score(), et.score());
                let st = compare_structures(ht, et, g);
                let relative = if e == 0.0 {
                    (h == 0.0).then_some(1.0)
                } else {
                    Some(h / e)
                };
                Some(TruthComparison {
                    heuristic_score: h,
                    exact_score: e,
                    relative,
                    heuristic_size: st.heuristic_size,
                    exact_size: st.exact_size,
                    jaccard_fragments: st.jaccard_fragments,
                    jaccard_losses: st.jaccard_losses,
                })
            }
            _ => None,
        };
        per_method.push((
            m,
            InstanceMetrics {
                compound: c.name.clone(),
                candidates: c.candidates.len(),
                truth_rank,
                truth: comparison,
                failed: s.failed,
                seconds: s.seconds,
            },
        ));
    }
    CompoundOutcome {
        compound: c.name.clone(),
        has_truth: truth.is_some(),
        per_method,
    }
}

fn topk_rates(ranks: &[Option<usize>]) -> Vec<f64> {
    let n = ranks.len().max(1) as f64;
    (1..=MAX_TOPK)
        .map(|k| {
            ranks
                .iter()
                .filter(|r| matches!(r, Some(x) if *x <= k))
                .count() as f64
                / n
        })
        .collect()
}

/// Aggregates per-compound outcomes into one summary per method.
pub fn summarize(outcomes: &[CompoundOutcome], methods: &[Method]) -> Vec<EvalSummary> {
    let exact_ranks: Vec<Option<usize>> = outcomes
        .iter()
        .map(|o| {
            o.per_method
                .iter()
                .find(|(m, _)| *m == Method::Exact)
                .map(|(_, im)| im.truth_rank)
                .unwrap_or(None)
        })
        .collect();
    let has_exact = methods.contains(&Method::Exact);
    let exact_rates = topk_rates(&exact_ranks);
    methods
        .iter()
        .enumerate()
        .map(|(mi, &method)| {
            let instances: Vec<InstanceMetrics> = outcomes
                .iter()
                .map(|o| o.per_method[mi].1.clone())
                .collect();
            let ranks: Vec<Option<usize>> = instances.iter().map(|m| m.truth_rank).collect();
            let topk_rate = topk_rates(&ranks);
            let pp_vs_exact = if has_exact {
                topk_rate
                    .iter()
                    .zip(&exact_rates)
                    .map(|(a, b)| 100.0 * (a - b))
                    .collect()
            } else {
                Vec::new()
            };
            EvalSummary {
                method,
                instances,
                topk_rate,
                pp_vs_exact,
            }
        })
        .collect()
}

/// Evaluates all compounds (in parallel across compounds under `exec`) and
/// summarizes. Exact is always run as the reference; add it to `methods` to
/// obtain percentage-point differences.
pub fn evaluate_corpus(
    compounds: &[CompoundInstance],
    methods: &[Method],
    opts: SolveOptions,
    exec: Execution,
) -> Vec<EvalSummary> {
    let outcomes = par::map(exec, compounds, |c| evaluate_compound(c, methods, opts));
    summarize(&outcomes, methods)
}
