use crate::builder::{CompoundInstance, Formula};
use crate::exact::{solve_exact_dp, DEFAULT_MAX_COLORS};
use crate::method::Method;
use crate::par::{self, Execution};

use super::candidate_order;

/// Largest observed `exact - heuristic` over exactly solved candidates,
/// never below 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapEstimate {
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KBestOptions {
    pub max_colors: usize,
    /// Fixed Δ instead of the running estimate; `f64::INFINITY` disables
    /// pruning.
    pub delta_override: Option<f64>,
}

impl Default for KBestOptions {
    fn default() -> Self {
        KBestOptions {
            max_colors: DEFAULT_MAX_COLORS,
            delta_override: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KBestEntry {
    pub index: usize,
    pub formula: Formula,
    pub mass_error_ppm: f64,
    pub heuristic_score: f64,
    pub exact_score: f64,
}

#[derive(Debug, Clone)]
pub struct KBestResult {
    /// Up to k candidates, by exact score descending.
    pub top: Vec<KBestEntry>,
    pub exact_solves: usize,
    pub candidates: usize,
    pub gap: GapEstimate,
    /// Fewer than k rankable candidates.
    pub short: bool,
    /// Candidates dropped because a solver refused them.
    pub failed: usize,
}

fn by_order(a: &KBestEntry, b: &KBestEntry) -> std::cmp::Ordering {
    candidate_order(
        (a.exact_score, a.mass_error_ppm, &a.formula),
        (b.exact_score, b.mass_error_ppm, &b.formula),
    )
}

/// k best candidates by exact score, solving exactly only as far down the
/// heuristic ranking as the running gap estimate requires.
///
/// The heuristic runs on all candidates (in parallel under `exec`), as does
/// the warmup batch; the scan after it is sequential. Scanning stops at the
/// first candidate whose heuristic score plus Δ falls below the current k-th
/// best exact score.
pub fn kbest_exact_with_gap(
    c: &CompoundInstance,
    k: usize,
    warmup: usize,
    heuristic: Method,
    opts: KBestOptions,
    exec: Execution,
) -> KBestResult {
    let k = k.max(1);
    let warmup = warmup.max(k);
    let heur = par::map(exec, &c.candidates, |cand| {
        heuristic
            .solve(&cand.graph, opts.max_colors)
            .map(|s| s.tree.score())
    });
    let mut failed = 0;
    let mut order: Vec<(usize, f64)> = Vec::new();
    for (i, h) in heur.into_iter().enumerate() {
        match h {
            Ok(s) => order.push((i, s)),
            Err(_) => failed += 1,
        }
    }
    order.sort_by(|a, b| {
        let (ca, cb) = (&c.candidates[a.0], &c.candidates[b.0]);
        candidate_order(
            (a.1, ca.mass_error_ppm, &ca.formula),
            (b.1, cb.mass_error_ppm, &cb.formula),
        )
    });

    let mut delta = opts.delta_override.unwrap_or(0.0);
    let mut solved: Vec<KBestEntry> = Vec::new();
    let mut exact_solves = 0;
    let mut record =
        |i: usize, h: f64, e: Option<f64>, solved: &mut Vec<KBestEntry>, delta: &mut f64| match e {
            Some(e) => {
                if opts.delta_override.is_none() {
                    *delta = delta.max(e - h);
                }
                let cand = &c.candidates[i];
                solved.push(KBestEntry {
                    index: i,
                    formula: cand.formula,
                    mass_error_ppm: cand.mass_error_ppm,
                    heuristic_score: h,
                    exact_score: e,
                });
            }
            None => failed += 1,
        };

    let head = &order[..warmup.min(order.len())];
    let exact_head = par::map(exec, head, |&(i, _)| {
        solve_exact_dp(&c.candidates[i].graph, opts.max_colors)
            .ok()
            .map(|t| t.score())
    });
    exact_solves += head.len();
    for (&(i, h), e) in head.iter().zip(exact_head) {
        record(i, h, e, &mut solved, &mut delta);
    }

    for &(i, h) in &order[head.len()..] {
        if solved.len() >= k {
            solved.sort_by(by_order);
            let threshold = solved[k - 1].exact_score;
            if h + delta < threshold {
                break;
            }
        }
        let e = solve_exact_dp(&c.candidates[i].graph, opts.max_colors)
            .ok()
            .map(|t| t.score());
        exact_solves += 1;
        record(i, h, e, &mut solved, &mut delta);
    }

    solved.sort_by(by_order);
    let short = solved.len() < k;
    solved.truncate(k);
    KBestResult {
        top: solved,
        exact_solves,
        candidates: c.candidates.len(),
        gap: GapEstimate {
            delta: delta.max(0.0),
        },
        short,
        failed,
    }
}
