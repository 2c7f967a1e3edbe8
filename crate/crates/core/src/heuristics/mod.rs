//! Greedy lower-bound solvers.
//!
//! All solvers expect a DAG with an order-preserving coloring whose root is
//! the unique source; the builder produces transitive graphs as well. Ties
//! are broken towards the smaller target id, then the smaller source id.

mod critical_path;
mod insertion;
mod kruskal;
mod prim;
mod topdown;

use std::fmt;
use std::str::FromStr;

pub use critical_path::{
    solve_critical_path_1, solve_critical_path_2, solve_critical_path_3, CriticalPathScores,
};
pub use insertion::{solve_insertion, solve_insertion_traced, InsertionState};
pub use kruskal::solve_kruskal;
pub use prim::solve_prim;
pub use topdown::solve_topdown;

use crate::error::Error;
use crate::graph::{ColoredDag, SubtreeSolution};
use crate::postprocess::remove_dangling_subtrees;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Heuristic {
    Kruskal,
    Prim,
    Insertion,
    TopDown,
    Cp1,
    Cp2,
    Cp3,
}

impl Heuristic {
    pub const ALL: [Heuristic; 7] = [
        Heuristic::Kruskal,
        Heuristic::Prim,
        Heuristic::Insertion,
        Heuristic::TopDown,
        Heuristic::Cp1,
        Heuristic::Cp2,
        Heuristic::Cp3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Heuristic::Kruskal => "kruskal",
            Heuristic::Prim => "prim",
            Heuristic::Insertion => "insertion",
            Heuristic::TopDown => "topdown",
            Heuristic::Cp1 => "cp1",
            Heuristic::Cp2 => "cp2",
            Heuristic::Cp3 => "cp3",
        }
    }

    /// Whether the default evaluation protocol applies RDS after this
    /// heuristic. The critical-path variants run without it.
    pub fn uses_rds(self) -> bool {
        !matches!(self, Heuristic::Cp1 | Heuristic::Cp2 | Heuristic::Cp3)
    }

    /// Runs the heuristic without postprocessing.
    pub fn solve_raw(self, g: &ColoredDag) -> SubtreeSolution {
        match self {
            Heuristic::Kruskal => solve_kruskal(g),
            Heuristic::Prim => solve_prim(g),
            Heuristic::Insertion => solve_insertion(g),
            Heuristic::TopDown => solve_topdown(g),
            Heuristic::Cp1 => solve_critical_path_1(g),
            Heuristic::Cp2 => solve_critical_path_2(g),
            Heuristic::Cp3 => solve_critical_path_3(g),
        }
    }

    /// Runs the heuristic followed by RDS where [`Heuristic::uses_rds`] says so.
    pub fn solve(self, g: &ColoredDag) -> SubtreeSolution {
        let t = self.solve_raw(g);
        if self.uses_rds() {
            remove_dangling_subtrees(g, &t)
        } else {
            t
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Heuristic::ALL
            .into_iter()
            .find(|h| h.name() == s)
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct MaximumResult {
    pub best: SubtreeSolution,
    pub winner: Heuristic,
    /// Score of every heuristic, in [`Heuristic::ALL`] order.
    pub scores: Vec<(Heuristic, f64)>,
}

/// Runs all seven heuristics under the default RDS policy and keeps the
/// best tree. Ties go to the heuristic listed first.
pub fn solve_maximum(g: &ColoredDag) -> MaximumResult {
    let mut best: Option<(Heuristic, SubtreeSolution)> = None;
    let mut scores = Vec::with_capacity(Heuristic::ALL.len());
    for h in Heuristic::ALL {
        let t = h.solve(g);
        scores.push((h, t.score()));
        if best.as_ref().map_or(true, |(_, b)| t.score() > b.score()) {
            best = Some((h, t));
        }
    }
    let (winner, best) = best.expect("at least one heuristic ran");
    MaximumResult {
        best,
        winner,
        scores,
    }
}
