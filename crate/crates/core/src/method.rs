use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::exact::{solve_exact_dp, DEFAULT_MAX_COLORS};
use crate::graph::{ColoredDag, SubtreeSolution};
use crate::heuristics::{solve_maximum, Heuristic};

/// Solver identifiers accepted everywhere a method is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Heuristic(Heuristic),
    Maximum,
    Exact,
}

impl Method {
    /// The seven heuristics, then `max`, then `exact`.
    pub fn all() -> Vec<Method> {
        let mut v: Vec<Method> = Heuristic::ALL
            .iter()
            .map(|&h| Method::Heuristic(h))
            .collect();
        v.push(Method::Maximum);
        v.push(Method::Exact);
        v
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Heuristic(h) => h.name(),
            Method::Maximum => "max",
            Method::Exact => "exact",
        }
    }

    /// Solves `g` under the default postprocessing policy and times it.
    pub fn solve(self, g: &ColoredDag, max_colors: usize) -> Result<Solved> {
        let start = Instant::now();
        let (tree, per_heuristic) = match self {
            Method::Heuristic(h) => (h.solve(g), None),
            Method::Maximum => {
                let r = solve_maximum(g);
                (r.best, Some(r.scores))
            }
            Method::Exact => (solve_exact_dp(g, max_colors)?, None),
        };
        Ok(Solved {
            tree,
            elapsed: start.elapsed(),
            per_heuristic,
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" | "maximum" => Ok(Method::Maximum),
            "exact" => Ok(Method::Exact),
            other => other.parse().map(Method::Heuristic),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solved {
    pub tree: SubtreeSolution,
    pub elapsed: Duration,
    /// Per-heuristic scores, filled for [`Method::Maximum`].
    pub per_heuristic: Option<Vec<(Heuristic, f64)>>,
}

/// Exact-solver capacity shared by ranking and evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub max_colors: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_colors: DEFAULT_MAX_COLORS,
        }
    }
}
