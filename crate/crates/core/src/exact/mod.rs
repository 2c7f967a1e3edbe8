//! Exact optimum at desk scale, and an LP-format model for external solvers.

mod dp;
mod lp;

pub use dp::{optimum_score, solve_exact_dp, ColorSubsetTable, DEFAULT_MAX_COLORS};
pub use lp::{export_lp, LpStats};
