use std::collections::BTreeSet;

use crate::builder::Formula;
use crate::graph::{ColoredDag, SubtreeSolution};

/// |A ∩ B| / |A ∪ B|, and 1 when both sets are empty.
pub fn jaccard<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> f64 {
    let union = a.union(b).count();
    if union == 0 {
        return 1.0;
    }
    a.intersection(b).count() as f64 / union as f64
}

/// Label of the edge `parent -> child`: the formula difference when both
/// labels parse as formulas, otherwise `parent>child`.
pub fn loss_label(parent: &str, child: &str) -> String {
    match (parent.parse::<Formula>(), child.parse::<Formula>()) {
        (Ok(p), Ok(c)) => match p.checked_sub(&c) {
            Some(d) => d.to_string(),
            None => format!("{parent}>{child}"),
        },
        _ => format!("{parent}>{child}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureComparison {
    pub jaccard_fragments: f64,
    pub jaccard_losses: f64,
    pub heuristic_size: usize,
    pub exact_size: usize,
}

fn fragments(g: &ColoredDag, t: &SubtreeSolution) -> BTreeSet<String> {
    t.nodes()
        .into_iter()
        .map(|v| g.label(v).to_string())
        .collect()
}

fn losses(g: &ColoredDag, t: &SubtreeSolution) -> BTreeSet<String> {
    t.edges()
        .map(|(p, c)| loss_label(g.label(p), g.label(c)))
        .collect()
}

pub fn compare_structures(
    heuristic: &SubtreeSolution,
    exact: &SubtreeSolution,
    g: &ColoredDag,
) -> StructureComparison {
    StructureComparison {
        jaccard_fragments: jaccard(&fragments(g, heuristic), &fragments(g, exact)),
        jaccard_losses: jaccard(&losses(g, heuristic), &losses(g, exact)),
        heuristic_size: heuristic.size(),
        exact_size: exact.size(),
    }
}

/// Sample Pearson correlation; `None` for fewer than two points or zero
/// variance in either coordinate.
pub fn pearson(pairs: &[(f64, f64)]) -> Option<f64> {
    let n = pairs.len();
    if n < 2 {
        return None;
    }
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n as f64;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in pairs {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return None;
    }
    Some((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}
