use std::collections::BTreeMap;

use crate::graph::{ColoredDag, NodeId, SubtreeSolution};

/// Top-down greedy: extend a path from its current end by the heaviest edge
/// into an unused color; at a dead end restart from the root. Stops when the
/// root itself has no eligible edge. Every non-root inner node of the result
/// has exactly one child.
pub fn solve_topdown(g: &ColoredDag) -> SubtreeSolution {
    let root = g.root();
    let mut used = vec![false; g.color_count()];
    used[g.color(root)] = true;
    let mut tree = BTreeMap::new();
    let mut current = root;
    loop {
        let mut best: Option<(NodeId, f64)> = None;
        // out-edges are sorted by target, so strict `>` keeps the smaller id on ties
        for &(v, w) in g.out_edges(current) {
            if !used[g.color(v)] && best.map_or(true, |(_, bw)| w > bw) {
                best = Some((v, w));
            }
        }
        match best {
            Some((v, _)) => {
                used[g.color(v)] = true;
                tree.insert(v, current);
                current = v;
            }
            None if current == root => break,
            None => current = root,
        }
    }
    SubtreeSolution::from_parts(g, root, tree)
}
