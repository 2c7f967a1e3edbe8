use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap};

use crate::graph::{ColoredDag, NodeId, SubtreeSolution};

#[derive(Debug, Clone, Copy)]
struct Candidate {
    weight: f64,
    target: NodeId,
    source: NodeId,
}

impl Candidate {
    fn key(&self) -> (Reverse<NodeId>, Reverse<NodeId>) {
        (Reverse(self.target), Reverse(self.source))
    }
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then_with(|| self.key().cmp(&other.key()))
    }
}

/// Prim-style greedy: grow from the root, always adding the heaviest edge
/// into a node of an unused color, until no such edge is left. Negative
/// edges are added too.
pub fn solve_prim(g: &ColoredDag) -> SubtreeSolution {
    let mut used = vec![false; g.color_count()];
    let mut heap = BinaryHeap::new();
    let mut tree = BTreeMap::new();

    let push_out = |heap: &mut BinaryHeap<Candidate>, used: &[bool], u: NodeId| {
        for &(v, w) in g.out_edges(u) {
            if !used[g.color(v)] {
                heap.push(Candidate {
                    weight: w,
                    target: v,
                    source: u,
                });
            }
        }
    };

    used[g.color(g.root())] = true;
    push_out(&mut heap, &used, g.root());
    while let Some(c) = heap.pop() {
        if used[g.color(c.target)] {
            continue;
        }
        used[g.color(c.target)] = true;
        tree.insert(c.target, c.source);
        push_out(&mut heap, &used, c.target);
    }
    SubtreeSolution::from_parts(g, g.root(), tree)
}
