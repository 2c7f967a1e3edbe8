use std::collections::BTreeMap;

use crate::graph::{ColoredDag, NodeId, SubtreeSolution};

use super::insertion::InsertionState;

/// Critical-path scores for a fixed set of used colors.
///
/// `s[u]` is the weight of the heaviest path starting at `u` whose other
/// nodes all have unused colors (0 if no path has positive weight), and
/// `next[u]` is the second node of such a path.
#[derive(Debug, Clone)]
pub struct CriticalPathScores {
    pub s: Vec<f64>,
    pub next: Vec<Option<NodeId>>,
}

impl CriticalPathScores {
    /// Fills the table in one pass over `order`, which must list every edge
    /// target before its source (decreasing color rank does this for an
    /// order-preserving coloring).
    pub fn compute(g: &ColoredDag, order: &[NodeId], used: &[bool]) -> Self {
        let n = g.node_count();
        let mut s = vec![0.0; n];
        let mut next = vec![None; n];
        for &u in order {
            let mut best = 0.0;
            let mut arg = None;
            for &(v, w) in g.out_edges(u) {
                if used[g.color(v)] {
                    continue;
                }
                let cand = s[v] + w;
                if cand > best {
                    best = cand;
                    arg = Some(v);
                }
            }
            s[u] = best;
            next[u] = arg;
        }
        CriticalPathScores { s, next }
    }
}

struct PathTree<'g> {
    g: &'g ColoredDag,
    order: Vec<NodeId>,
    used: Vec<bool>,
    in_tree: Vec<bool>,
    parent: BTreeMap<NodeId, NodeId>,
}

impl<'g> PathTree<'g> {
    fn new(g: &'g ColoredDag) -> Self {
        let mut used = vec![false; g.color_count()];
        used[g.color(g.root())] = true;
        let mut in_tree = vec![false; g.node_count()];
        in_tree[g.root()] = true;
        PathTree {
            g,
            order: g.nodes_by_rank_desc(),
            used,
            in_tree,
            parent: BTreeMap::new(),
        }
    }

    /// Tree node with the largest positive critical-path score.
    fn best_start(&self, cps: &CriticalPathScores) -> Option<NodeId> {
        let mut best: Option<NodeId> = None;
        for u in 0..self.g.node_count() {
            if self.in_tree[u] && cps.s[u] > best.map_or(0.0, |b| cps.s[b]) {
                best = Some(u);
            }
        }
        best
    }

    fn attach(&mut self, u: NodeId, v: NodeId) -> bool {
        if self.used[self.g.color(v)] {
            return false;
        }
        self.used[self.g.color(v)] = true;
        self.in_tree[v] = true;
        self.parent.insert(v, u);
        true
    }

    fn finish(self) -> SubtreeSolution {
        SubtreeSolution::from_parts(self.g, self.g.root(), self.parent)
    }
}

/// Critical Path¹: repeatedly add the whole heaviest color-disjoint path
/// that starts in the tree, recomputing scores after each path.
pub fn solve_critical_path_1(g: &ColoredDag) -> SubtreeSolution {
    let mut t = PathTree::new(g);
    loop {
        let cps = CriticalPathScores::compute(g, &t.order, &t.used);
        let Some(start) = t.best_start(&cps) else {
            break;
        };
        let mut cur = start;
        while let Some(v) = cps.next[cur] {
            // only reachable with a non-order-preserving coloring
            if !t.attach(cur, v) {
                break;
            }
            cur = v;
        }
    }
    t.finish()
}

/// Critical Path²: like Critical Path¹ but adds only the first edge of the
/// heaviest path per iteration.
pub fn solve_critical_path_2(g: &ColoredDag) -> SubtreeSolution {
    let mut t = PathTree::new(g);
    loop {
        let cps = CriticalPathScores::compute(g, &t.order, &t.used);
        let Some(start) = t.best_start(&cps) else {
            break;
        };
        let v = cps.next[start].expect("positive score has a successor");
        t.attach(start, v);
    }
    t.finish()
}

/// Critical Path³: per iteration attach the node `v` under tree node `u`
/// maximizing the insertion gain of `uv` (edge weight plus rerouting bonus)
/// plus the critical-path score of `v`; reroute as in the insertion
/// heuristic. Stops once the best combined gain is not positive.
pub fn solve_critical_path_3(g: &ColoredDag) -> SubtreeSolution {
    let order = g.nodes_by_rank_desc();
    let mut state = InsertionState::new(g);
    loop {
        let cps = CriticalPathScores::compute(g, &order, state.used_colors());
        let mut best: Option<(f64, NodeId, NodeId)> = None;
        for &u in state.tree_nodes() {
            for &(v, w) in g.out_edges(u) {
                if !state.is_candidate(v) {
                    continue;
                }
                let gain = w + state.out_score(v) + cps.s[v];
                let better = match best {
                    None => true,
                    Some((bg, bv, bu)) => gain > bg || (gain == bg && (v, u) < (bv, bu)),
                };
                if better {
                    best = Some((gain, v, u));
                }
            }
        }
        match best {
            Some((gain, v, u)) if gain > 0.0 => state.insert(v, u),
            _ => break,
        }
    }
    state.into_solution()
}
