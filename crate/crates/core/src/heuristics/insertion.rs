use std::collections::BTreeMap;

use crate::graph::{ColoredDag, NodeId, SubtreeSolution};

/// Incremental bookkeeping for insertion-style heuristics.
///
/// For a node `v` outside the tree, `in_score(v)` is the heaviest edge from a
/// tree node into `v` (`None` when there is no such edge) and `out_score(v)`
/// is the total gain from rerouting tree nodes `x` under `v`, i.e. the sum of
/// `max(0, w(vx) - w(p(x), x))` over tree nodes `x` with an edge `vx`. The
/// gain of attaching `v` under its best tree parent is `in + out`.
#[derive(Debug, Clone)]
pub struct InsertionState<'g> {
    g: &'g ColoredDag,
    in_tree: Vec<bool>,
    used: Vec<bool>,
    parent: Vec<Option<NodeId>>,
    in_score: Vec<Option<f64>>,
    out_score: Vec<f64>,
    tree_nodes: Vec<NodeId>,
    score: f64,
}

impl<'g> InsertionState<'g> {
    pub fn new(g: &'g ColoredDag) -> Self {
        let n = g.node_count();
        let root = g.root();
        let mut s = InsertionState {
            g,
            in_tree: vec![false; n],
            used: vec![false; g.color_count()],
            parent: vec![None; n],
            in_score: vec![None; n],
            out_score: vec![0.0; n],
            tree_nodes: vec![root],
            score: 0.0,
        };
        s.in_tree[root] = true;
        s.used[g.color(root)] = true;
        for &(v, w) in g.out_edges(root) {
            s.in_score[v] = Some(w);
        }
        s
    }

    pub fn color_used(&self, c: usize) -> bool {
        self.used[c]
    }

    pub fn used_colors(&self) -> &[bool] {
        &self.used
    }

    pub fn in_tree(&self, v: NodeId) -> bool {
        self.in_tree[v]
    }

    pub fn in_score(&self, v: NodeId) -> Option<f64> {
        self.in_score[v]
    }

    pub fn out_score(&self, v: NodeId) -> f64 {
        self.out_score[v]
    }

    /// Tree nodes in insertion order, root first.
    pub fn tree_nodes(&self) -> &[NodeId] {
        &self.tree_nodes
    }

    pub fn is_candidate(&self, v: NodeId) -> bool {
        !self.in_tree[v] && !self.used[self.g.color(v)]
    }

    /// Heaviest tree parent of `v`; ties go to the smaller id.
    pub fn best_parent(&self, v: NodeId) -> Option<(NodeId, f64)> {
        let mut best: Option<(NodeId, f64)> = None;
        for &u in &self.tree_nodes {
            if let Some(w) = self.g.weight(u, v) {
                let better = match best {
                    None => true,
                    Some((bu, bw)) => w > bw || (w == bw && u < bu),
                };
                if better {
                    best = Some((u, w));
                }
            }
        }
        best
    }

    /// Attaches `v` under `u`, reroutes every tree node that gains from
    /// hanging under `v`, and updates the in/out tables.
    pub fn insert(&mut self, v: NodeId, u: NodeId) {
        let g = self.g;
        let w_uv = g.weight(u, v).expect("attachment edge exists");
        self.in_tree[v] = true;
        self.used[g.color(v)] = true;
        self.parent[v] = Some(u);
        self.tree_nodes.push(v);
        self.score += w_uv;

        for &(x, w) in g.out_edges(v) {
            let cur = self.in_score[x];
            if cur.map_or(true, |c| w > c) {
                self.in_score[x] = Some(w);
            }
        }
        for &(y, w) in g.in_edges(v) {
            if w > w_uv {
                self.out_score[y] += w - w_uv;
            }
        }

        for &(x, w_vx) in g.out_edges(v) {
            if !self.in_tree[x] {
                continue;
            }
            let Some(y) = self.parent[x] else { continue };
            let w_yx = g.weight(y, x).expect("tree edge exists");
            if w_vx > w_yx {
                for &(z, w_zx) in g.in_edges(x) {
                    let before = (w_zx - w_yx).max(0.0);
                    let after = (w_zx - w_vx).max(0.0);
                    if before != after {
                        self.out_score[z] += after - before;
                    }
                }
                self.parent[x] = Some(v);
                self.score += w_vx - w_yx;
            }
        }
    }

    pub fn into_solution(self) -> SubtreeSolution {
        let tree: BTreeMap<NodeId, NodeId> = self
            .parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p)))
            .collect();
        SubtreeSolution::from_parts(self.g, self.g.root(), tree)
    }

    /// Running score maintained by `insert`.
    pub fn score(&self) -> f64 {
        self.score
    }
}

/// Insertion heuristic: repeatedly attach the node with the largest
/// `in + out` gain (over all unused colors), rerouting tree nodes through it
/// where that increases the score. Continues while any node is attachable,
/// even at negative gain.
pub fn solve_insertion(g: &ColoredDag) -> SubtreeSolution {
    solve_insertion_traced(g).0
}

/// Like [`solve_insertion`] but also returns the inserted nodes in order.
pub fn solve_insertion_traced(g: &ColoredDag) -> (SubtreeSolution, Vec<NodeId>) {
    let mut state = InsertionState::new(g);
    let mut sequence = Vec::new();
    loop {
        let mut best: Option<(NodeId, f64)> = None;
        for v in 0..g.node_count() {
            if !state.is_candidate(v) {
                continue;
            }
            let Some(inw) = state.in_score(v) else {
                continue;
            };
            let gain = inw + state.out_score(v);
            if best.map_or(true, |(_, bg)| gain > bg) {
                best = Some((v, gain));
            }
        }
        let Some((v, _)) = best else { break };
        let (u, _) = state
            .best_parent(v)
            .expect("candidate with finite in-score has a tree parent");
        state.insert(v, u);
        sequence.push(v);
    }
    (state.into_solution(), sequence)
}
