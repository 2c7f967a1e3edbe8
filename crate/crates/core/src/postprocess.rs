//! Score-improving prunings applied to a finished tree.

use std::collections::BTreeMap;

use crate::graph::{ColoredDag, NodeId, SubtreeSolution};

/// `D[u]` for every tree node: the best total weight of a subtree hanging
/// below `u` that keeps `u`, computed as
/// `D[u] = sum over children v of max(0, w(u, v) + D[v])`.
#[derive(Debug, Clone, PartialEq)]
pub struct RdsScores {
    pub d: BTreeMap<NodeId, f64>,
}

impl RdsScores {
    pub fn compute(g: &ColoredDag, t: &SubtreeSolution) -> Self {
        let children = t.children();
        let mut d: BTreeMap<NodeId, f64> = BTreeMap::new();
        for u in post_order(t.root(), &children) {
            let total = children.get(&u).map_or(0.0, |kids| {
                kids.iter().map(|&v| (edge(g, u, v) + d[&v]).max(0.0)).sum()
            });
            d.insert(u, total);
        }
        RdsScores { d }
    }
}

fn edge(g: &ColoredDag, u: NodeId, v: NodeId) -> f64 {
    g.weight(u, v).expect("tree edge exists in graph")
}

fn post_order(root: NodeId, children: &BTreeMap<NodeId, Vec<NodeId>>) -> Vec<NodeId> {
    let mut order = Vec::new();
    let mut stack = vec![(root, false)];
    while let Some((u, expanded)) = stack.pop() {
        if expanded {
            order.push(u);
            continue;
        }
        stack.push((u, true));
        if let Some(kids) = children.get(&u) {
            stack.extend(kids.iter().rev().map(|&v| (v, false)));
        }
    }
    order
}

fn rebuild(g: &ColoredDag, root: NodeId, parent: BTreeMap<NodeId, NodeId>) -> SubtreeSolution {
    SubtreeSolution::from_parts(g, root, parent)
}

/// RDE: repeatedly removes leaves attached by a negative edge.
pub fn remove_dangling_edges(g: &ColoredDag, t: &SubtreeSolution) -> SubtreeSolution {
    let mut parent = t.parents().clone();
    let mut child_count: BTreeMap<NodeId, usize> = BTreeMap::new();
    for &p in parent.values() {
        *child_count.entry(p).or_default() += 1;
    }
    let mut work: Vec<NodeId> = parent
        .keys()
        .copied()
        .filter(|v| !child_count.contains_key(v))
        .collect();
    while let Some(v) = work.pop() {
        let p = parent[&v];
        if edge(g, p, v) >= 0.0 {
            continue;
        }
        parent.remove(&v);
        let left = child_count.get_mut(&p).expect("parent has children");
        *left -= 1;
        if *left == 0 && p != t.root() {
            work.push(p);
        }
    }
    rebuild(g, t.root(), parent)
}

/// RDS: removes every edge `uv` with `w(u, v) + D[v] < 0` together with the
/// subtree below `v`. Edges with a sum of exactly zero stay.
pub fn remove_dangling_subtrees(g: &ColoredDag, t: &SubtreeSolution) -> SubtreeSolution {
    let scores = RdsScores::compute(g, t);
    let children = t.children();
    let mut parent = BTreeMap::new();
    let mut stack = vec![t.root()];
    while let Some(u) = stack.pop() {
        for &v in children.get(&u).into_iter().flatten() {
            if edge(g, u, v) + scores.d[&v] >= 0.0 {
                parent.insert(v, u);
                stack.push(v);
            }
        }
    }
    rebuild(g, t.root(), parent)
}
