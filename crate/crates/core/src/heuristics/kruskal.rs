use std::collections::BTreeMap;

use crate::graph::{ColoredDag, NodeId, SubtreeSolution};
use crate::union_find::UnionFind;

/// Kruskal-style greedy: scan edges by decreasing weight and accept `uv` when
/// `v` has no tree parent yet and `u`, `v` lie in different components. All
/// nodes of one color start in the same component, so accepted edges never
/// join two nodes of equal color into one tree. Returns the root's component.
pub fn solve_kruskal(g: &ColoredDag) -> SubtreeSolution {
    let n = g.node_count();
    let mut edges: Vec<(NodeId, NodeId, f64)> = g.edges().collect();
    edges.sort_unstable_by(|a, b| b.2.total_cmp(&a.2).then(a.1.cmp(&b.1)).then(a.0.cmp(&b.0)));

    let mut uf = UnionFind::new(n);
    let mut first_of_color: Vec<Option<NodeId>> = vec![None; g.color_count()];
    for v in 0..n {
        match first_of_color[g.color(v)] {
            Some(f) => {
                uf.union(f, v);
            }
            None => first_of_color[g.color(v)] = Some(v),
        }
    }

    let mut parent: Vec<Option<(NodeId, f64)>> = vec![None; n];
    for (u, v, w) in edges {
        if v != g.root() && parent[v].is_none() && uf.union(u, v) {
            parent[v] = Some((u, w));
        }
    }

    let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for (v, p) in parent.iter().enumerate() {
        if let Some((u, _)) = p {
            children[*u].push(v);
        }
    }
    let mut tree = BTreeMap::new();
    let mut stack = vec![g.root()];
    while let Some(u) = stack.pop() {
        for &v in &children[u] {
            tree.insert(v, u);
            stack.push(v);
        }
    }
    SubtreeSolution::from_parts(g, g.root(), tree)
}
