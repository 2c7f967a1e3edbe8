//! Problem data model: node-colored, edge-weighted, rooted DAGs and the
//! colorful subtrees solvers return on them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense node index, `0..n`.
pub type NodeId = usize;

/// Absolute tolerance for comparing scores.
pub const SCORE_EPS: f64 = 1e-9;

/// A color and its position in the color order. Edges of an
/// order-preserving graph always go from a smaller to a larger rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorId {
    pub index: usize,
    pub rank: usize,
}

/// Rooted, node-colored DAG with real edge weights. Immutable once built.
///
/// Out-edges are kept sorted by target id and in-edges by source id.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredDag {
    color_ranks: Vec<usize>,
    node_colors: Vec<usize>,
    labels: Vec<String>,
    out: Vec<Vec<(NodeId, f64)>>,
    inc: Vec<Vec<(NodeId, f64)>>,
    root: NodeId,
    edge_count: usize,
}

impl ColoredDag {
    pub fn node_count(&self) -> usize {
        self.node_colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn color_count(&self) -> usize {
        self.color_ranks.len()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    /// Color index of node `v`.
    pub fn color(&self, v: NodeId) -> usize {
        self.node_colors[v]
    }

    pub fn color_rank(&self, color: usize) -> usize {
        self.color_ranks[color]
    }

    /// Rank of the color of node `v`.
    pub fn rank(&self, v: NodeId) -> usize {
        self.color_ranks[self.node_colors[v]]
    }

    pub fn colors(&self) -> impl Iterator<Item = ColorId> + '_ {
        self.color_ranks
            .iter()
            .enumerate()
            .map(|(index, &rank)| ColorId { index, rank })
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn out_edges(&self, u: NodeId) -> &[(NodeId, f64)] {
        &self.out[u]
    }

    pub fn in_edges(&self, v: NodeId) -> &[(NodeId, f64)] {
        &self.inc[v]
    }

    /// Weight of edge `uv`, if present.
    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        let out = &self.out[u];
        out.binary_search_by_key(&v, |&(t, _)| t)
            .ok()
            .map(|i| out[i].1)
    }

    /// All edges as `(from, to, weight)`, ordered by source then target.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, es)| es.iter().map(move |&(v, w)| (u, v, w)))
    }

    /// Nodes sorted by decreasing color rank (ties: larger id first). For an
    /// order-preserving coloring every edge target precedes its source.
    pub fn nodes_by_rank_desc(&self) -> Vec<NodeId> {
        let mut order: Vec<NodeId> = (0..self.node_count()).collect();
        order.sort_unstable_by(|&a, &b| self.rank(b).cmp(&self.rank(a)).then(b.cmp(&a)));
        order
    }

    /// True iff `rank(c(u)) < rank(c(v))` for every edge `uv`.
    pub fn is_order_preserving(&self) -> bool {
        self.first_order_violation().is_none()
    }

    pub(crate) fn first_order_violation(&self) -> Option<(NodeId, NodeId)> {
        self.edges()
            .find(|&(u, v, _)| self.rank(u) >= self.rank(v))
            .map(|(u, v, _)| (u, v))
    }

    /// Checks the requested structural properties and returns every violation
    /// found. An empty report means all requested properties hold.
    pub fn validate(&self, checks: Checks) -> Vec<Violation> {
        let mut report = Vec::new();
        if checks.acyclic {
            if let Some(nodes) = self.cyclic_nodes() {
                report.push(Violation::Cycle { nodes });
            }
        }
        if checks.unique_source {
            if !self.inc[self.root].is_empty() {
                report.push(Violation::RootHasParent { root: self.root });
            }
            let seen = self.reachable_from(self.root);
            for (v, &s) in seen.iter().enumerate() {
                if !s {
                    report.push(Violation::Unreachable { node: v });
                }
            }
        }
        if checks.transitive {
            let mut missing = BTreeMap::new();
            for (u, v, _) in self.edges() {
                for &(x, _) in &self.out[v] {
                    if x != u && self.weight(u, x).is_none() {
                        missing.entry((u, x)).or_insert(v);
                    }
                }
            }
            for ((from, to), via) in missing {
                report.push(Violation::NotTransitive { from, via, to });
            }
        }
        if checks.order_preserving {
            for (u, v, _) in self.edges() {
                if self.rank(u) >= self.rank(v) {
                    report.push(Violation::ColorOrder { from: u, to: v });
                }
            }
        }
        report
    }

    /// Nodes left over by Kahn's algorithm, i.e. on or behind a cycle.
    fn cyclic_nodes(&self) -> Option<Vec<NodeId>> {
        let n = self.node_count();
        let mut indeg: Vec<usize> = self.inc.iter().map(Vec::len).collect();
        let mut queue: VecDeque<NodeId> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut done = 0;
        while let Some(u) = queue.pop_front() {
            done += 1;
            for &(v, _) in &self.out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        (done < n).then(|| (0..n).filter(|&v| indeg[v] > 0).collect())
    }

    pub(crate) fn reachable_from(&self, start: NodeId) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.out[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Adds an edge `uv` for every pair where `v` is reachable from `u`.
    /// Existing weights are kept; new edges are weighted by `weight_rule`.
    pub fn transitive_closure<F>(&self, mut weight_rule: F) -> Result<ColoredDag>
    where
        F: FnMut(NodeId, NodeId) -> f64,
    {
        if let Some(nodes) = self.cyclic_nodes() {
            return Err(Error::Cyclic(nodes));
        }
        let mut builder = DagBuilder::from_dag(self);
        for u in 0..self.node_count() {
            let seen = self.reachable_from(u);
            for (v, &reach) in seen.iter().enumerate() {
                if reach && v != u && self.weight(u, v).is_none() {
                    builder.add_edge(u, v, weight_rule(u, v))?;
                }
            }
        }
        builder.build(self.root)
    }

    /// Returns a graph with a fresh root `r*` of a fresh color (ranked before
    /// every other color) whose only edge is `r* -> desired_root` weighted
    /// `bonus`. The new root gets id `n`.
    pub fn attach_superroot(&self, desired_root: NodeId, bonus: f64) -> Result<ColoredDag> {
        if desired_root >= self.node_count() {
            return Err(Error::UnknownNode(desired_root));
        }
        let mut ranks: Vec<usize> = self.color_ranks.iter().map(|r| r + 1).collect();
        let fresh = ranks.len();
        ranks.push(0);
        let mut builder = DagBuilder::new(ranks);
        for v in 0..self.node_count() {
            builder.add_node(self.node_colors[v], self.labels[v].clone());
        }
        for (u, v, w) in self.edges() {
            builder.add_edge(u, v, w)?;
        }
        let sr = builder.add_node(fresh, "*");
        builder.add_edge(sr, desired_root, bonus)?;
        builder.build(sr)
    }
}

/// Properties checked by [`ColoredDag::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checks {
    pub acyclic: bool,
    pub unique_source: bool,
    pub transitive: bool,
    pub order_preserving: bool,
}

impl Checks {
    pub const ALL: Checks = Checks {
        acyclic: true,
        unique_source: true,
        transitive: true,
        order_preserving: true,
    };

    /// Everything except the quadratic transitivity check.
    pub const CHEAP: Checks = Checks {
        transitive: false,
        ..Checks::ALL
    };
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Cycle {
        nodes: Vec<NodeId>,
    },
    RootHasParent {
        root: NodeId,
    },
    Unreachable {
        node: NodeId,
    },
    /// Edges `from -> via -> to` exist but `from -> to` does not.
    NotTransitive {
        from: NodeId,
        via: NodeId,
        to: NodeId,
    },
    ColorOrder {
        from: NodeId,
        to: NodeId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Cycle { nodes } => write!(f, "nodes {nodes:?} lie on or behind a cycle"),
            Violation::RootHasParent { root } => write!(f, "root {root} has incoming edges"),
            Violation::Unreachable { node } => {
                write!(f, "node {node} is unreachable from the root")
            }
            Violation::NotTransitive { from, via, to } => {
                write!(
                    f,
                    "missing edge ({from}, {to}) implied by {from} -> {via} -> {to}"
                )
            }
            Violation::ColorOrder { from, to } => {
                write!(f, "edge ({from}, {to}) does not increase the color rank")
            }
        }
    }
}

/// Incremental constructor for [`ColoredDag`].
#[derive(Debug, Clone, Default)]
pub struct DagBuilder {
    color_ranks: Vec<usize>,
    nodes: Vec<(usize, String)>,
    edges: BTreeMap<(NodeId, NodeId), f64>,
}

impl DagBuilder {
    /// `color_ranks[i]` is the rank of color `i`.
    pub fn new(color_ranks: Vec<usize>) -> Self {
        DagBuilder {
            color_ranks,
            ..Default::default()
        }
    }

    fn from_dag(g: &ColoredDag) -> Self {
        let mut b = DagBuilder::new(g.color_ranks.clone());
        for v in 0..g.node_count() {
            b.add_node(g.node_colors[v], g.labels[v].clone());
        }
        b.edges = g.edges().map(|(u, v, w)| ((u, v), w)).collect();
        b
    }

    pub fn add_node(&mut self, color: usize, label: impl Into<String>) -> NodeId {
        self.nodes.push((color, label.into()));
        self.nodes.len() - 1
    }

    /// Adds edge `uv`. A repeated pair keeps the larger weight.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId, weight: f64) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !weight.is_finite() {
            return Err(Error::NonFiniteWeight {
                from: u,
                to: v,
                weight,
            });
        }
        self.edges
            .entry((u, v))
            .and_modify(|w| *w = w.max(weight))
            .or_insert(weight);
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn build(self, root: NodeId) -> Result<ColoredDag> {
        let n = self.nodes.len();
        let k = self.color_ranks.len();
        let mut seen = vec![false; k];
        for &r in &self.color_ranks {
            if r >= k || std::mem::replace(&mut seen[r], true) {
                return Err(Error::BadColorRanks(k));
            }
        }
        if root >= n {
            return Err(Error::UnknownNode(root));
        }
        let mut node_colors = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for (v, (color, label)) in self.nodes.into_iter().enumerate() {
            if color >= k {
                return Err(Error::UnknownColor { node: v, color });
            }
            node_colors.push(color);
            labels.push(label);
        }
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (&(u, v), &w) in &self.edges {
            if u >= n || v >= n {
                return Err(Error::DanglingEdge { from: u, to: v });
            }
            out[u].push((v, w));
            inc[v].push((u, w));
        }
        // BTreeMap order makes out-lists sorted by target and in-lists by source.
        Ok(ColoredDag {
            color_ranks: self.color_ranks,
            node_colors,
            labels,
            out,
            inc,
            root,
            edge_count: self.edges.len(),
        })
    }
}

/// A colorful subtree rooted at the graph root, stored as a parent map.
#[derive(Debug, Clone, PartialEq)]
pub struct SubtreeSolution {
    root: NodeId,
    parent: BTreeMap<NodeId, NodeId>,
    score: f64,
}

impl SubtreeSolution {
    pub fn root_only(root: NodeId) -> Self {
        SubtreeSolution {
            root,
            parent: BTreeMap::new(),
            score: 0.0,
        }
    }

    /// Builds a solution from a parent map and recomputes its score,
    /// checking every invariant against `g`.
    pub fn from_parents(
        g: &ColoredDag,
        root: NodeId,
        parent: BTreeMap<NodeId, NodeId>,
    ) -> Result<Self> {
        let mut t = SubtreeSolution {
            root,
            parent,
            score: 0.0,
        };
        t.score = tree_score(g, &t)?;
        t.validate(g)?;
        Ok(t)
    }

    /// Unchecked construction for solvers; the score is summed over the
    /// parent map in node order so equal trees always carry equal scores.
    pub(crate) fn from_parts(
        g: &ColoredDag,
        root: NodeId,
        parent: BTreeMap<NodeId, NodeId>,
    ) -> Self {
        let score = parent
            .iter()
            .map(|(&c, &p)| g.weight(p, c).expect("solver edge exists"))
            .fold(0.0, |a, w| a + w);
        SubtreeSolution {
            root,
            parent,
            score,
        }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn score(&self) -> f64 {
        self.score
    }

    /// Number of tree nodes, root included.
    pub fn size(&self) -> usize {
        self.parent.len() + 1
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v == self.root || self.parent.contains_key(&v)
    }

    pub fn parent_of(&self, v: NodeId) -> Option<NodeId> {
        self.parent.get(&v).copied()
    }

    pub fn parents(&self) -> &BTreeMap<NodeId, NodeId> {
        &self.parent
    }

    /// Tree nodes in increasing id order.
    pub fn nodes(&self) -> Vec<NodeId> {
        let mut v: Vec<NodeId> = self.parent.keys().copied().collect();
        if let Err(i) = v.binary_search(&self.root) {
            v.insert(i, self.root);
        }
        v
    }

    /// Tree edges `(parent, child)` ordered by child id.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.parent.iter().map(|(&c, &p)| (p, c))
    }

    /// Children lists keyed by parent, each sorted by id.
    pub fn children(&self) -> BTreeMap<NodeId, Vec<NodeId>> {
        let mut ch: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        for (p, c) in self.edges() {
            ch.entry(p).or_default().push(c);
        }
        ch
    }

    /// Checks: edges exist in `g`, rooted at `g.root()`, connected, colorful,
    /// and the stored score matches the recomputed one within [`SCORE_EPS`].
    pub fn validate(&self, g: &ColoredDag) -> Result<()> {
        if self.root != g.root() {
            return Err(Error::InvalidTree(format!(
                "rooted at {} but graph root is {}",
                self.root,
                g.root()
            )));
        }
        if self.parent.contains_key(&self.root) {
            return Err(Error::InvalidTree("root has a parent".into()));
        }
        let recomputed = tree_score(g, self)?;
        let mut colors = BTreeSet::new();
        for v in self.nodes() {
            if !colors.insert(g.color(v)) {
                return Err(Error::InvalidTree(format!(
                    "color {} used twice",
                    g.color(v)
                )));
            }
        }
        for &start in self.parent.keys() {
            let mut v = start;
            let mut steps = 0;
            while v != self.root {
                v = match self.parent.get(&v) {
                    Some(&p) => p,
                    None => {
                        return Err(Error::InvalidTree(format!(
                            "node {start} is not connected to the root"
                        )))
                    }
                };
                steps += 1;
                if steps > self.parent.len() {
                    return Err(Error::InvalidTree("parent map has a cycle".into()));
                }
            }
        }
        if (recomputed - self.score).abs() > SCORE_EPS {
            return Err(Error::InvalidTree(format!(
                "stored score {} differs from recomputed {}",
                self.score, recomputed
            )));
        }
        Ok(())
    }

    /// Drops the root, returning the subtree under its single child. Used to
    /// undo [`ColoredDag::attach_superroot`]; `None` unless the root has
    /// exactly one child.
    pub fn strip_root(&self, g: &ColoredDag) -> Option<SubtreeSolution> {
        let mut kids = self
            .edges()
            .filter(|&(p, _)| p == self.root)
            .map(|(_, c)| c);
        let child = kids.next()?;
        if kids.next().is_some() {
            return None;
        }
        let w = g.weight(self.root, child)?;
        let parent = self
            .parent
            .iter()
            .filter(|(&c, _)| c != child)
            .map(|(&c, &p)| (c, p))
            .collect();
        Some(SubtreeSolution {
            root: child,
            parent,
            score: self.score - w,
        })
    }
}

/// Sum of the weights of the tree edges.
pub fn tree_score(g: &ColoredDag, t: &SubtreeSolution) -> Result<f64> {
    let mut total = 0.0;
    for (p, c) in t.edges() {
        if p >= g.node_count() || c >= g.node_count() {
            return Err(Error::MissingTreeEdge { from: p, to: c });
        }
        total += g
            .weight(p, c)
            .ok_or(Error::MissingTreeEdge { from: p, to: c })?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(weights: &[f64]) -> ColoredDag {
        let n = weights.len() + 1;
        let mut b = DagBuilder::new((0..n).collect());
        for i in 0..n {
            b.add_node(i, format!("v{i}"));
        }
        for (i, &w) in weights.iter().enumerate() {
            b.add_edge(i, i + 1, w).unwrap();
        }
        b.build(0).unwrap()
    }

    #[test]
    fn single_node_is_valid() {
        let g = chain(&[]);
        assert!(g.validate(Checks::ALL).is_empty());
    }

    #[test]
    fn missing_shortcut_is_reported() {
        let g = chain(&[1.0, 1.0]);
        let report = g.validate(Checks {
            acyclic: false,
            unique_source: false,
            transitive: true,
            order_preserving: false,
        });
        assert_eq!(
            report,
            vec![Violation::NotTransitive {
                from: 0,
                via: 1,
                to: 2
            }]
        );
    }

    #[test]
    fn detects_cycle_and_unreachable() {
        let mut b = DagBuilder::new(vec![0, 1, 2]);
        for c in 0..3 {
            b.add_node(c, "");
        }
        b.add_edge(1, 2, 1.0).unwrap();
        b.add_edge(2, 1, 1.0).unwrap();
        let g = b.build(0).unwrap();
        let report = g.validate(Checks::CHEAP);
        assert!(matches!(&report[0], Violation::Cycle { nodes } if nodes == &vec![1, 2]));
        assert!(report.contains(&Violation::Unreachable { node: 1 }));
        assert!(report.contains(&Violation::ColorOrder { from: 2, to: 1 }));
    }

    #[test]
    fn structural_errors() {
        let mut b = DagBuilder::new(vec![0]);
        b.add_node(0, "r");
        assert!(matches!(b.add_edge(0, 0, 1.0), Err(Error::SelfLoop(0))));
        assert!(b.add_edge(0, 1, f64::NAN).is_err());
        b.add_edge(0, 5, 1.0).unwrap();
        assert!(matches!(
            b.build(0),
            Err(Error::DanglingEdge { from: 0, to: 5 })
        ));
        assert!(matches!(
            DagBuilder::new(vec![1, 1]).build(0),
            Err(Error::BadColorRanks(2))
        ));
    }

    #[test]
    fn duplicate_edge_keeps_max() {
        let mut b = DagBuilder::new(vec![0, 1]);
        b.add_node(0, "r");
        b.add_node(1, "a");
        b.add_edge(0, 1, 2.0).unwrap();
        b.add_edge(0, 1, 5.0).unwrap();
        b.add_edge(0, 1, -1.0).unwrap();
        let g = b.build(0).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(0, 1), Some(5.0));
    }

    #[test]
    fn closure_of_path() {
        let g = chain(&[1.0, 1.0]);
        let c = g.transitive_closure(|_, _| 0.0).unwrap();
        assert_eq!(c.edge_count(), 3);
        assert_eq!(c.weight(0, 2), Some(0.0));
        assert_eq!(c.weight(0, 1), Some(1.0));
        let again = c.transitive_closure(|_, _| 99.0).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn superroot_sizes() {
        let g = chain(&[1.0, 2.0]);
        let s = g.attach_superroot(1, 10.0).unwrap();
        assert_eq!(s.node_count(), g.node_count() + 1);
        assert_eq!(s.edge_count(), g.edge_count() + 1);
        assert_eq!(s.color_count(), g.color_count() + 1);
        assert_eq!(s.root(), 3);
        assert_eq!(s.rank(3), 0);
        assert!(s.is_order_preserving());
        assert!(g.attach_superroot(7, 1.0).is_err());
    }

    #[test]
    fn scores() {
        let g = chain(&[3.0, -1.0]);
        assert_eq!(tree_score(&g, &SubtreeSolution::root_only(0)).unwrap(), 0.0);
        let t = SubtreeSolution::from_parents(&g, 0, [(1, 0), (2, 1)].into()).unwrap();
        assert_eq!(t.score(), 2.0);
        let bad = SubtreeSolution {
            root: 0,
            parent: [(2, 0)].into(),
            score: 0.0,
        };
        assert!(matches!(
            tree_score(&g, &bad),
            Err(Error::MissingTreeEdge { from: 0, to: 2 })
        ));
    }

    #[test]
    fn rejects_non_colorful_tree() {
        let mut b = DagBuilder::new(vec![0, 1]);
        b.add_node(0, "r");
        b.add_node(1, "a");
        b.add_node(1, "b");
        b.add_edge(0, 1, 1.0).unwrap();
        b.add_edge(0, 2, 1.0).unwrap();
        let g = b.build(0).unwrap();
        assert!(SubtreeSolution::from_parents(&g, 0, [(1, 0), (2, 0)].into()).is_err());
    }
}
