use std::collections::BTreeMap;
use std::io::{self, Write};

use crate::graph::{ColoredDag, NodeId};

/// Counts of what [`export_lp`] wrote.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LpStats {
    pub variables: usize,
    pub indegree_constraints: usize,
    pub connectivity_constraints: usize,
    pub color_constraints: usize,
}

impl LpStats {
    pub fn constraints(&self) -> usize {
        self.indegree_constraints + self.connectivity_constraints + self.color_constraints
    }
}

fn var(u: NodeId, v: NodeId) -> String {
    format!("x_{u}_{v}")
}

fn write_sum(out: &mut impl Write, terms: &[String]) -> io::Result<()> {
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            out.write_all(b" + ")?;
        }
        out.write_all(t.as_bytes())?;
    }
    Ok(())
}

/// Writes the edge-variable integer program in LP format:
///
/// * maximize `sum w(uv) x_u_v`
/// * `in_v`: at most one incoming edge per node
/// * `conn_v_w`: `x_v_w <= sum of incoming x(., v)` for non-root `v`
/// * `col_q`: at most one incoming edge into all nodes of color `q`
///
/// Nodes and colors without incoming edges get no constraint.
pub fn export_lp(g: &ColoredDag, out: &mut impl Write) -> io::Result<LpStats> {
    let mut stats = LpStats::default();
    writeln!(
        out,
        "\\ maximum colorful subtree, {} nodes, {} edges, {} colors",
        g.node_count(),
        g.edge_count(),
        g.color_count()
    )?;
    writeln!(out, "Maximize")?;
    write!(out, " obj:")?;
    if g.edge_count() == 0 {
        write!(out, " 0")?;
    }
    for (i, (u, v, w)) in g.edges().enumerate() {
        match (i, w < 0.0) {
            (0, false) => write!(out, " {w} {}", var(u, v))?,
            (0, true) => write!(out, " -{} {}", w.abs(), var(u, v))?,
            (_, false) => write!(out, " + {w} {}", var(u, v))?,
            (_, true) => write!(out, " - {} {}", w.abs(), var(u, v))?,
        }
    }
    writeln!(out)?;
    writeln!(out, "Subject To")?;

    let incoming =
        |v: NodeId| -> Vec<String> { g.in_edges(v).iter().map(|&(u, _)| var(u, v)).collect() };
    for v in 0..g.node_count() {
        let terms = incoming(v);
        if terms.is_empty() {
            continue;
        }
        write!(out, " in_{v}: ")?;
        write_sum(out, &terms)?;
        writeln!(out, " <= 1")?;
        stats.indegree_constraints += 1;
    }
    for v in 0..g.node_count() {
        if v == g.root() {
            continue;
        }
        let terms = incoming(v);
        for &(x, _) in g.out_edges(v) {
            write!(out, " conn_{v}_{x}: {}", var(v, x))?;
            for t in &terms {
                write!(out, " - {t}")?;
            }
            writeln!(out, " <= 0")?;
            stats.connectivity_constraints += 1;
        }
    }
    let mut by_color: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for v in 0..g.node_count() {
        let terms = incoming(v);
        if !terms.is_empty() {
            by_color.entry(g.color(v)).or_default().extend(terms);
        }
    }
    for (q, terms) in &by_color {
        write!(out, " col_{q}: ")?;
        write_sum(out, terms)?;
        writeln!(out, " <= 1")?;
        stats.color_constraints += 1;
    }

    writeln!(out, "Binaries")?;
    for (u, v, _) in g.edges() {
        writeln!(out, " {}", var(u, v))?;
        stats.variables += 1;
    }
    writeln!(out, "End")?;
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DagBuilder;

    #[test]
    fn single_edge_model() {
        let mut b = DagBuilder::new(vec![0, 1]);
        b.add_node(0, "r");
        b.add_node(1, "a");
        b.add_edge(0, 1, 2.5).unwrap();
        let g = b.build(0).unwrap();
        let mut buf = Vec::new();
        let stats = export_lp(&g, &mut buf).unwrap();
        assert_eq!(stats.variables, 1);
        assert_eq!(stats.constraints(), 2);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains(" obj: 2.5 x_0_1"));
        assert!(text.contains(" in_1: x_0_1 <= 1"));
        assert!(text.contains(" col_1: x_0_1 <= 1"));
        assert!(text.trim_end().ends_with("End"));
    }

    #[test]
    fn counts_on_branching_graph() {
        // r -> a, r -> b, a -> b, a and c share a color, r -> c
        let mut b = DagBuilder::new(vec![0, 1, 2]);
        b.add_node(0, "r");
        b.add_node(1, "a");
        b.add_node(2, "b");
        b.add_node(1, "c");
        b.add_edge(0, 1, 1.0).unwrap();
        b.add_edge(0, 2, -1.0).unwrap();
        b.add_edge(1, 2, 2.0).unwrap();
        b.add_edge(0, 3, 1.0).unwrap();
        let g = b.build(0).unwrap();
        let mut buf = Vec::new();
        let stats = export_lp(&g, &mut buf).unwrap();
        assert_eq!(stats.variables, g.edge_count());
        assert_eq!(stats.color_constraints, g.color_count() - 1);
        assert_eq!(stats.indegree_constraints, 3);
        assert_eq!(stats.connectivity_constraints, 1);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains(" conn_1_2: x_1_2 - x_0_1 <= 0"));
        assert!(text.contains(" - 1 x_0_2"));
    }
}
