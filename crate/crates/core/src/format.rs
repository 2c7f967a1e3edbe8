//! JSON graph files shared by the instance builder, the solvers and tree dumps.
//!
//! ```json
//! {"root": 0,
//!  "colors": [{"id": 0, "rank": 0}, ...],
//!  "nodes": [{"id": 0, "color": 0, "label": "C6H12O6"}, ...],
//!  "edges": [{"from": 0, "to": 1, "w": 1.5}, ...]}
//! ```
//!
//! Node and color ids in a file need not be dense; they are remapped in
//! listed order on load. Tree dumps carry `"tree": true` and keep the host
//! graph's node ids.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredDag, DagBuilder, NodeId, SubtreeSolution};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColorEntry {
    pub id: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeEntry {
    pub id: usize,
    pub color: usize,
    #[serde(default)]
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub from: usize,
    pub to: usize,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub root: usize,
    pub colors: Vec<ColorEntry>,
    pub nodes: Vec<NodeEntry>,
    pub edges: Vec<EdgeEntry>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub tree: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score: Option<f64>,
}

impl GraphFile {
    pub fn from_dag(g: &ColoredDag) -> Self {
        GraphFile {
            root: g.root(),
            colors: g
                .colors()
                .map(|c| ColorEntry {
                    id: c.index,
                    rank: c.rank,
                })
                .collect(),
            nodes: (0..g.node_count())
                .map(|v| NodeEntry {
                    id: v,
                    color: g.color(v),
                    label: g.label(v).to_string(),
                })
                .collect(),
            edges: g
                .edges()
                .map(|(from, to, w)| EdgeEntry { from, to, w })
                .collect(),
            tree: false,
            score: None,
        }
    }

    /// Dumps a solution with the host graph's node ids. Colors are re-ranked
    /// densely so the dump itself loads as a valid graph.
    pub fn from_tree(g: &ColoredDag, t: &SubtreeSolution) -> Self {
        let nodes = t.nodes();
        let mut used: Vec<usize> = nodes.iter().map(|&v| g.color(v)).collect();
        used.sort_by_key(|&c| g.color_rank(c));
        GraphFile {
            root: t.root(),
            colors: used
                .iter()
                .enumerate()
                .map(|(rank, &id)| ColorEntry { id, rank })
                .collect(),
            nodes: nodes
                .iter()
                .map(|&v| NodeEntry {
                    id: v,
                    color: g.color(v),
                    label: g.label(v).to_string(),
                })
                .collect(),
            edges: t
                .edges()
                .map(|(from, to)| EdgeEntry {
                    from,
                    to,
                    w: g.weight(from, to).unwrap_or(f64::NAN),
                })
                .collect(),
            tree: true,
            score: Some(t.score()),
        }
    }

    /// Builds the graph, remapping ids to `0..n` in listed order.
    pub fn to_dag(&self) -> Result<ColoredDag> {
        let mut color_index = HashMap::new();
        let mut ranks = Vec::with_capacity(self.colors.len());
        for c in &self.colors {
            if color_index.insert(c.id, ranks.len()).is_some() {
                return Err(Error::Config(format!("duplicate color id {}", c.id)));
            }
            ranks.push(c.rank);
        }
        let mut node_index = HashMap::new();
        let mut b = DagBuilder::new(ranks);
        for nd in &self.nodes {
            let color = *color_index.get(&nd.color).ok_or(Error::UnknownColor {
                node: nd.id,
                color: nd.color,
            })?;
            let v = b.add_node(color, nd.label.clone());
            if node_index.insert(nd.id, v).is_some() {
                return Err(Error::Config(format!("duplicate node id {}", nd.id)));
            }
        }
        for e in &self.edges {
            let (Some(&u), Some(&v)) = (node_index.get(&e.from), node_index.get(&e.to)) else {
                return Err(Error::DanglingEdge {
                    from: e.from,
                    to: e.to,
                });
            };
            b.add_edge(u, v, e.w)?;
        }
        let root = *node_index
            .get(&self.root)
            .ok_or(Error::UnknownNode(self.root))?;
        b.build(root)
    }

    /// Reads this file as a tree dump over `host`, using host node ids.
    pub fn to_tree(&self, host: &ColoredDag) -> Result<SubtreeSolution> {
        let parent = self
            .edges
            .iter()
            .map(|e| (e.to as NodeId, e.from as NodeId))
            .collect();
        SubtreeSolution::from_parents(host, self.root, parent)
    }

    pub fn read(reader: impl Read) -> Result<Self> {
        Ok(serde_json::from_reader(reader)?)
    }

    pub fn write(&self, writer: impl Write) -> Result<()> {
        serde_json::to_writer(writer, self)?;
        Ok(())
    }
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<ColoredDag> {
    let file = std::fs::File::open(path)?;
    GraphFile::read(std::io::BufReader::new(file))?.to_dag()
}

pub fn save_graph(g: &ColoredDag, path: impl AsRef<Path>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    GraphFile::from_dag(g).write(&mut w)?;
    w.flush()?;
    Ok(())
}
