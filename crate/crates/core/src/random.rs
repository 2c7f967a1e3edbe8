//! Random order-preserving DAGs for tests, benchmarks and scaling runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{ColoredDag, DagBuilder};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomDagSpec {
    pub nodes: usize,
    /// Including the root color, which only the root uses.
    pub colors: usize,
    pub edge_prob: f64,
    pub weight_min: f64,
    pub weight_max: f64,
    pub transitive: bool,
}

impl RandomDagSpec {
    pub fn new(nodes: usize, colors: usize) -> Self {
        RandomDagSpec {
            nodes,
            colors,
            edge_prob: 0.4,
            weight_min: -3.0,
            weight_max: 5.0,
            transitive: true,
        }
    }
}

/// Draws a rooted DAG: node 0 is the root and the only node of the rank-0
/// color; every other node gets one of the remaining colors uniformly, one
/// parent of strictly smaller rank, and further edges from smaller-ranked
/// nodes with probability `edge_prob`. With `transitive` the closure is
/// added with fresh random weights.
pub fn random_dag<R: Rng>(rng: &mut R, spec: &RandomDagSpec) -> ColoredDag {
    let n = spec.nodes.max(1);
    let k = if n == 1 { 1 } else { spec.colors.max(2) };
    let mut ranks: Vec<usize> = (0..k).collect();
    ranks.shuffle(rng);
    let mut color_of_rank = vec![0; k];
    for (c, &r) in ranks.iter().enumerate() {
        color_of_rank[r] = c;
    }
    let weight = |rng: &mut R| {
        if spec.weight_max > spec.weight_min {
            rng.gen_range(spec.weight_min..spec.weight_max)
        } else {
            spec.weight_min
        }
    };

    let mut b = DagBuilder::new(ranks.clone());
    let mut node_rank = vec![0usize; n];
    b.add_node(color_of_rank[0], "v0");
    for (v, r) in node_rank.iter_mut().enumerate().skip(1) {
        *r = rng.gen_range(1..k);
        b.add_node(color_of_rank[*r], format!("v{v}"));
    }
    for v in 1..n {
        let lower: Vec<usize> = (0..n).filter(|&u| node_rank[u] < node_rank[v]).collect();
        let first = *lower.choose(rng).expect("root is always lower");
        for &u in &lower {
            if u == first || rng.gen_bool(spec.edge_prob.clamp(0.0, 1.0)) {
                let w = weight(rng);
                b.add_edge(u, v, w).expect("finite weight, no self-loop");
            }
        }
    }
    let g = b.build(0).expect("valid by construction");
    if spec.transitive {
        g.transitive_closure(|_, _| weight(rng))
            .expect("acyclic by construction")
    } else {
        g
    }
}
