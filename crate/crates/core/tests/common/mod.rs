//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use mcs_core::builder::{ElementBounds, ElementMasses, Formula};
use mcs_core::graph::{ColoredDag, DagBuilder, NodeId, SubtreeSolution};
use mcs_core::random::{random_dag, RandomDagSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EPS: f64 = 1e-9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Six-node fixture r, u, v, x, y, z = 0..6 where v
/// and z share a color.
pub fn branching_fixture() -> ColoredDag {
    let mut b = DagBuilder::new(vec![0, 1, 2, 3, 4]);
    for (c, l) in [(0, "r"), (1, "u"), (2, "v"), (3, "x"), (4, "y"), (2, "z")] {
        b.add_node(c, l);
    }
    for (s, t, w) in [
        (0, 1, 2.0),
        (1, 2, 1.0),
        (2, 3, 3.0),
        (2, 4, 2.0),
        (0, 5, 5.0),
    ] {
        b.add_edge(s, t, w).unwrap();
    }
    b.build(0).unwrap()
}

/// Small random instance; weights come from a half-integer grid when
/// `grid` is set so that ties and exact sums occur.
pub fn small_instance(
    rng: &mut ChaCha8Rng,
    max_nodes: usize,
    max_colors: usize,
    grid: bool,
) -> ColoredDag {
    let nodes = rng.gen_range(1..=max_nodes);
    let colors = rng.gen_range(2..=max_colors.max(2));
    let mut spec = RandomDagSpec::new(nodes, colors);
    spec.edge_prob = rng.gen_range(0.2..0.9);
    spec.transitive = rng.gen_bool(0.7);
    let g = random_dag(rng, &spec);
    if !grid {
        return g;
    }
    let mut b = DagBuilder::new((0..g.color_count()).map(|c| g.color_rank(c)).collect());
    for v in 0..g.node_count() {
        b.add_node(g.color(v), g.label(v));
    }
    for (u, v, _) in g.edges() {
        b.add_edge(u, v, rng.gen_range(-6..=10) as f64 / 2.0)
            .unwrap();
    }
    b.build(g.root()).unwrap()
}

/// Best colorful subtree by enumerating node sets. For a fixed set `S`
/// containing the root, every other node independently takes its heaviest
/// parent inside `S`; parents have strictly smaller rank, so that is always a
/// tree and it is the best one on `S`.
pub fn brute_force_optimum(g: &ColoredDag) -> f64 {
    let n = g.node_count();
    assert!(n <= 20, "enumeration limited to small graphs");
    let r = g.root();
    let mut best = 0.0f64;
    for mask in 0u32..(1 << n) {
        if mask & (1 << r) == 0 {
            continue;
        }
        let mut colors = BTreeSet::new();
        let mut ok = true;
        for v in 0..n {
            if mask & (1 << v) != 0 && !colors.insert(g.color(v)) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let mut total = 0.0;
        for v in 0..n {
            if v == r || mask & (1 << v) == 0 {
                continue;
            }
            let best_in = g
                .in_edges(v)
                .iter()
                .filter(|(u, _)| mask & (1 << u) != 0)
                .map(|&(_, w)| w)
                .fold(f64::NEG_INFINITY, f64::max);
            if best_in == f64::NEG_INFINITY {
                ok = false;
                break;
            }
            total += best_in;
        }
        if ok && total > best {
            best = total;
        }
    }
    best
}

/// Every r-rooted colorful subtree, by assigning each node "absent" or one
/// of its in-neighbours. Only for tiny graphs.
pub fn all_colorful_subtrees(g: &ColoredDag) -> Vec<BTreeMap<NodeId, NodeId>> {
    let n = g.node_count();
    let r = g.root();
    let others: Vec<NodeId> = (0..n).filter(|&v| v != r).collect();
    let mut out = Vec::new();
    let mut choice: Vec<Option<NodeId>> = vec![None; n];
    fn rec(
        i: usize,
        others: &[NodeId],
        g: &ColoredDag,
        choice: &mut Vec<Option<NodeId>>,
        out: &mut Vec<BTreeMap<NodeId, NodeId>>,
    ) {
        if i == others.len() {
            let r = g.root();
            let in_tree = |v: NodeId, choice: &Vec<Option<NodeId>>| -> bool {
                let mut x = v;
                loop {
                    if x == r {
                        return true;
                    }
                    match choice[x] {
                        Some(p) => x = p,
                        None => return false,
                    }
                }
            };
            let mut colors = BTreeSet::from([g.color(r)]);
            let mut parent = BTreeMap::new();
            for &v in others {
                if let Some(p) = choice[v] {
                    if !in_tree(v, choice) || !colors.insert(g.color(v)) {
                        return;
                    }
                    parent.insert(v, p);
                }
            }
            out.push(parent);
            return;
        }
        let v = others[i];
        choice[v] = None;
        rec(i + 1, others, g, choice, out);
        for &(u, _) in g.in_edges(v) {
            choice[v] = Some(u);
            rec(i + 1, others, g, choice, out);
        }
        choice[v] = None;
    }
    rec(0, &others, g, &mut choice, &mut out);
    out
}

pub fn parent_map_score(g: &ColoredDag, parent: &BTreeMap<NodeId, NodeId>) -> f64 {
    parent.iter().map(|(&c, &p)| g.weight(p, c).unwrap()).sum()
}

/// Straightforward insertion heuristic: every round recomputes in/out
/// scores of every candidate from the current tree.
pub fn naive_insertion(g: &ColoredDag) -> (BTreeMap<NodeId, NodeId>, Vec<NodeId>) {
    let n = g.node_count();
    let r = g.root();
    let mut parent: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    let mut in_tree = vec![false; n];
    in_tree[r] = true;
    let mut used = vec![false; g.color_count()];
    used[g.color(r)] = true;
    let mut seq = Vec::new();
    loop {
        let mut best: Option<(NodeId, NodeId, f64)> = None;
        for v in 0..n {
            if in_tree[v] || used[g.color(v)] {
                continue;
            }
            let mut inw: Option<(NodeId, f64)> = None;
            for u in 0..n {
                if !in_tree[u] {
                    continue;
                }
                if let Some(w) = g.weight(u, v) {
                    if inw.map_or(true, |(_, bw)| w > bw) {
                        inw = Some((u, w));
                    }
                }
            }
            let Some((u, w_in)) = inw else { continue };
            let mut out = 0.0;
            for x in 0..n {
                if !in_tree[x] || x == r {
                    continue;
                }
                if let Some(w_vx) = g.weight(v, x) {
                    let w_px = g.weight(parent[&x], x).unwrap();
                    out += (w_vx - w_px).max(0.0);
                }
            }
            let gain = w_in + out;
            if best.map_or(true, |(_, _, bg)| gain > bg) {
                best = Some((v, u, gain));
            }
        }
        let Some((v, u, _)) = best else { break };
        in_tree[v] = true;
        used[g.color(v)] = true;
        parent.insert(v, u);
        seq.push(v);
        for x in 0..n {
            if !in_tree[x] || x == r || x == v {
                continue;
            }
            if let Some(w_vx) = g.weight(v, x) {
                if w_vx > g.weight(parent[&x], x).unwrap() {
                    parent.insert(x, v);
                }
            }
        }
    }
    (parent, seq)
}

/// Best score over subtrees of `t` that keep the root and are closed under
/// taking parents.
pub fn best_prune_closed(g: &ColoredDag, t: &SubtreeSolution) -> f64 {
    let nodes: Vec<NodeId> = t.nodes().into_iter().filter(|&v| v != t.root()).collect();
    assert!(nodes.len() <= 16);
    let idx: BTreeMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut best = f64::NEG_INFINITY;
    for mask in 0u32..(1 << nodes.len()) {
        let mut ok = true;
        let mut total = 0.0;
        for (i, &v) in nodes.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            let p = t.parent_of(v).unwrap();
            if p != t.root() && mask & (1 << idx[&p]) == 0 {
                ok = false;
                break;
            }
            total += g.weight(p, v).unwrap();
        }
        if ok && total > best {
            best = total;
        }
    }
    best
}

/// Reachability by breadth-first search from every node.
pub fn reachability(g: &ColoredDag) -> Vec<Vec<bool>> {
    let n = g.node_count();
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in g.out_edges(u) {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            seen
        })
        .collect()
}

/// All CHNOPS formulas inside `bounds` with total mass at most `max_mass`,
/// paired with their masses.
pub fn all_formulas(
    bounds: &ElementBounds,
    masses: &ElementMasses,
    max_mass: f64,
) -> Vec<(Formula, f64)> {
    let m = masses.as_array();
    let b = bounds.max;
    let mut out = Vec::new();
    for c in 0..=b[0] {
        let mc = c as f64 * m[0];
        if mc > max_mass {
            break;
        }
        for h in 0..=b[1] {
            let mh = mc + h as f64 * m[1];
            if mh > max_mass {
                break;
            }
            for nn in 0..=b[2] {
                let mn = mh + nn as f64 * m[2];
                if mn > max_mass {
                    break;
                }
                for o in 0..=b[3] {
                    let mo = mn + o as f64 * m[3];
                    if mo > max_mass {
                        break;
                    }
                    for p in 0..=b[4] {
                        let mp = mo + p as f64 * m[4];
                        if mp > max_mass {
                            break;
                        }
                        for s in 0..=b[5] {
                            let f = Formula::new([c, h, nn, o, p, s]);
                            // independent mass recomputation in a fixed order
                            let mass = c as f64 * m[0]
                                + h as f64 * m[1]
                                + nn as f64 * m[2]
                                + o as f64 * m[3]
                                + p as f64 * m[4]
                                + s as f64 * m[5];
                            if mass > max_mass {
                                break;
                            }
                            if !f.is_empty() {
                                out.push((f, mass));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}
