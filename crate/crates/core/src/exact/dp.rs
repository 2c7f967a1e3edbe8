use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{ColoredDag, NodeId, SubtreeSolution};

/// Default color capacity of [`solve_exact_dp`].
pub const DEFAULT_MAX_COLORS: usize = 22;

/// Hard ceiling: masks are `u64` and tables are dense.
const HARD_MAX_COLORS: usize = 40;

/// Per-node tables of the color-subset recurrence.
///
/// Colors are addressed by rank. The table of node `v` is indexed by subsets
/// `T` of the ranks strictly above `rank(v)`, shifted down by `rank(v) + 1`;
/// `value(v, T)` is the best weight of a colorful tree rooted at `v` whose
/// other nodes use only colors from `T`. Only subsets of the colors
/// reachable from `v` are filled in.
#[derive(Debug, Clone)]
pub struct ColorSubsetTable {
    shift: Vec<u32>,
    reach: Vec<u64>,
    values: Vec<Vec<f64>>,
}

impl ColorSubsetTable {
    /// Number of stored entries (filled or not).
    pub fn entry_count(&self) -> usize {
        self.values.iter().map(Vec::len).sum()
    }

    fn get(&self, v: NodeId, global: u64) -> f64 {
        self.values[v][((global & self.reach[v]) >> self.shift[v]) as usize]
    }

    fn build(g: &ColoredDag) -> Self {
        let n = g.node_count();
        let k = g.color_count();
        let bit = |v: NodeId| 1u64 << g.rank(v);
        let order = g.nodes_by_rank_desc();

        let mut reach = vec![0u64; n];
        for &v in &order {
            reach[v] = g
                .out_edges(v)
                .iter()
                .fold(0, |acc, &(u, _)| acc | bit(u) | reach[u]);
        }
        let shift: Vec<u32> = (0..n).map(|v| g.rank(v) as u32 + 1).collect();
        let mut table = ColorSubsetTable {
            values: vec![Vec::new(); n],
            shift,
            reach,
        };

        for &v in &order {
            let width = k - g.rank(v) - 1;
            let mut vals = vec![f64::NAN; 1usize << width];
            let r = table.reach[v];
            let sh = table.shift[v];
            vals[0] = 0.0;
            // ascending submask enumeration of r, skipping the empty set
            let mut t = r.wrapping_neg() & r;
            while t != 0 {
                let mut best = 0.0f64;
                for &(u, w) in g.out_edges(v) {
                    if t & bit(u) != 0 {
                        let cand = w + table.get(u, t & !bit(u));
                        if cand > best {
                            best = cand;
                        }
                    }
                }
                let low = t & t.wrapping_neg();
                let rest = t ^ low;
                // A = low | a for every proper submask a of rest, B = rest ^ a
                let mut a = 0u64;
                loop {
                    let b = rest ^ a;
                    if b == 0 {
                        break;
                    }
                    let cand = vals[((low | a) >> sh) as usize] + vals[(b >> sh) as usize];
                    if cand > best {
                        best = cand;
                    }
                    a = (a.wrapping_sub(rest)) & rest;
                    if a == 0 {
                        break;
                    }
                }
                vals[(t >> sh) as usize] = best;
                t = (t.wrapping_sub(r)) & r;
            }
            table.values[v] = vals;
        }
        table
    }
}

/// Exact maximum colorful subtree by dynamic programming over color subsets.
///
/// Requires an order-preserving coloring and at most `max_colors` colors.
/// Ties in the backtrace prefer the smaller tree (a leaf), then the
/// extension into the smallest child id, then merges in ascending order.
pub fn solve_exact_dp(g: &ColoredDag, max_colors: usize) -> Result<SubtreeSolution> {
    let k = g.color_count();
    let cap = max_colors.min(HARD_MAX_COLORS);
    if k > cap {
        return Err(Error::Capacity {
            colors: k,
            capacity: cap,
        });
    }
    if let Some((from, to)) = g.first_order_violation() {
        return Err(Error::NotOrderPreserving { from, to });
    }
    let table = ColorSubsetTable::build(g);
    let root = g.root();
    let bit = |v: NodeId| 1u64 << g.rank(v);

    let mut parent = BTreeMap::new();
    let mut stack = vec![(root, table.reach[root])];
    while let Some((v, t)) = stack.pop() {
        let t = t & table.reach[v];
        let target = table.get(v, t);
        if t == 0 || target == 0.0 {
            continue;
        }
        let ext = g
            .out_edges(v)
            .iter()
            .find(|&&(u, w)| t & bit(u) != 0 && w + table.get(u, t & !bit(u)) == target);
        if let Some(&(u, _)) = ext {
            parent.insert(u, v);
            stack.push((u, t & !bit(u)));
            continue;
        }
        let low = t & t.wrapping_neg();
        let rest = t ^ low;
        let mut a = 0u64;
        let mut found = false;
        loop {
            let b = rest ^ a;
            if b == 0 {
                break;
            }
            if table.get(v, low | a) + table.get(v, b) == target {
                stack.push((v, b));
                stack.push((v, low | a));
                found = true;
                break;
            }
            a = (a.wrapping_sub(rest)) & rest;
            if a == 0 {
                break;
            }
        }
        assert!(found, "backtrace lost track of value {target} at node {v}");
    }
    Ok(SubtreeSolution::from_parts(g, root, parent))
}

/// Optimum score only.
pub fn optimum_score(g: &ColoredDag, max_colors: usize) -> Result<f64> {
    solve_exact_dp(g, max_colors).map(|t| t.score())
}
