use serde::{Deserialize, Serialize};

use super::formula::{ElementMasses, Formula};

/// Per-element upper bounds on atom counts, CHNOPS order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementBounds {
    pub max: [u32; 6],
}

impl Default for ElementBounds {
    fn default() -> Self {
        ElementBounds {
            max: [40, 80, 6, 12, 2, 2],
        }
    }
}

impl ElementBounds {
    /// Bounds that only admit subformulas of `f`.
    pub fn within(f: &Formula) -> Self {
        ElementBounds { max: f.counts }
    }
}

/// Absolute window half-width in Dalton for a relative tolerance.
pub fn ppm_window(mass: f64, tolerance_ppm: f64) -> f64 {
    mass * tolerance_ppm * 1e-6
}

/// Signed mass error of `f` against `mass`, in ppm of `mass`.
pub fn ppm_error(f: &Formula, mass: f64, masses: &ElementMasses) -> f64 {
    (f.mass(masses) - mass) / mass * 1e6
}

/// All formulas within `bounds` whose mass lies within `tolerance_ppm` of
/// `mass`, sorted by absolute error and then by formula string.
///
/// Branch and bound over elements from heaviest to lightest: the count range
/// of each element is cut so that the residual mass stays reachable by the
/// remaining lighter elements.
pub fn decompose_mass(
    mass: f64,
    tolerance_ppm: f64,
    bounds: &ElementBounds,
    masses: &ElementMasses,
) -> Vec<Formula> {
    if !(mass > 0.0) || !(tolerance_ppm >= 0.0) {
        return Vec::new();
    }
    let tol = ppm_window(mass, tolerance_ppm);
    let em = masses.as_array();
    let mut order: Vec<usize> = (0..6).collect();
    order.sort_by(|&a, &b| em[b].total_cmp(&em[a]));
    // max_tail[i]: heaviest mass reachable with elements order[i..]
    let mut max_tail = vec![0.0; 7];
    for i in (0..6).rev() {
        let e = order[i];
        max_tail[i] = max_tail[i + 1] + bounds.max[e] as f64 * em[e];
    }

    let mut found = Vec::new();
    let mut counts = [0u32; 6];
    recurse(
        0,
        mass,
        tol,
        &order,
        &em,
        &max_tail,
        bounds,
        &mut counts,
        &mut found,
    );

    let mut scored: Vec<(f64, String, Formula)> = found
        .into_iter()
        .filter(|f: &Formula| !f.is_empty())
        .map(|f| ((f.mass(masses) - mass).abs(), f.to_string(), f))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    scored.into_iter().map(|(_, _, f)| f).collect()
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    level: usize,
    residual: f64,
    tol: f64,
    order: &[usize],
    em: &[f64; 6],
    max_tail: &[f64],
    bounds: &ElementBounds,
    counts: &mut [u32; 6],
    out: &mut Vec<Formula>,
) {
    if level == order.len() {
        if residual.abs() <= tol {
            out.push(Formula::new(*counts));
        }
        return;
    }
    let e = order[level];
    let m = em[e];
    let hi = ((residual + tol) / m).floor();
    if hi < 0.0 {
        return;
    }
    let hi = (hi as u32).min(bounds.max[e]);
    let lo = ((residual - tol - max_tail[level + 1]) / m).ceil().max(0.0);
    if lo > hi as f64 {
        return;
    }
    for c in (lo as u32)..=hi {
        counts[e] = c;
        recurse(
            level + 1,
            residual - c as f64 * m,
            tol,
            order,
            em,
            max_tail,
            bounds,
            counts,
            out,
        );
    }
    counts[e] = 0;
}
