use serde::{Deserialize, Serialize};

use super::decompose::{decompose_mass, ppm_error, ppm_window, ElementBounds};
use super::formula::{ElementMasses, Formula};
use super::scoring::ScoringModel;
use super::spectrum::Spectrum;
use crate::error::{Error, Result};
use crate::graph::{ColoredDag, DagBuilder};
use crate::par::{self, Execution};

/// Everything needed to turn a spectrum into candidate graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BuildParams {
    pub tolerance_ppm: f64,
    /// Cap on retained fragment peaks; the precursor color comes on top.
    pub max_peaks: usize,
    /// Precursor candidates and fragment explanations with a lower ring plus
    /// double bond count are discarded.
    pub min_rdbe: Option<f64>,
    pub bounds: ElementBounds,
    pub masses: ElementMasses,
    pub scoring: ScoringModel,
}

impl Default for BuildParams {
    fn default() -> Self {
        BuildParams {
            tolerance_ppm: 10.0,
            max_peaks: 60,
            min_rdbe: Some(-0.5),
            bounds: ElementBounds::default(),
            masses: ElementMasses::default(),
            scoring: ScoringModel::default(),
        }
    }
}

impl BuildParams {
    pub fn plausible(&self, f: &Formula) -> bool {
        self.min_rdbe.map_or(true, |m| f.rdbe() >= m)
    }
}

/// One precursor hypothesis and its graph.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub formula: Formula,
    pub mass_error_ppm: f64,
    pub graph: ColoredDag,
}

#[derive(Debug, Clone)]
pub struct CompoundInstance {
    pub name: String,
    pub spectrum: Spectrum,
    pub candidates: Vec<Candidate>,
    pub truth: Option<Formula>,
}

impl CompoundInstance {
    pub fn truth_index(&self) -> Option<usize> {
        let t = self.truth?;
        self.candidates.iter().position(|c| c.formula == t)
    }

    /// Set when the precursor mass has no decomposition.
    pub fn has_no_candidates(&self) -> bool {
        self.candidates.is_empty()
    }
}

/// Builds the candidate DAG for one precursor formula.
///
/// Fragment peaks (all peaks below the precursor window) are decomposed into
/// proper subformulas of `precursor`; peaks without an explanation are
/// dropped, then the `max_peaks` most intense remaining peaks are kept. Each
/// retained peak is one color, ranked by decreasing m/z after the precursor
/// color, and each explanation one node. `u -> v` is an edge iff the formula
/// of `v` is a proper subformula of the formula of `u`.
pub fn build_candidate_dag(
    spectrum: &Spectrum,
    precursor: &Formula,
    params: &BuildParams,
) -> Result<ColoredDag> {
    let masses = &params.masses;
    let ppm = params.tolerance_ppm;
    let pmz = spectrum.precursor_mz;
    let pmass = precursor.mass(masses);
    if (pmass - pmz).abs() > ppm_window(pmz, ppm) * (1.0 + 1e-9) {
        return Err(Error::PrecursorMismatch {
            formula: precursor.to_string(),
            mass: pmass,
            mz: pmz,
            ppm,
        });
    }

    let bounds = ElementBounds::within(precursor);
    let cutoff = pmz - ppm_window(pmz, ppm);
    let mut explained: Vec<(usize, Vec<Formula>)> = Vec::new();
    for i in spectrum.by_intensity() {
        if explained.len() >= params.max_peaks {
            break;
        }
        let peak = spectrum.peaks[i];
        if peak.mz >= cutoff {
            continue;
        }
        let forms: Vec<Formula> = decompose_mass(peak.mz, ppm, &bounds, masses)
            .into_iter()
            .filter(|f| f != precursor && params.plausible(f))
            .collect();
        if !forms.is_empty() {
            explained.push((i, forms));
        }
    }
    // colors by decreasing m/z; rank 0 is the precursor
    explained.sort_by(|a, b| {
        spectrum.peaks[b.0]
            .mz
            .total_cmp(&spectrum.peaks[a.0].mz)
            .then(a.0.cmp(&b.0))
    });
    let mean_intensity = if explained.is_empty() {
        1.0
    } else {
        explained
            .iter()
            .map(|(i, _)| spectrum.peaks[*i].intensity)
            .sum::<f64>()
            / explained.len() as f64
    };

    let k = explained.len() + 1;
    let mut b = DagBuilder::new((0..k).collect());
    // (formula, error ppm, relative intensity)
    let mut info = vec![(*precursor, 0.0, 0.0)];
    b.add_node(0, precursor.to_string());
    for (color, (peak_idx, forms)) in explained.iter().enumerate() {
        let peak = spectrum.peaks[*peak_idx];
        for f in forms {
            b.add_node(color + 1, f.to_string());
            info.push((
                *f,
                ppm_error(f, peak.mz, masses),
                peak.intensity / mean_intensity,
            ));
        }
    }
    for (u, (fu, _, _)) in info.iter().enumerate() {
        for (v, (fv, err, rel)) in info.iter().enumerate() {
            if fv.is_proper_subformula_of(fu) {
                let w = params.scoring.edge_weight(fu, fv, *err, *rel, ppm);
                b.add_edge(u, v, w)?;
            }
        }
    }
    let g = b.build(0)?;
    prune_unreachable(&g)
}

/// Drops nodes not reachable from the root, renumbering the rest in order.
/// Colors that lose all their nodes are dropped and the remaining ranks
/// compacted.
pub fn prune_unreachable(g: &ColoredDag) -> Result<ColoredDag> {
    let seen = g.reachable_from(g.root());
    if seen.iter().all(|&s| s) {
        return Ok(g.clone());
    }
    let mut new_id = vec![usize::MAX; g.node_count()];
    let mut color_used = vec![false; g.color_count()];
    for v in 0..g.node_count() {
        if seen[v] {
            color_used[g.color(v)] = true;
        }
    }
    let mut kept_colors: Vec<usize> = (0..g.color_count()).filter(|&c| color_used[c]).collect();
    kept_colors.sort_by_key(|&c| g.color_rank(c));
    let mut new_color = vec![usize::MAX; g.color_count()];
    let mut ranks = vec![0; kept_colors.len()];
    // keep color indices in original index order, ranks compacted by old rank
    let mut by_index = kept_colors.clone();
    by_index.sort_unstable();
    for (i, &c) in by_index.iter().enumerate() {
        new_color[c] = i;
    }
    for (rank, &c) in kept_colors.iter().enumerate() {
        ranks[new_color[c]] = rank;
    }
    let mut b = DagBuilder::new(ranks);
    for v in 0..g.node_count() {
        if seen[v] {
            new_id[v] = b.add_node(new_color[g.color(v)], g.label(v));
        }
    }
    for (u, v, w) in g.edges() {
        if seen[u] && seen[v] {
            b.add_edge(new_id[u], new_id[v], w)?;
        }
    }
    b.build(new_id[g.root()])
}

/// Decomposes the precursor mass and builds one graph per candidate formula,
/// in decomposition order (smallest mass error first).
pub fn build_compound(
    name: impl Into<String>,
    spectrum: &Spectrum,
    params: &BuildParams,
    exec: Execution,
) -> Result<CompoundInstance> {
    let mut formulas = decompose_mass(
        spectrum.precursor_mz,
        params.tolerance_ppm,
        &params.bounds,
        &params.masses,
    );
    formulas.retain(|f| params.plausible(f));
    let built = par::map(exec, &formulas, |f| {
        build_candidate_dag(spectrum, f, params).map(|graph| Candidate {
            formula: *f,
            mass_error_ppm: ppm_error(f, spectrum.precursor_mz, &params.masses),
            graph,
        })
    });
    let candidates = built.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(CompoundInstance {
        name: name.into(),
        spectrum: spectrum.clone(),
        candidates,
        truth: None,
    })
}
