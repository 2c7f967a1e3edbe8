use serde::{Deserialize, Serialize};

use super::formula::Formula;

/// Simplified edge scoring for candidate DAGs.
///
/// Node evidence is folded into every incoming edge:
///
/// `w(u, v) = alpha * mass_term(v) + beta * intensity_term(v) + gamma * loss_term(u - v)`
///
/// * `mass_term`: log-likelihood ratio of the peak's mass error `e` (ppm)
///   under a zero-mean Gaussian with `sigma = tolerance_ppm / 3` against a
///   uniform error over the tolerance window:
///   `ln(2 tol / (sigma sqrt(2 pi))) - e^2 / (2 sigma^2)`. Positive for
///   errors below about 1.3 sigma.
/// * `intensity_term`: `ln(I / mean I)` over the retained fragment peaks, i.e.
///   the log intensity share shifted by the log of the peak count.
/// * `loss_term`: `common_loss_bonus` for a loss in `common_losses`,
///   otherwise `-loss_penalty_per_atom * atoms(loss)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScoringModel {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub common_loss_bonus: f64,
    pub loss_penalty_per_atom: f64,
    pub common_losses: Vec<Formula>,
}

impl Default for ScoringModel {
    fn default() -> Self {
        ScoringModel {
            alpha: 1.0,
            beta: 1.0,
            gamma: 1.0,
            common_loss_bonus: 2.0,
            loss_penalty_per_atom: 0.1,
            common_losses: ["H2O", "CO", "NH3", "CH2O", "CO2", "C2H4"]
                .iter()
                .map(|s| s.parse().expect("valid formula"))
                .collect(),
        }
    }
}

impl ScoringModel {
    pub fn mass_term(&self, error_ppm: f64, tolerance_ppm: f64) -> f64 {
        let sigma = tolerance_ppm / 3.0;
        if sigma <= 0.0 {
            return 0.0;
        }
        let base = (2.0 * tolerance_ppm / (sigma * (2.0 * std::f64::consts::PI).sqrt())).ln();
        base - (error_ppm * error_ppm) / (2.0 * sigma * sigma)
    }

    pub fn intensity_term(&self, relative_intensity: f64) -> f64 {
        relative_intensity.max(f64::MIN_POSITIVE).ln()
    }

    pub fn loss_term(&self, loss: &Formula) -> f64 {
        if self.common_losses.contains(loss) {
            self.common_loss_bonus
        } else {
            -self.loss_penalty_per_atom * loss.atom_count() as f64
        }
    }

    /// Weight of the edge `parent -> child`; `child_error_ppm` and
    /// `child_relative_intensity` describe the child's peak.
    pub fn edge_weight(
        &self,
        parent: &Formula,
        child: &Formula,
        child_error_ppm: f64,
        child_relative_intensity: f64,
        tolerance_ppm: f64,
    ) -> f64 {
        let loss = parent
            .checked_sub(child)
            .expect("edges only connect a formula to one of its subformulas");
        self.alpha * self.mass_term(child_error_ppm, tolerance_ppm)
            + self.beta * self.intensity_term(child_relative_intensity)
            + self.gamma * self.loss_term(&loss)
    }
}
