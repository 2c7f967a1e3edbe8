//! Synthetic compounds with a known precursor formula and a planted
//! fragmentation tree.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Normal};
use serde::{Deserialize, Serialize};

use super::decompose::ElementBounds;
use super::formula::{ElementMasses, Formula};
use super::spectrum::{Peak, Spectrum};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Precursor mass range in Dalton.
    pub mass_min: f64,
    pub mass_max: f64,
    pub fragments_min: usize,
    pub fragments_max: usize,
    /// Standard deviation of the m/z noise, in ppm.
    pub noise_ppm: f64,
    /// Up to this many random noise peaks per spectrum.
    pub noise_peaks: usize,
    /// Log-normal parameters of fragment intensities.
    pub intensity_mu: f64,
    pub intensity_sigma: f64,
    pub noise_intensity_mu: f64,
    pub noise_intensity_sigma: f64,
    pub min_fragment_mass: f64,
    /// Probability that a planted loss is drawn from `common_losses`.
    pub common_loss_prob: f64,
    pub common_losses: Vec<Formula>,
    /// Lowest ring plus double bond count of the precursor and of every
    /// planted fragment.
    pub min_rdbe: f64,
    /// Precursor formulas are drawn inside these bounds.
    pub bounds: ElementBounds,
    pub masses: ElementMasses,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            mass_min: 200.0,
            mass_max: 400.0,
            fragments_min: 8,
            fragments_max: 14,
            noise_ppm: 1.5,
            noise_peaks: 6,
            intensity_mu: 0.0,
            intensity_sigma: 1.5,
            noise_intensity_mu: -1.5,
            noise_intensity_sigma: 0.5,
            min_fragment_mass: 40.0,
            common_loss_prob: 0.4,
            common_losses: ["H2O", "CO", "NH3", "CH2O", "CO2", "C2H4"]
                .iter()
                .map(|s| s.parse().expect("valid formula"))
                .collect(),
            min_rdbe: -0.5,
            bounds: ElementBounds::default(),
            masses: ElementMasses::default(),
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if !(self.mass_min > 0.0 && self.mass_min < self.mass_max) {
            return bad("need 0 < mass_min < mass_max");
        }
        if self.fragments_min > self.fragments_max {
            return bad("fragments_min exceeds fragments_max");
        }
        if !(self.noise_ppm >= 0.0)
            || !(self.intensity_sigma >= 0.0)
            || !(self.noise_intensity_sigma >= 0.0)
        {
            return bad("noise and sigma parameters must be nonnegative");
        }
        if !(0.0..=1.0).contains(&self.common_loss_prob) {
            return bad("common_loss_prob must lie in [0, 1]");
        }
        if self.common_losses.iter().any(Formula::is_empty) {
            return bad("empty common loss");
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: GeneratorConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// One node of the planted tree. Index 0 is the precursor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedFragment {
    pub formula: Formula,
    pub parent: Option<usize>,
    pub loss: Option<Formula>,
}

#[derive(Debug, Clone)]
pub struct SyntheticCompound {
    pub spectrum: Spectrum,
    pub truth: Formula,
    pub planted: Vec<PlantedFragment>,
}

fn sample_precursor(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Formula {
    let b = cfg.bounds.max;
    loop {
        let c = rng.gen_range(4..=b[0].clamp(4, 24));
        let h_hi = (2 * c + 3).min(b[1]);
        let h = rng.gen_range((c / 2).min(h_hi)..=h_hi);
        let n = rng.gen_range(0..=b[2].min(3));
        let o = rng.gen_range(0..=b[3].min(8));
        let p = if b[4] > 0 && rng.gen_bool(0.08) { 1 } else { 0 };
        let s = if b[5] > 0 && rng.gen_bool(0.08) { 1 } else { 0 };
        let f = Formula::new([c, h, n, o, p, s]);
        let m = f.mass(&cfg.masses);
        if (cfg.mass_min..=cfg.mass_max).contains(&m)
            && f.is_subformula_of(&Formula::new(b))
            && f.rdbe() >= cfg.min_rdbe
        {
            return f;
        }
    }
}

fn sample_loss(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Formula {
    if !cfg.common_losses.is_empty() && rng.gen_bool(cfg.common_loss_prob) {
        return *cfg.common_losses.choose(rng).expect("nonempty");
    }
    loop {
        let f = Formula::new([
            rng.gen_range(0..=3),
            rng.gen_range(0..=6),
            rng.gen_range(0..=1),
            rng.gen_range(0..=2),
            0,
            0,
        ]);
        if !f.is_empty() {
            return f;
        }
    }
}

/// Draws a precursor, grows a random tree of subformulas by repeatedly
/// removing losses from random tree nodes, and emits one peak per fragment
/// plus noise peaks. Fully determined by `seed` and `cfg`.
pub fn generate_synthetic_compound(seed: u64, cfg: &GeneratorConfig) -> SyntheticCompound {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let masses = &cfg.masses;
    let truth = sample_precursor(&mut rng, cfg);
    let target = rng.gen_range(cfg.fragments_min..=cfg.fragments_max);

    let mut planted = vec![PlantedFragment {
        formula: truth,
        parent: None,
        loss: None,
    }];
    let mut node_masses = vec![truth.mass(masses)];
    // keep fragments far enough apart that each lands on its own peak
    let min_gap = 0.05;
    let mut attempts = 0;
    while planted.len() <= target && attempts < 200 * (target + 1) {
        attempts += 1;
        let parent = rng.gen_range(0..planted.len());
        let loss = sample_loss(&mut rng, cfg);
        let Some(child) = planted[parent].formula.checked_sub(&loss) else {
            continue;
        };
        let m = child.mass(masses);
        if child.is_empty() || m < cfg.min_fragment_mass || child.rdbe() < cfg.min_rdbe {
            continue;
        }
        if node_masses.iter().any(|&x| (x - m).abs() < min_gap) {
            continue;
        }
        planted.push(PlantedFragment {
            formula: child,
            parent: Some(parent),
            loss: Some(loss),
        });
        node_masses.push(m);
    }

    let mz_noise = Normal::new(0.0, cfg.noise_ppm.max(0.0)).expect("finite sigma");
    let frag_int = LogNormal::new(cfg.intensity_mu, cfg.intensity_sigma).expect("valid log-normal");
    let noise_int = LogNormal::new(cfg.noise_intensity_mu, cfg.noise_intensity_sigma)
        .expect("valid log-normal");
    let jitter = |m: f64, rng: &mut ChaCha8Rng| m * (1.0 + mz_noise.sample(rng) * 1e-6);

    let precursor_mz = jitter(node_masses[0], &mut rng);
    let mut peaks = vec![Peak {
        mz: precursor_mz,
        intensity: frag_int.sample(&mut rng),
    }];
    for &m in &node_masses[1..] {
        let mz = jitter(m, &mut rng);
        peaks.push(Peak {
            mz,
            intensity: frag_int.sample(&mut rng),
        });
    }
    let noise_count = rng.gen_range(0..=cfg.noise_peaks);
    let hi = (node_masses[0] - 2.0).max(cfg.min_fragment_mass + 1.0);
    for _ in 0..noise_count {
        let mz = rng.gen_range(cfg.min_fragment_mass..hi);
        if node_masses.iter().any(|&x| (x - mz).abs() < min_gap) {
            continue;
        }
        peaks.push(Peak {
            mz,
            intensity: noise_int.sample(&mut rng),
        });
    }
    peaks.sort_by(|a, b| a.mz.total_cmp(&b.mz));

    SyntheticCompound {
        spectrum: Spectrum {
            precursor_mz,
            peaks,
        },
        truth,
        planted,
    }
}
