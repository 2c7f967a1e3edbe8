use super::dag::{build_compound, BuildParams, CompoundInstance};
use super::synth::{generate_synthetic_compound, GeneratorConfig, PlantedFragment};
use crate::error::Result;
use crate::par::{self, Execution};

/// One generated compound: built candidates with the truth set, plus the
/// planted tree.
#[derive(Debug, Clone)]
pub struct SyntheticEntry {
    pub compound: CompoundInstance,
    pub planted: Vec<PlantedFragment>,
}

/// Compound `i` uses seed `cfg.seed + i` and is named `syn<seed>`.
pub fn synthetic_corpus(
    cfg: &GeneratorConfig,
    count: usize,
    params: &BuildParams,
    exec: Execution,
) -> Result<Vec<SyntheticEntry>> {
    cfg.validate()?;
    par::map_range(exec, count, |i| {
        let seed = cfg.seed.wrapping_add(i as u64);
        let syn = generate_synthetic_compound(seed, cfg);
        let mut compound = build_compound(
            format!("syn{seed:05}"),
            &syn.spectrum,
            params,
            Execution::Sequential,
        )?;
        compound.truth = Some(syn.truth);
        Ok(SyntheticEntry {
            compound,
            planted: syn.planted,
        })
    })
    .into_iter()
    .collect()
}
