//! On-disk compound bundles.
//!
//! ```text
//! <dir>/spectrum.txt     PRECURSOR header + peak lines
//! <dir>/manifest.csv     index,formula,mass_error_ppm,truth,graph
//! <dir>/cand_0000.json   one graph file per candidate
//! <dir>/truth.txt        known precursor formula (synthetic data only)
//! <dir>/planted.json     planted tree (synthetic data only)
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::dag::{Candidate, CompoundInstance};
use super::synth::PlantedFragment;
use super::Spectrum;
use crate::error::{Error, Result};
use crate::format::{load_graph, save_graph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestRow {
    pub index: usize,
    pub formula: String,
    pub mass_error_ppm: f64,
    pub truth: bool,
    pub graph: String,
}

fn csv_err(e: csv::Error) -> Error {
    Error::Config(format!("csv: {e}"))
}

pub fn write_bundle(
    dir: &Path,
    c: &CompoundInstance,
    planted: Option<&[PlantedFragment]>,
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    c.spectrum.save(dir.join("spectrum.txt"))?;
    let mut w = csv::Writer::from_path(dir.join("manifest.csv")).map_err(csv_err)?;
    for (i, cand) in c.candidates.iter().enumerate() {
        let graph = format!("cand_{i:04}.json");
        save_graph(&cand.graph, dir.join(&graph))?;
        w.serialize(ManifestRow {
            index: i,
            formula: cand.formula.to_string(),
            mass_error_ppm: cand.mass_error_ppm,
            truth: Some(cand.formula) == c.truth,
            graph,
        })
        .map_err(csv_err)?;
    }
    if c.candidates.is_empty() {
        // header only
        w.write_record(["index", "formula", "mass_error_ppm", "truth", "graph"])
            .map_err(csv_err)?;
    }
    w.flush()?;
    if let Some(t) = c.truth {
        std::fs::write(dir.join("truth.txt"), format!("{t}\n"))?;
    }
    if let Some(p) = planted {
        std::fs::write(dir.join("planted.json"), serde_json::to_string_pretty(p)?)?;
    }
    Ok(())
}

pub fn read_bundle(dir: &Path) -> Result<CompoundInstance> {
    let spectrum = Spectrum::load(dir.join("spectrum.txt"))?;
    let mut r = csv::Reader::from_path(dir.join("manifest.csv")).map_err(csv_err)?;
    let mut candidates = Vec::new();
    for row in r.deserialize() {
        let row: ManifestRow = row.map_err(csv_err)?;
        candidates.push(Candidate {
            formula: row.formula.parse()?,
            mass_error_ppm: row.mass_error_ppm,
            graph: load_graph(dir.join(&row.graph))?,
        });
    }
    let truth_path = dir.join("truth.txt");
    let truth = if truth_path.exists() {
        Some(std::fs::read_to_string(truth_path)?.trim().parse()?)
    } else {
        None
    };
    let name = dir
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(CompoundInstance {
        name,
        spectrum,
        candidates,
        truth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{
        build_compound, generate_synthetic_compound, BuildParams, GeneratorConfig,
    };
    use crate::par::Execution;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let syn = generate_synthetic_compound(3, &GeneratorConfig::default());
        let mut c = build_compound(
            "c0",
            &syn.spectrum,
            &BuildParams::default(),
            Execution::Sequential,
        )
        .unwrap();
        c.truth = Some(syn.truth);
        let path = dir.path().join("c0");
        write_bundle(&path, &c, Some(&syn.planted)).unwrap();
        let back = read_bundle(&path).unwrap();
        assert_eq!(back.name, "c0");
        assert_eq!(back.truth, c.truth);
        assert_eq!(back.candidates.len(), c.candidates.len());
        for (a, b) in back.candidates.iter().zip(&c.candidates) {
            assert_eq!(a.formula, b.formula);
            assert_eq!(a.graph, b.graph);
        }
        assert_eq!(back.truth_index(), c.truth_index());
    }
}
