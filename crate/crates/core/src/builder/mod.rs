//! Spectrum to candidate-DAG construction, and the synthetic compound
//! generator used for evaluation.

mod bundle;
mod corpus;
mod dag;
mod decompose;
mod formula;
mod scoring;
mod spectrum;
mod synth;

pub use bundle::{read_bundle, write_bundle, ManifestRow};
pub use corpus::{synthetic_corpus, SyntheticEntry};
pub use dag::{
    build_candidate_dag, build_compound, prune_unreachable, BuildParams, Candidate,
    CompoundInstance,
};
pub use decompose::{decompose_mass, ppm_error, ppm_window, ElementBounds};
pub use formula::{ElementMasses, Formula, ELEMENTS};
pub use scoring::ScoringModel;
pub use spectrum::{Peak, Spectrum};
pub use synth::{generate_synthetic_compound, GeneratorConfig, PlantedFragment, SyntheticCompound};
