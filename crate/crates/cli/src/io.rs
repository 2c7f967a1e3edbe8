use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use mcs_core::builder::{read_bundle, BuildParams, CompoundInstance};
use mcs_core::{Heuristic, Method};

use crate::{BuildOpts, Failure};

/// Per-corpus index written by `gen`.
pub const CORPUS_INDEX: &str = "corpus.csv";

pub fn build_params(o: &BuildOpts) -> Result<BuildParams, Failure> {
    if !(o.ppm > 0.0 && o.ppm.is_finite()) {
        return Err(Failure::Config(format!(
            "--ppm must be positive, got {}",
            o.ppm
        )));
    }
    Ok(BuildParams {
        tolerance_ppm: o.ppm,
        max_peaks: o.max_peaks,
        ..BuildParams::default()
    })
}

pub fn parse_methods(s: &str) -> Result<Vec<Method>, Failure> {
    if s == "all" {
        return Ok(Method::all());
    }
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let m: Method = part
            .parse()
            .map_err(|_| Failure::Config(unknown_method(part)))?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err(Failure::Config("no method given".into()));
    }
    Ok(out)
}

pub fn parse_method(s: &str) -> Result<Method, Failure> {
    s.parse().map_err(|_| Failure::Config(unknown_method(s)))
}

fn unknown_method(s: &str) -> String {
    let ids: Vec<&str> = Heuristic::ALL
        .iter()
        .map(|h| h.name())
        .chain(["max", "exact"])
        .collect();
    format!("unknown method {s:?} (expected one of {})", ids.join(", "))
}

/// Bundle directories below each input: a corpus directory contributes the
/// bundles listed in its index, a bundle directory itself.
pub fn bundle_dirs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, Failure> {
    let mut out = Vec::new();
    for p in inputs {
        let index = p.join(CORPUS_INDEX);
        if index.is_file() {
            let mut r = csv::Reader::from_path(&index)
                .map_err(|e| Failure::Config(format!("{}: {e}", index.display())))?;
            for row in r.records() {
                let row = row.map_err(|e| Failure::Config(format!("{}: {e}", index.display())))?;
                out.push(p.join(&row[0]));
            }
        } else if p.join("spectrum.txt").is_file() {
            out.push(p.clone());
        } else {
            return Err(Failure::Config(format!(
                "{} is neither a corpus nor a bundle directory",
                p.display()
            )));
        }
    }
    Ok(out)
}

pub fn load_compounds(inputs: &[PathBuf]) -> Result<Vec<CompoundInstance>, Failure> {
    bundle_dirs(inputs)?
        .iter()
        .map(|d| read_bundle(d).map_err(|e| Failure::Config(format!("{}: {e}", d.display()))))
        .collect()
}

/// Buffered writer for `path`, or stdout.
pub fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            Box::new(BufWriter::new(File::create(p)?))
        }
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

pub fn csv_failure(e: csv::Error) -> Failure {
    Failure::Config(format!("csv: {e}"))
}
