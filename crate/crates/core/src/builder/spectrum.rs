use std::fmt::Write as _;
use std::io::BufRead;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub mz: f64,
    pub intensity: f64,
}

/// An MS/MS spectrum: precursor mass plus fragment peaks, all in Dalton.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub precursor_mz: f64,
    pub peaks: Vec<Peak>,
}

impl Spectrum {
    /// Peak indices sorted by decreasing intensity (ties: larger m/z, then index).
    pub fn by_intensity(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.peaks.len()).collect();
        idx.sort_by(|&a, &b| {
            let (pa, pb) = (&self.peaks[a], &self.peaks[b]);
            pb.intensity
                .total_cmp(&pa.intensity)
                .then(pb.mz.total_cmp(&pa.mz))
                .then(a.cmp(&b))
        });
        idx
    }

    /// Parses the text format: a `PRECURSOR <mz>` header followed by
    /// `<mz> <intensity>` lines. Blank lines and `#` comments are skipped.
    pub fn parse(reader: impl BufRead) -> Result<Self> {
        let mut precursor = None;
        let mut peaks = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            let lineno = i + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: lineno,
                msg: msg.to_string(),
            };
            let mut fields = line.split_whitespace();
            let first = fields.next().unwrap_or_default();
            if precursor.is_none() {
                if !first.eq_ignore_ascii_case("PRECURSOR") {
                    return Err(err("expected PRECURSOR header"));
                }
                let mz: f64 = fields
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("bad precursor m/z"))?;
                if !(mz.is_finite() && mz > 0.0) {
                    return Err(err("precursor m/z must be positive"));
                }
                precursor = Some(mz);
                continue;
            }
            let mz: f64 = first.parse().map_err(|_| err("bad m/z"))?;
            let intensity: f64 = fields
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err("bad intensity"))?;
            if !(mz.is_finite() && mz > 0.0 && intensity.is_finite() && intensity > 0.0) {
                return Err(err("m/z and intensity must be positive"));
            }
            peaks.push(Peak { mz, intensity });
        }
        let precursor_mz = precursor.ok_or(Error::Parse {
            line: 0,
            msg: "missing PRECURSOR header".into(),
        })?;
        Ok(Spectrum {
            precursor_mz,
            peaks,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("PRECURSOR {}\n", self.precursor_mz);
        for p in &self.peaks {
            let _ = writeln!(s, "{} {}", p.mz, p.intensity);
        }
        s
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Spectrum::parse(std::io::BufReader::new(f))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}
