use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Element order used for counts and for printing.
pub const ELEMENTS: [&str; 6] = ["C", "H", "N", "O", "P", "S"];

/// Monoisotopic masses in Dalton, indexed like [`ELEMENTS`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElementMasses {
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "N")]
    pub n: f64,
    #[serde(rename = "O")]
    pub o: f64,
    #[serde(rename = "P")]
    pub p: f64,
    #[serde(rename = "S")]
    pub s: f64,
}

impl Default for ElementMasses {
    fn default() -> Self {
        ElementMasses {
            c: 12.000000,
            h: 1.007825,
            n: 14.003074,
            o: 15.994915,
            p: 30.973762,
            s: 31.972071,
        }
    }
}

impl ElementMasses {
    pub fn as_array(&self) -> [f64; 6] {
        [self.c, self.h, self.n, self.o, self.p, self.s]
    }
}

/// Element counts over CHNOPS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Formula {
    pub counts: [u32; 6],
}

impl Formula {
    pub fn new(counts: [u32; 6]) -> Self {
        Formula { counts }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn atom_count(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn mass(&self, masses: &ElementMasses) -> f64 {
        self.counts
            .iter()
            .zip(masses.as_array())
            .map(|(&c, m)| c as f64 * m)
            .sum()
    }

    /// `self ⊑ other`: no element count exceeds the other's.
    pub fn is_subformula_of(&self, other: &Formula) -> bool {
        self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    pub fn is_proper_subformula_of(&self, other: &Formula) -> bool {
        self != other && self.is_subformula_of(other)
    }

    /// `self - other`, or `None` if `other` is not a subformula.
    pub fn checked_sub(&self, other: &Formula) -> Option<Formula> {
        let mut counts = [0; 6];
        for i in 0..6 {
            counts[i] = self.counts[i].checked_sub(other.counts[i])?;
        }
        Some(Formula { counts })
    }

    pub fn add(&self, other: &Formula) -> Formula {
        let mut counts = self.counts;
        for (c, o) in counts.iter_mut().zip(other.counts) {
            *c += o;
        }
        Formula { counts }
    }

    /// Rings plus double bonds, `C - H/2 + (N + P)/2 + 1`, with S and O
    /// counted as divalent.
    pub fn rdbe(&self) -> f64 {
        let [c, h, n, _, p, _] = self.counts.map(f64::from);
        c - h / 2.0 + (n + p) / 2.0 + 1.0
    }

    /// Partial order by inclusion; `None` for incomparable formulas.
    pub fn partial_cmp_sub(&self, other: &Formula) -> Option<Ordering> {
        if self == other {
            Some(Ordering::Equal)
        } else if self.is_subformula_of(other) {
            Some(Ordering::Less)
        } else if other.is_subformula_of(self) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (sym, &c) in ELEMENTS.iter().zip(&self.counts) {
            match c {
                0 => {}
                1 => f.write_str(sym)?,
                _ => write!(f, "{sym}{c}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::BadFormula(s.to_string());
        let mut counts = [0u32; 6];
        let mut chars = s.trim().chars().peekable();
        while let Some(ch) = chars.next() {
            let idx = ELEMENTS
                .iter()
                .position(|e| e.starts_with(ch))
                .ok_or_else(bad)?;
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            let n = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| bad())?
            };
            counts[idx] += n;
        }
        Ok(Formula { counts })
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
