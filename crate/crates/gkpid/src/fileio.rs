//! Distribution file formats.
//!
//! The canonical on-disk form is a UTF-8 JSON object:
//!
//! ```json
//! {
//!   "variables": ["X1", "X2", "Y"],
//!   "pmf": [
//!     { "state": ["r", "r", "r"], "p": 0.5 },
//!     { "state": ["R", "R", "R"], "p": 0.5 }
//!   ]
//! }
//! ```
//!
//! A TSV alternative is accepted on input: a header row naming the variables
//! followed by a final `p` column, then one row per outcome.
//!
//! Loading validates that the mass is normalizable: the probabilities must
//! sum to 1 within 1e-6 (rescaling only irons out float dust). Emission via
//! [`to_canonical_json`] is deterministic, so emit → load → emit is
//! byte-stable.

use crate::probspace::JointDistribution;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// How far from 1 the total mass of a file may be before it is rejected.
pub const NORMALIZABLE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid TSV: {0}")]
    Tsv(String),

    #[error("mass not normalizable: probabilities sum to {0}")]
    NotNormalizable(f64),

    #[error(transparent)]
    Distribution(#[from] crate::error::Error),
}

/// Serialized form of a joint distribution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionFile {
    pub variables: Vec<String>,
    pub pmf: Vec<PmfRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PmfRow {
    pub state: Vec<String>,
    pub p: f64,
}

impl From<&JointDistribution> for DistributionFile {
    fn from(d: &JointDistribution) -> Self {
        DistributionFile {
            variables: d.variable_names().to_vec(),
            pmf: (0..d.len())
                .map(|row| PmfRow {
                    state: d.outcome(row).to_vec(),
                    p: d.prob(row),
                })
                .collect(),
        }
    }
}

impl DistributionFile {
    /// Validates and converts into a distribution. Rejects files whose total
    /// mass is not within [`NORMALIZABLE_TOLERANCE`] of 1.
    pub fn into_distribution(self) -> Result<JointDistribution, FileError> {
        let total: f64 = self.pmf.iter().map(|r| r.p).sum();
        if (total - 1.0).abs() > NORMALIZABLE_TOLERANCE {
            return Err(FileError::NotNormalizable(total));
        }
        let rows = self.pmf.into_iter().map(|r| (r.state, r.p)).collect();
        Ok(JointDistribution::from_owned_rows(self.variables, rows)?)
    }
}

/// Canonical serialization: pretty JSON, two-space indent, trailing newline.
pub fn to_canonical_json(d: &JointDistribution) -> String {
    let file = DistributionFile::from(d);
    let mut s = serde_json::to_string_pretty(&file).expect("distribution serializes");
    s.push('\n');
    s
}

pub fn from_json_str(s: &str) -> Result<JointDistribution, FileError> {
    let file: DistributionFile = serde_json::from_str(s)?;
    file.into_distribution()
}

/// Parses the TSV alternative: header of variable names plus a final `p`
/// column, one outcome per line. Blank lines are ignored.
pub fn from_tsv_str(s: &str) -> Result<JointDistribution, FileError> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| FileError::Tsv("empty file".into()))?;
    let mut cols: Vec<&str> = header.split('\t').map(str::trim).collect();
    match cols.pop() {
        Some("p") => {}
        _ => return Err(FileError::Tsv("header must end with a `p` column".into())),
    }
    if cols.is_empty() {
        return Err(FileError::Tsv("header names no variables".into()));
    }
    let variables: Vec<String> = cols.iter().map(|c| c.to_string()).collect();
    let mut pmf = Vec::new();
    for (n, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() != variables.len() + 1 {
            return Err(FileError::Tsv(format!(
                "row {} has {} fields, expected {}",
                n + 1,
                fields.len(),
                variables.len() + 1
            )));
        }
        let p: f64 = fields[variables.len()]
            .parse()
            .map_err(|e| FileError::Tsv(format!("row {}: bad probability: {e}", n + 1)))?;
        pmf.push(PmfRow {
            state: fields[..variables.len()].iter().map(|s| s.to_string()).collect(),
            p,
        });
    }
    DistributionFile { variables, pmf }.into_distribution()
}

/// Auto-detecting load: JSON when the first non-space byte is `{`, TSV otherwise.
pub fn from_str_auto(s: &str) -> Result<JointDistribution, FileError> {
    if s.trim_start().starts_with('{') {
        from_json_str(s)
    } else {
        from_tsv_str(s)
    }
}

/// Formats a value in bits at the reporting precision: six decimals, with
/// negative zero normalized.
pub fn fmt_bits(v: f64) -> String {
    let s = format!("{:.6}", v);
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Rounds to six decimals for machine-readable reports so JSON and text carry
/// identical numeric values. Negative zero is normalized.
pub fn round_bits(v: f64) -> f64 {
    let r = (v * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn json_round_trip_preserves_bytes() {
        for name in corpus::NAMES {
            let d = corpus::by_name(name).unwrap();
            let first = to_canonical_json(&d);
            let reloaded = from_json_str(&first).unwrap();
            let second = to_canonical_json(&reloaded);
            assert_eq!(first, second, "{name}");
        }
    }

    #[test]
    fn rejects_unnormalizable_mass() {
        let text = r#"{"variables":["A"],"pmf":[{"state":["a"],"p":0.5}]}"#;
        assert!(matches!(
            from_json_str(text),
            Err(FileError::NotNormalizable(_))
        ));
    }

    #[test]
    fn tsv_parses() {
        let text = "X1\tX2\tY\tp\nr\tr\tr\t0.5\nR\tR\tR\t0.5\n";
        let d = from_tsv_str(text).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.variable_names(), &["X1", "X2", "Y"]);

        assert!(from_tsv_str("X1\tX2\n0\t1\n").is_err());
        assert!(from_tsv_str("").is_err());
    }

    #[test]
    fn auto_detects_format() {
        let d = corpus::rdn();
        let json = to_canonical_json(&d);
        assert_eq!(from_str_auto(&json).unwrap().len(), 2);
        assert_eq!(
            from_str_auto("A\tp\na\t0.25\nb\t0.75\n").unwrap().len(),
            2
        );
    }

    #[test]
    fn bit_formatting() {
        assert_eq!(fmt_bits(1.0), "1.000000");
        assert_eq!(fmt_bits(-0.0000001), "0.000000");
        assert_eq!(fmt_bits(0.2516291673), "0.251629");
        assert_eq!(round_bits(-0.0000001), 0.0);
        assert_eq!(round_bits(0.9895900789), 0.98959);
    }
}
