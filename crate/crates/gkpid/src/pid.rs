//! The n=2 partial information decomposition.
//!
//! For two predictors the information 𝓘(X1∨X2 : Y) splits into four parts:
//! redundant, unique to each predictor, and synergistic. Relative to a chosen
//! intersection information I∩ and its base information 𝓘:
//!
//! ```text
//! redundant = I∩(X1,X2 : Y)
//! unique_i  = 𝓘(Xi : Y) − redundant
//! synergy   = 𝓘(X1∨X2 : Y) − 𝓘(X1:Y) − 𝓘(X2:Y) + redundant
//! ```
//!
//! 𝓘 is Shannon mutual information for `Imin`/`Wedge` and zero-error
//! information for `Wedge0`.

use crate::error::Result;
use crate::lattice::join;
use crate::measures::MeasureId;
use crate::probspace::{JointDistribution, RandomVariable};
use serde::Serialize;

/// Synergy below −1e-9 counts as negative.
pub const SYNERGY_TOLERANCE: f64 = 1e-9;

/// The four partial informations plus the whole they decompose.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PidResult {
    pub redundant: f64,
    pub unique_1: f64,
    pub unique_2: f64,
    pub synergy: f64,
    /// 𝓘(X1∨X2 : Y), the decomposed total.
    pub whole: f64,
}

impl PidResult {
    pub fn components(&self) -> [f64; 4] {
        [self.redundant, self.unique_1, self.unique_2, self.synergy]
    }

    pub fn min_component(&self) -> f64 {
        self.components().into_iter().fold(f64::INFINITY, f64::min)
    }
}

/// Decomposes 𝓘(X1∨X2 : Y) under the given measure.
pub fn decompose2(
    d: &JointDistribution,
    measure: MeasureId,
    x1: &RandomVariable,
    x2: &RandomVariable,
    target: &RandomVariable,
) -> Result<PidResult> {
    let redundant = measure.evaluate(d, &[x1, x2], target)?;
    let i1 = measure.base_information(d, x1, target)?;
    let i2 = measure.base_information(d, x2, target)?;
    let pair = join(d, &[x1, x2])?;
    let whole = measure.base_information(d, &pair, target)?;
    Ok(PidResult {
        redundant,
        unique_1: i1 - redundant,
        unique_2: i2 - redundant,
        synergy: whole - i1 - i2 + redundant,
        whole,
    })
}

/// True when the synergistic component falls below zero, i.e. when
/// 𝓘(X1∨X2:Y) < 𝓘(X1:Y) + 𝓘(X2:Y) − I∩(X1,X2:Y).
pub fn has_negative_synergy(
    d: &JointDistribution,
    measure: MeasureId,
    x1: &RandomVariable,
    x2: &RandomVariable,
    target: &RandomVariable,
) -> Result<bool> {
    Ok(decompose2(d, measure, x1, x2, target)?.synergy < -SYNERGY_TOLERANCE)
}
