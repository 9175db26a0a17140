//! Zero-error information and the intersection-information measures.
//!
//! Three candidate intersection informations are implemented behind a common
//! evaluator signature:
//!
//! | id        | definition                                   | base information |
//! |-----------|----------------------------------------------|------------------|
//! | `Imin`    | Σ_y Pr(y) · min_i D_KL(Pr(Xi|y) ‖ Pr(Xi))    | Shannon I        |
//! | `Wedge`   | I(X1∧⋯∧Xn : Y)                               | Shannon I        |
//! | `Wedge0`  | H(X1∧⋯∧Xn∧Y)                                 | zero-error I⁰    |
//!
//! Zero-error information I⁰(A:B) = H(A∧B) is the entropy of the common
//! random variable. On every instance the ordering chain
//! 0 ≤ Wedge0 ≤ Wedge ≤ Imin holds.

use crate::error::{Error, Result};
use crate::lattice::{is_poorer, join, meet};
use crate::probspace::{JointDistribution, RandomVariable};
use serde::{Deserialize, Serialize};

/// Identifier for an intersection-information measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureId {
    /// Minimum specific information over predictors, averaged over target states.
    Imin,
    /// Mutual information between the predictors' common random variable and the target.
    Wedge,
    /// Entropy of the common random variable of predictors and target.
    Wedge0,
}

impl MeasureId {
    pub const ALL: [MeasureId; 3] = [MeasureId::Imin, MeasureId::Wedge, MeasureId::Wedge0];

    pub fn parse(s: &str) -> Option<MeasureId> {
        match s.to_ascii_lowercase().as_str() {
            "imin" => Some(MeasureId::Imin),
            "iwedge" => Some(MeasureId::Wedge),
            "iwedge0" => Some(MeasureId::Wedge0),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MeasureId::Imin => "imin",
            MeasureId::Wedge => "iwedge",
            MeasureId::Wedge0 => "iwedge0",
        }
    }

    /// Evaluates this measure on predictors against a target.
    pub fn evaluate(
        &self,
        d: &JointDistribution,
        predictors: &[&RandomVariable],
        target: &RandomVariable,
    ) -> Result<f64> {
        match self {
            MeasureId::Imin => i_min(d, predictors, target),
            MeasureId::Wedge => i_wedge(d, predictors, target),
            MeasureId::Wedge0 => i_wedge0(d, predictors, target),
        }
    }

    /// The information 𝓘 this measure decomposes: Shannon mutual information
    /// for `Imin` and `Wedge`, zero-error information for `Wedge0`.
    pub fn base_information(
        &self,
        d: &JointDistribution,
        a: &RandomVariable,
        b: &RandomVariable,
    ) -> Result<f64> {
        match self {
            MeasureId::Imin | MeasureId::Wedge => d.mutual_information(a, b),
            MeasureId::Wedge0 => zero_error_information(d, a, b),
        }
    }
}

impl std::fmt::Display for MeasureId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Zero-error information I⁰(A:B) = H(A∧B). Nonnegative and bounded by the
/// mutual information I(A:B).
pub fn zero_error_information(
    d: &JointDistribution,
    a: &RandomVariable,
    b: &RandomVariable,
) -> Result<f64> {
    d.entropy(&meet(d, &[a, b])?)
}

/// State-dependent zero-error information I⁰(X : Y=y) = log2(1 / Pr(Q=q)),
/// where Q = X∧Y and q is the component containing target state `ystate`.
/// Its expectation over Y equals I⁰(X:Y).
pub fn state_dependent_zero_error(
    d: &JointDistribution,
    x: &RandomVariable,
    y: &RandomVariable,
    ystate: usize,
) -> Result<f64> {
    if ystate >= y.block_count() {
        return Err(Error::BlockOutOfRange {
            label: y.label().to_string(),
            block: ystate,
            count: y.block_count(),
        });
    }
    let q = meet(d, &[x, y])?;
    // Every row of a y-block lies in one q-component (y refines q).
    let row = (0..d.len())
        .find(|&r| y.block(r) == ystate)
        .ok_or_else(|| Error::BlockOutOfRange {
            label: y.label().to_string(),
            block: ystate,
            count: y.block_count(),
        })?;
    let mass = q.block_masses(d)[q.block(row)];
    Ok((-mass.log2()).max(0.0))
}

/// Imin of Williams–Beer: the expectation over target states of the minimum
/// specific information among the predictors.
pub fn i_min(
    d: &JointDistribution,
    predictors: &[&RandomVariable],
    target: &RandomVariable,
) -> Result<f64> {
    if predictors.is_empty() {
        return Err(Error::EmptyVariableList);
    }
    let masses = target.block_masses(d);
    let mut total = 0.0;
    for y in 0..target.block_count() {
        let mut min = f64::INFINITY;
        for p in predictors {
            let s = d.specific_information(p, target, y)?;
            if s < min {
                min = s;
            }
        }
        total += masses[y] * min;
    }
    Ok(total.max(0.0))
}

/// I∧: mutual information between the predictors' common random variable and
/// the target. Realizes the maximum of I(Q:Y) over all Q with Q ⪯ Xi for
/// every predictor Xi.
pub fn i_wedge(
    d: &JointDistribution,
    predictors: &[&RandomVariable],
    target: &RandomVariable,
) -> Result<f64> {
    let q = meet(d, predictors)?;
    d.mutual_information(&q, target)
}

/// I∧⁰: entropy of the common random variable of predictors and target.
/// Realizes the maximum of I⁰(Q:Y) over all Q with Q ⪯ Xi for every
/// predictor Xi.
pub fn i_wedge0(
    d: &JointDistribution,
    predictors: &[&RandomVariable],
    target: &RandomVariable,
) -> Result<f64> {
    if predictors.is_empty() {
        return Err(Error::EmptyVariableList);
    }
    let mut vars: Vec<&RandomVariable> = predictors.to_vec();
    vars.push(target);
    d.entropy(&meet(d, &vars)?)
}

/// Union information by inclusion–exclusion over nonempty predictor subsets:
/// I∪ = Σ_S (−1)^(|S|+1) I∩(S : Y). Exponential in the number of predictors,
/// capped at 16. Subsets are visited in fixed ascending bitmask order so the
/// accumulated sum is deterministic.
pub fn i_union(
    d: &JointDistribution,
    measure: MeasureId,
    predictors: &[&RandomVariable],
    target: &RandomVariable,
) -> Result<f64> {
    if predictors.is_empty() {
        return Err(Error::EmptyVariableList);
    }
    if predictors.len() > 16 {
        return Err(Error::TooManyPredictors(predictors.len()));
    }
    let n = predictors.len();
    let mut total = 0.0;
    for mask in 1u32..(1u32 << n) {
        let subset: Vec<&RandomVariable> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| predictors[i])
            .collect();
        let value = measure.evaluate(d, &subset, target)?;
        if mask.count_ones() % 2 == 1 {
            total += value;
        } else {
            total -= value;
        }
    }
    Ok(total)
}

/// Conditional intersection information
/// I∩(X1..Xn : Z | Y) = I∩(X1..Xn : Y∨Z) − I∩(X1..Xn : Y).
pub fn conditional_intersection(
    d: &JointDistribution,
    measure: MeasureId,
    predictors: &[&RandomVariable],
    z: &RandomVariable,
    given: &RandomVariable,
) -> Result<f64> {
    let yz = join(d, &[given, z])?;
    Ok(measure.evaluate(d, predictors, &yz)? - measure.evaluate(d, predictors, given)?)
}

/// True when `x` is a function of every variable in `vars`.
pub fn poorer_than_all(
    d: &JointDistribution,
    x: &RandomVariable,
    vars: &[&RandomVariable],
) -> Result<bool> {
    for v in vars {
        if !is_poorer(d, x, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}
