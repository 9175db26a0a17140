//! Random instance generation for the counterexample search.
//!
//! Distributions are sampled over 2–4 variables with 2–4 states each; a
//! support mask keeps each outcome cell with probability drawn from the
//! density range, and kept cells receive Dirichlet-like weights (normalized
//! unit exponentials). These constants are fixed and quoted in report
//! headers.

use super::{Instance, PropertyId};
use crate::lattice::join;
use crate::probspace::{JointDistribution, RandomVariable};
use rand::seq::SliceRandom;
use rand::Rng;

pub const MIN_VARS: usize = 2;
pub const MAX_VARS: usize = 4;
pub const MIN_STATES: usize = 2;
pub const MAX_STATES: usize = 4;
pub const MIN_DENSITY: f64 = 0.5;
pub const MAX_DENSITY: f64 = 1.0;

/// One-line description of the generator parameters for report headers.
pub fn generator_description() -> String {
    format!(
        "generator: {MIN_VARS}-{MAX_VARS} variables, {MIN_STATES}-{MAX_STATES} states, \
         support density {MIN_DENSITY}-{MAX_DENSITY}, exponential weights"
    )
}

/// Samples a random distribution with at least `min_vars` variables.
pub fn random_distribution(rng: &mut impl Rng, min_vars: usize) -> JointDistribution {
    let nvars = rng.gen_range(min_vars..=MAX_VARS);
    let sizes: Vec<usize> = (0..nvars)
        .map(|_| rng.gen_range(MIN_STATES..=MAX_STATES))
        .collect();
    let density = rng.gen_range(MIN_DENSITY..=MAX_DENSITY);
    let names: Vec<String> = (0..nvars).map(|i| format!("V{i}")).collect();

    let total_cells: usize = sizes.iter().product();
    let mut rows: Vec<(Vec<String>, f64)> = Vec::new();
    for cell in 0..total_cells {
        // Mixed-radix decode of the cell index into one state per variable.
        let mut rest = cell;
        let tuple: Vec<String> = sizes
            .iter()
            .map(|&s| {
                let state = rest % s;
                rest /= s;
                format!("s{state}")
            })
            .collect();
        if rng.gen::<f64>() < density {
            let weight = -(1.0 - rng.gen::<f64>()).ln();
            rows.push((tuple, weight));
        }
    }
    if rows.iter().all(|(_, w)| *w <= 0.0) {
        let fallback = rng.gen_range(0..total_cells);
        let mut rest = fallback;
        let tuple: Vec<String> = sizes
            .iter()
            .map(|&s| {
                let state = rest % s;
                rest /= s;
                format!("s{state}")
            })
            .collect();
        rows.push((tuple, 1.0));
    }
    JointDistribution::from_owned_rows(names, rows).expect("sampled rows form a distribution")
}

/// Builds a random check instance for a property. The auxiliary variable W
/// cycles through three flavors by trial index: an unrelated column, a
/// refinement of one predictor (forcing Xi ⪯ W), and the target or a
/// refinement of it (forcing Y ⪯ W), so the equality clauses of the
/// monotonicity properties are exercised.
pub fn random_instance(property: PropertyId, rng: &mut impl Rng, trial: usize) -> Instance {
    let needs_pair = matches!(property, PropertyId::Lp0 | PropertyId::Lp1);
    let min_vars = if needs_pair { 3 } else { MIN_VARS };
    let d = random_distribution(rng, min_vars);
    let names = d.variable_names().to_vec();

    let mut order: Vec<usize> = (0..names.len()).collect();
    order.shuffle(rng);

    let n_pred = if needs_pair {
        2
    } else {
        rng.gen_range(1..=2usize).min(names.len() - 1)
    };
    let predictors: Vec<RandomVariable> = order[..n_pred]
        .iter()
        .map(|&i| d.variable(&names[i]).expect("column exists"))
        .collect();
    let target = d.variable(&names[order[n_pred]]).expect("column exists");
    let leftover: Option<RandomVariable> = order
        .get(n_pred + 1)
        .map(|&i| d.variable(&names[i]).expect("column exists"));

    let aux = if matches!(
        property,
        PropertyId::Tm | PropertyId::M0 | PropertyId::M1 | PropertyId::Im
    ) {
        let w = match trial % 3 {
            0 => leftover
                .clone()
                .unwrap_or_else(|| d.constant("const")),
            1 => {
                let p = &predictors[trial % n_pred];
                let other = leftover.as_ref().unwrap_or(&target);
                join(&d, &[p, other]).expect("join over same support")
            }
            _ => {
                if trial % 2 == 0 {
                    target.clone()
                } else {
                    let other = leftover.as_ref().unwrap_or(&predictors[0]);
                    join(&d, &[&target, other]).expect("join over same support")
                }
            }
        };
        Some(w)
    } else {
        None
    };

    Instance {
        name: format!("random#{trial}"),
        dist: d,
        predictors,
        target,
        aux,
        salt: trial as u64,
    }
}
