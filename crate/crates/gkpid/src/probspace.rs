//! Finite joint distributions and random variables as partitions.
//!
//! A [`JointDistribution`] is a finite support of outcome tuples with
//! strictly positive probabilities summing to one. A [`RandomVariable`] is a
//! partition of that support: two rows belong to the same block exactly when
//! the variable takes the same value on them. Modeling variables as
//! partitions makes every information quantity invariant under state
//! relabeling by construction.
//!
//! All quantities are in bits (base-2 logarithms), with the usual convention
//! 0·log(0) = 0.

use crate::error::{Error, Result};
use serde::Serialize;

/// Tolerance used when deciding whether stored probabilities already sum to 1.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// A finite joint distribution over named discrete variables.
///
/// Construction normalizes the input: zero-probability rows are dropped,
/// duplicate outcome tuples are merged by summing probability, and the result
/// is rescaled to total mass 1 when necessary.
#[derive(Clone, Debug)]
pub struct JointDistribution {
    names: Vec<String>,
    support: Vec<Vec<String>>,
    probs: Vec<f64>,
}

impl JointDistribution {
    /// Builds a distribution from borrowed rows. Convenient for literals.
    pub fn from_rows(names: &[&str], rows: &[(&[&str], f64)]) -> Result<Self> {
        Self::from_owned_rows(
            names.iter().map(|s| s.to_string()).collect(),
            rows.iter()
                .map(|(t, p)| (t.iter().map(|s| s.to_string()).collect(), *p))
                .collect(),
        )
    }

    /// Builds a distribution from owned rows: drops zero rows, merges
    /// duplicates, normalizes total mass.
    pub fn from_owned_rows(names: Vec<String>, rows: Vec<(Vec<String>, f64)>) -> Result<Self> {
        let arity = names.len();
        let mut support: Vec<Vec<String>> = Vec::new();
        let mut probs: Vec<f64> = Vec::new();
        let mut index: std::collections::HashMap<Vec<String>, usize> =
            std::collections::HashMap::new();

        for (row, (tuple, p)) in rows.into_iter().enumerate() {
            if tuple.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: tuple.len(),
                });
            }
            if p < 0.0 {
                return Err(Error::NegativeProbability { prob: p, row });
            }
            match index.get(&tuple) {
                Some(&i) => probs[i] += p,
                None => {
                    index.insert(tuple.clone(), support.len());
                    support.push(tuple);
                    probs.push(p);
                }
            }
        }

        let keep: Vec<bool> = probs.iter().map(|&p| p > 0.0).collect();
        let support: Vec<Vec<String>> = support
            .into_iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(t, _)| t)
            .collect();
        let mut probs: Vec<f64> = probs.into_iter().zip(&keep).filter(|(_, &k)| k).map(|(p, _)| p).collect();

        let total: f64 = probs.iter().sum();
        if support.is_empty() || total <= 0.0 {
            return Err(Error::EmptySupport);
        }
        // Rescale only when the input is genuinely unnormalized; inputs that
        // already sum to 1 (within float dust) keep their exact bytes.
        if (total - 1.0).abs() > MASS_TOLERANCE {
            for p in &mut probs {
                *p /= total;
            }
        }

        Ok(JointDistribution { names, support, probs })
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    /// Number of support rows (all with positive probability).
    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn prob(&self, row: usize) -> f64 {
        self.probs[row]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn outcome(&self, row: usize) -> &[String] {
        &self.support[row]
    }

    pub fn name_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Projects a named column into the partition model: blocks are the
    /// equality classes of that column's state labels, numbered by first
    /// occurrence in support order.
    pub fn variable(&self, name: &str) -> Result<RandomVariable> {
        let col = self.name_index(name)?;
        let mut labels: Vec<String> = Vec::new();
        let mut block_of = Vec::with_capacity(self.len());
        for row in &self.support {
            let state = &row[col];
            let id = match labels.iter().position(|l| l == state) {
                Some(i) => i,
                None => {
                    labels.push(state.clone());
                    labels.len() - 1
                }
            };
            block_of.push(id);
        }
        Ok(RandomVariable {
            label: name.to_string(),
            block_of,
            block_labels: labels,
        })
    }

    /// The one-block (constant) variable over this support.
    pub fn constant(&self, label: &str) -> RandomVariable {
        RandomVariable {
            label: label.to_string(),
            block_of: vec![0; self.len()],
            block_labels: vec!["c0".to_string()],
        }
    }

    fn check_over(&self, v: &RandomVariable) -> Result<()> {
        if v.block_of.len() != self.len() {
            return Err(Error::SupportMismatch {
                label: v.label.clone(),
                var_rows: v.block_of.len(),
                dist_rows: self.len(),
            });
        }
        Ok(())
    }

    /// H(V) = Σ over blocks of −p·log2 p, where p is total block mass.
    pub fn entropy(&self, v: &RandomVariable) -> Result<f64> {
        self.check_over(v)?;
        Ok(entropy_of_masses(&v.block_masses(self)))
    }

    /// H(V | W) = H(V,W) − H(W). Zero exactly when V is a function of W.
    pub fn conditional_entropy(&self, v: &RandomVariable, given: &RandomVariable) -> Result<f64> {
        self.check_over(v)?;
        self.check_over(given)?;
        let pair = pair_blocks(&v.block_of, &given.block_of);
        let h_pair = entropy_of_masses(&masses_of(&pair, &self.probs));
        let h_given = entropy_of_masses(&given.block_masses(self));
        Ok((h_pair - h_given).max(0.0))
    }

    /// Shannon mutual information I(A:B) = H(A) + H(B) − H(A,B).
    pub fn mutual_information(&self, a: &RandomVariable, b: &RandomVariable) -> Result<f64> {
        self.check_over(a)?;
        self.check_over(b)?;
        let pair = pair_blocks(&a.block_of, &b.block_of);
        let h_pair = entropy_of_masses(&masses_of(&pair, &self.probs));
        let h_a = entropy_of_masses(&a.block_masses(self));
        let h_b = entropy_of_masses(&b.block_masses(self));
        Ok((h_a + h_b - h_pair).max(0.0))
    }

    /// Specific information of `a` at state `y` of `target`:
    /// D_KL(P(A | Y=y) ‖ P(A)).
    pub fn specific_information(
        &self,
        a: &RandomVariable,
        target: &RandomVariable,
        y: usize,
    ) -> Result<f64> {
        self.check_over(a)?;
        self.check_over(target)?;
        if y >= target.block_count() {
            return Err(Error::BlockOutOfRange {
                label: target.label.clone(),
                block: y,
                count: target.block_count(),
            });
        }
        let prior = a.block_masses(self);
        let mut posterior = vec![0.0; a.block_count()];
        let mut y_mass = 0.0;
        for row in 0..self.len() {
            if target.block_of[row] == y {
                posterior[a.block_of[row]] += self.probs[row];
                y_mass += self.probs[row];
            }
        }
        if y_mass <= 0.0 {
            return Err(Error::BlockOutOfRange {
                label: target.label.clone(),
                block: y,
                count: target.block_count(),
            });
        }
        let mut kl = 0.0;
        for (post, pri) in posterior.iter().zip(&prior) {
            let c = post / y_mass;
            if c > 0.0 {
                kl += c * (c / pri).log2();
            }
        }
        Ok(kl.max(0.0))
    }
}

/// A random variable represented as a partition of a distribution's support.
///
/// `block_of[row]` gives the block id of each support row; ids are contiguous
/// and, for variables built by this crate's constructors, numbered by first
/// occurrence in support order. `block_labels[id]` carries a display label
/// per block.
#[derive(Clone, Debug, Serialize)]
pub struct RandomVariable {
    label: String,
    block_of: Vec<usize>,
    block_labels: Vec<String>,
}

impl RandomVariable {
    /// Builds a variable from a raw block assignment, renumbering blocks
    /// canonically (by first occurrence) and deriving labels through
    /// `label_of` keyed by the raw ids.
    pub fn from_assignment<F>(label: &str, raw: &[usize], mut label_of: F) -> RandomVariable
    where
        F: FnMut(usize) -> String,
    {
        let mut remap: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut block_of = Vec::with_capacity(raw.len());
        let mut block_labels = Vec::new();
        for &r in raw {
            let next = remap.len();
            let id = *remap.entry(r).or_insert(next);
            if id == block_labels.len() {
                block_labels.push(label_of(r));
            }
            block_of.push(id);
        }
        RandomVariable {
            label: label.to_string(),
            block_of,
            block_labels,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> RandomVariable {
        self.label = label.to_string();
        self
    }

    pub fn block_count(&self) -> usize {
        self.block_labels.len()
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn block(&self, row: usize) -> usize {
        self.block_of[row]
    }

    pub fn block_labels(&self) -> &[String] {
        &self.block_labels
    }

    /// Total probability mass per block.
    pub fn block_masses(&self, d: &JointDistribution) -> Vec<f64> {
        masses_of(&self.block_of, d.probs())
    }

    /// An informationally equivalent variant: same partition, block ids
    /// renumbered through the permutation `perm` (new id of each old id).
    /// The result intentionally keeps the permuted numbering rather than the
    /// canonical one.
    pub fn permuted(&self, perm: &[usize]) -> RandomVariable {
        assert_eq!(perm.len(), self.block_count());
        let block_of = self.block_of.iter().map(|&b| perm[b]).collect();
        let mut block_labels = vec![String::new(); self.block_labels.len()];
        for (old, &new) in perm.iter().enumerate() {
            block_labels[new] = self.block_labels[old].clone();
        }
        RandomVariable {
            label: self.label.clone(),
            block_of,
            block_labels,
        }
    }
}

fn masses_of(block_of: &[usize], probs: &[f64]) -> Vec<f64> {
    let k = block_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut mass = vec![0.0; k];
    for (b, p) in block_of.iter().zip(probs) {
        mass[*b] += p;
    }
    mass
}

fn entropy_of_masses(masses: &[f64]) -> f64 {
    masses
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Canonical block ids of the pairwise refinement (used for joint entropies).
pub(crate) fn pair_blocks(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut seen: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let next = seen.len();
            *seen.entry((x, y)).or_insert(next)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const TOL: f64 = 1e-9;

    #[test]
    fn from_rows_unq_keeps_four_rows() {
        let d = corpus::unq();
        assert_eq!(d.len(), 4);
        let total: f64 = d.probs().iter().sum();
        assert!((total - 1.0).abs() < TOL);
    }

    #[test]
    fn from_rows_point_mass() {
        let d = JointDistribution::from_rows(&["A"], &[(&["a"], 1.0)]).unwrap();
        assert_eq!(d.len(), 1);
        assert!((d.prob(0) - 1.0).abs() < TOL);
    }

    #[test]
    fn from_rows_drops_zero_rows() {
        let d = JointDistribution::from_rows(
            &["A"],
            &[(&["a"], 0.5), (&["b"], 0.0), (&["c"], 0.5)],
        )
        .unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.outcome(1)[0] == "c");
    }

    #[test]
    fn from_rows_merges_duplicates() {
        let d = JointDistribution::from_rows(
            &["A"],
            &[(&["a"], 0.25), (&["b"], 0.5), (&["a"], 0.25)],
        )
        .unwrap();
        assert_eq!(d.len(), 2);
        assert!((d.prob(0) - 0.5).abs() < TOL);
    }

    #[test]
    fn from_rows_rejects_bad_input() {
        assert!(matches!(
            JointDistribution::from_rows(&["A"], &[(&["a"], -0.1)]),
            Err(Error::NegativeProbability { .. })
        ));
        assert!(matches!(
            JointDistribution::from_rows(&["A", "B"], &[(&["a"], 1.0)]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            JointDistribution::from_rows(&["A"], &[(&["a"], 0.0)]),
            Err(Error::EmptySupport)
        ));
    }

    #[test]
    fn variable_projects_columns() {
        let d = corpus::unq();
        let x1 = d.variable("X1").unwrap();
        assert_eq!(x1.block_count(), 2);
        assert_eq!(x1.block_labels(), &["a".to_string(), "A".to_string()]);

        let point = JointDistribution::from_rows(&["A"], &[(&["a"], 1.0)]).unwrap();
        assert_eq!(point.variable("A").unwrap().block_count(), 1);

        let imp = corpus::imperfect_rdn();
        let x2 = imp.variable("X2").unwrap();
        assert_eq!(x2.block_count(), 2);

        assert!(matches!(d.variable("nope"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn entropy_examples() {
        let d = JointDistribution::from_rows(&["B"], &[(&["0"], 0.5), (&["1"], 0.5)]).unwrap();
        let b = d.variable("B").unwrap();
        assert!((d.entropy(&b).unwrap() - 1.0).abs() < TOL);
        assert!(d.entropy(&d.constant("c")).unwrap().abs() < TOL);

        let sub = corpus::subtle();
        let y = sub.variable("Y").unwrap();
        assert!((sub.entropy(&y).unwrap() - 1.584_962_500_721_156_1).abs() < TOL);
    }

    #[test]
    fn conditional_entropy_examples() {
        let imp = corpus::imperfect_rdn();
        let x1 = imp.variable("X1").unwrap();
        let x2 = imp.variable("X2").unwrap();
        let y = imp.variable("Y").unwrap();
        // Y ≅ X1 on this support.
        assert!(imp.conditional_entropy(&y, &x1).unwrap().abs() < TOL);
        // Frozen by direct summation over the 3-row table.
        let h = imp.conditional_entropy(&y, &x2).unwrap();
        assert!((h - 0.010_409_921_059_755_911).abs() < TOL);
        assert!((h - 0.01).abs() < 1e-3);
    }

    #[test]
    fn mutual_information_examples() {
        let unq = corpus::unq();
        let x1 = unq.variable("X1").unwrap();
        let y = unq.variable("Y").unwrap();
        assert!((unq.mutual_information(&x1, &y).unwrap() - 1.0).abs() < TOL);

        let imp = corpus::imperfect_rdn();
        let mi = imp
            .mutual_information(&imp.variable("X2").unwrap(), &imp.variable("Y").unwrap())
            .unwrap();
        assert!((mi - 0.989_590_078_940_244_09).abs() < TOL);
        assert!((mi - 0.99).abs() < 1e-3);

        let sub = corpus::subtle();
        let mi12 = sub
            .mutual_information(&sub.variable("X1").unwrap(), &sub.variable("X2").unwrap())
            .unwrap();
        assert!((mi12 - 0.251_629_167_387_823_04).abs() < TOL);
        assert!((mi12 - 0.252).abs() < 1e-3);
    }

    #[test]
    fn specific_information_examples() {
        // Independent pair: zero at every state.
        let d = JointDistribution::from_rows(
            &["A", "Y"],
            &[
                (&["0", "0"], 0.25),
                (&["0", "1"], 0.25),
                (&["1", "0"], 0.25),
                (&["1", "1"], 0.25),
            ],
        )
        .unwrap();
        let a = d.variable("A").unwrap();
        let y = d.variable("Y").unwrap();
        for yb in 0..y.block_count() {
            assert!(d.specific_information(&a, &y, yb).unwrap().abs() < TOL);
        }

        let rdn = corpus::rdn();
        let x1 = rdn.variable("X1").unwrap();
        let yr = rdn.variable("Y").unwrap();
        assert!((rdn.specific_information(&x1, &yr, 0).unwrap() - 1.0).abs() < TOL);

        let unq = corpus::unq();
        let ux1 = unq.variable("X1").unwrap();
        let uy = unq.variable("Y").unwrap();
        // block 0 of Y is the "ab" state
        assert!((unq.specific_information(&ux1, &uy, 0).unwrap() - 1.0).abs() < TOL);

        assert!(unq.specific_information(&ux1, &uy, 9).is_err());
    }

    #[test]
    fn specific_information_expectation_identity() {
        let imp = corpus::imperfect_rdn();
        let x2 = imp.variable("X2").unwrap();
        let y = imp.variable("Y").unwrap();
        let masses = y.block_masses(&imp);
        let expect: f64 = (0..y.block_count())
            .map(|b| masses[b] * imp.specific_information(&x2, &y, b).unwrap())
            .sum();
        let mi = imp.mutual_information(&x2, &y).unwrap();
        assert!((expect - mi).abs() < TOL);
    }

    #[test]
    fn permuted_variant_preserves_information() {
        let d = corpus::rdnxor();
        let x1 = d.variable("X1").unwrap();
        let y = d.variable("Y").unwrap();
        let perm: Vec<usize> = (0..x1.block_count()).rev().collect();
        let x1p = x1.permuted(&perm);
        assert!(
            (d.mutual_information(&x1, &y).unwrap() - d.mutual_information(&x1p, &y).unwrap())
                .abs()
                < TOL
        );
        assert!((d.entropy(&x1).unwrap() - d.entropy(&x1p).unwrap()).abs() < TOL);
    }
}
