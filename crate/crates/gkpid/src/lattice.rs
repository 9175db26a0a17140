//! The informational partial order and its join/meet operators.
//!
//! On a finite support, X ⪯ Y ("X is informationally poorer than Y") holds
//! exactly when the partition of Y refines the partition of X, equivalently
//! H(X|Y) = 0. The join X∨Y is the common refinement (the pair variable); the
//! meet X∧Y is the common random variable: the coarsest partition that every
//! input refines, computed as the connected components of the graph whose
//! nodes are the input blocks and whose edges link blocks sharing positive
//! probability mass.

use crate::error::{Error, Result};
use crate::probspace::{JointDistribution, RandomVariable};

/// Mass threshold for drawing an edge between two blocks. Guards against
/// float dust left over after merging duplicate rows.
pub const EDGE_EPSILON: f64 = 1e-12;

/// How two variables sit in the informational partial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderRelation {
    /// X ⪯ Y: X is a function of Y on the support.
    pub poorer: bool,
    /// X ⪰ Y.
    pub richer: bool,
    /// X ≅ Y: identical partitions.
    pub equivalent: bool,
}

fn check_over(d: &JointDistribution, v: &RandomVariable) -> Result<()> {
    if v.block_of().len() != d.len() {
        return Err(Error::SupportMismatch {
            label: v.label().to_string(),
            var_rows: v.block_of().len(),
            dist_rows: d.len(),
        });
    }
    Ok(())
}

/// True when every block of `y` lies inside a single block of `x`, i.e. the
/// partition of `y` refines the partition of `x`, i.e. x ⪯ y.
pub fn is_poorer(d: &JointDistribution, x: &RandomVariable, y: &RandomVariable) -> Result<bool> {
    check_over(d, x)?;
    check_over(d, y)?;
    let mut image: Vec<Option<usize>> = vec![None; y.block_count()];
    for row in 0..d.len() {
        let yb = y.block(row);
        let xb = x.block(row);
        match image[yb] {
            None => image[yb] = Some(xb),
            Some(prev) if prev != xb => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// True when the two variables induce the same partition of the support.
pub fn is_equivalent(
    d: &JointDistribution,
    x: &RandomVariable,
    y: &RandomVariable,
) -> Result<bool> {
    Ok(is_poorer(d, x, y)? && is_poorer(d, y, x)?)
}

/// Full order relation between two variables.
pub fn compare(d: &JointDistribution, x: &RandomVariable, y: &RandomVariable) -> Result<OrderRelation> {
    let poorer = is_poorer(d, x, y)?;
    let richer = is_poorer(d, y, x)?;
    Ok(OrderRelation {
        poorer,
        richer,
        equivalent: poorer && richer,
    })
}

/// Join (common refinement) of a nonempty list of variables: the ⪯-poorest
/// variable richer than every input. Block labels are tuples of the
/// constituent block labels.
pub fn join(d: &JointDistribution, vars: &[&RandomVariable]) -> Result<RandomVariable> {
    if vars.is_empty() {
        return Err(Error::EmptyVariableList);
    }
    for v in vars {
        check_over(d, v)?;
    }
    if vars.len() == 1 {
        return Ok(vars[0].clone());
    }

    let mut seen: std::collections::HashMap<Vec<usize>, usize> = std::collections::HashMap::new();
    let mut raw = Vec::with_capacity(d.len());
    let mut key_of: Vec<Vec<usize>> = Vec::new();
    for row in 0..d.len() {
        let key: Vec<usize> = vars.iter().map(|v| v.block(row)).collect();
        let next = seen.len();
        let id = *seen.entry(key.clone()).or_insert(next);
        if id == key_of.len() {
            key_of.push(key);
        }
        raw.push(id);
    }

    let label = vars
        .iter()
        .map(|v| v.label())
        .collect::<Vec<_>>()
        .join("\u{2228}");
    Ok(RandomVariable::from_assignment(&label, &raw, |id| {
        let parts: Vec<&str> = key_of[id]
            .iter()
            .zip(vars)
            .map(|(&b, v)| v.block_labels()[b].as_str())
            .collect();
        format!("({})", parts.join(","))
    }))
}

/// Meet (common random variable) of a nonempty list of variables: the
/// ⪯-richest variable poorer than every input, equivalently the coarsest
/// common coarsening of the input partitions.
///
/// Computed by folding binary meets; each binary meet runs union-find over
/// the two block sets, linking blocks that share a positive-mass support row.
/// Block labels are `c0`, `c1`, … in first-occurrence order.
pub fn meet(d: &JointDistribution, vars: &[&RandomVariable]) -> Result<RandomVariable> {
    if vars.is_empty() {
        return Err(Error::EmptyVariableList);
    }
    for v in vars {
        check_over(d, v)?;
    }
    if vars.len() == 1 {
        return Ok(vars[0].clone());
    }
    let label = vars
        .iter()
        .map(|v| v.label())
        .collect::<Vec<_>>()
        .join("\u{2227}");
    let mut acc = meet2(d, vars[0], vars[1]);
    for v in &vars[2..] {
        acc = meet2(d, &acc, v);
    }
    Ok(acc.with_label(&label))
}

fn meet2(d: &JointDistribution, a: &RandomVariable, b: &RandomVariable) -> RandomVariable {
    let ka = a.block_count();
    let mut uf = UnionFind::new(ka + b.block_count());
    for row in 0..d.len() {
        if d.prob(row) > EDGE_EPSILON {
            uf.union(a.block(row), ka + b.block(row));
        }
    }
    let raw: Vec<usize> = (0..d.len()).map(|row| uf.find(a.block(row))).collect();
    RandomVariable::from_assignment("meet", &raw, component_labeler())
}

/// Meet computed literally from the all-pairs block graph: nodes are the
/// blocks of every input variable, and each positive-mass support row links
/// the blocks of every pair of variables. Serves as an independent route for
/// checking the binary fold in [`meet`].
pub fn meet_allpairs(d: &JointDistribution, vars: &[&RandomVariable]) -> Result<RandomVariable> {
    if vars.is_empty() {
        return Err(Error::EmptyVariableList);
    }
    for v in vars {
        check_over(d, v)?;
    }
    let mut offsets = Vec::with_capacity(vars.len());
    let mut total = 0;
    for v in vars {
        offsets.push(total);
        total += v.block_count();
    }
    let mut uf = UnionFind::new(total);
    for row in 0..d.len() {
        if d.prob(row) <= EDGE_EPSILON {
            continue;
        }
        for i in 0..vars.len() {
            for j in (i + 1)..vars.len() {
                uf.union(
                    offsets[i] + vars[i].block(row),
                    offsets[j] + vars[j].block(row),
                );
            }
        }
    }
    let raw: Vec<usize> = (0..d.len()).map(|row| uf.find(vars[0].block(row))).collect();
    let label = vars
        .iter()
        .map(|v| v.label())
        .collect::<Vec<_>>()
        .join("\u{2227}");
    Ok(RandomVariable::from_assignment(
        &label,
        &raw,
        component_labeler(),
    ))
}

/// Labels components `c0`, `c1`, … in first-occurrence order. The labeler is
/// invoked once per newly discovered block, so a simple counter matches the
/// canonical numbering.
fn component_labeler() -> impl FnMut(usize) -> String {
    let mut next = 0usize;
    move |_| {
        let label = format!("c{next}");
        next += 1;
        label
    }
}

/// Joint distribution Pr(Q, Y) of two variables over the same support:
/// mass of (q-block, y-block) pairs, labeled by the block labels.
pub fn joint_with(
    d: &JointDistribution,
    q: &RandomVariable,
    y: &RandomVariable,
) -> Result<JointDistribution> {
    check_over(d, q)?;
    check_over(d, y)?;
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut mass: std::collections::HashMap<(usize, usize), f64> = std::collections::HashMap::new();
    for row in 0..d.len() {
        let key = (q.block(row), y.block(row));
        if !mass.contains_key(&key) {
            order.push(key);
        }
        *mass.entry(key).or_insert(0.0) += d.prob(row);
    }
    let rows: Vec<(Vec<String>, f64)> = order
        .into_iter()
        .map(|(qb, yb)| {
            (
                vec![q.block_labels()[qb].clone(), y.block_labels()[yb].clone()],
                mass[&(qb, yb)],
            )
        })
        .collect();
    JointDistribution::from_owned_rows(vec![q.label().to_string(), y.label().to_string()], rows)
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> UnionFind {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut x = x;
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let mut xr = self.find(x);
        let mut yr = self.find(y);
        if xr == yr {
            return;
        }
        if self.size[xr] < self.size[yr] {
            std::mem::swap(&mut xr, &mut yr);
        }
        self.parent[yr] = xr;
        self.size[xr] += self.size[yr];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const TOL: f64 = 1e-9;

    #[test]
    fn poorer_basics() {
        let d = corpus::unq();
        let x1 = d.variable("X1").unwrap();
        let x2 = d.variable("X2").unwrap();
        let c = d.constant("c");
        assert!(is_poorer(&d, &c, &x1).unwrap());
        let j = join(&d, &[&x1, &x2]).unwrap();
        assert!(is_poorer(&d, &x1, &j).unwrap());
        assert!(!is_poorer(&d, &x1, &x2).unwrap());
    }

    #[test]
    fn poorer_rdnxor_rbit() {
        let d = corpus::rdnxor();
        let x1 = d.variable("X1").unwrap();
        let x2 = d.variable("X2").unwrap();
        let rbit = meet(&d, &[&x1, &x2]).unwrap();
        assert_eq!(rbit.block_count(), 2);
        assert!(is_poorer(&d, &rbit, &x1).unwrap());
    }

    #[test]
    fn equivalence_examples() {
        let imp = corpus::imperfect_rdn();
        let x1 = imp.variable("X1").unwrap();
        let y = imp.variable("Y").unwrap();
        assert!(is_equivalent(&imp, &x1, &y).unwrap());

        // Relabeled variant stays equivalent.
        let perm: Vec<usize> = (0..x1.block_count()).rev().collect();
        assert!(is_equivalent(&imp, &x1, &x1.permuted(&perm)).unwrap());

        let unq = corpus::unq();
        let ux1 = unq.variable("X1").unwrap();
        let ux2 = unq.variable("X2").unwrap();
        assert!(!is_equivalent(&unq, &ux1, &ux2).unwrap());

        let rel = compare(&imp, &x1, &y).unwrap();
        assert!(rel.equivalent && rel.poorer && rel.richer);
    }

    #[test]
    fn join_examples() {
        let unq = corpus::unq();
        let x1 = unq.variable("X1").unwrap();
        let x2 = unq.variable("X2").unwrap();
        let j = join(&unq, &[&x1, &x2]).unwrap();
        assert!((unq.entropy(&j).unwrap() - 2.0).abs() < TOL);
        assert!(is_equivalent(&unq, &join(&unq, &[&x1, &x1]).unwrap(), &x1).unwrap());
        let c = unq.constant("c");
        assert!(is_equivalent(&unq, &join(&unq, &[&x1, &c]).unwrap(), &x1).unwrap());
        assert!(join(&unq, &[]).is_err());
    }

    #[test]
    fn meet_examples() {
        let imp = corpus::imperfect_rdn();
        let m = meet(
            &imp,
            &[&imp.variable("X1").unwrap(), &imp.variable("X2").unwrap()],
        )
        .unwrap();
        assert_eq!(m.block_count(), 1);
        assert!(imp.entropy(&m).unwrap().abs() < TOL);

        let rx = corpus::rdnxor();
        let m = meet(&rx, &[&rx.variable("X1").unwrap(), &rx.variable("X2").unwrap()]).unwrap();
        assert_eq!(m.block_count(), 2);
        assert!((rx.entropy(&m).unwrap() - 1.0).abs() < TOL);
        let masses = m.block_masses(&rx);
        assert!((masses[0] - 0.5).abs() < TOL && (masses[1] - 0.5).abs() < TOL);

        let unq = corpus::unq();
        let m = meet(
            &unq,
            &[&unq.variable("X1").unwrap(), &unq.variable("X2").unwrap()],
        )
        .unwrap();
        assert_eq!(m.block_count(), 1);
    }

    #[test]
    fn meet_matches_allpairs_on_corpus() {
        for name in corpus::NAMES {
            let d = corpus::by_name(name).unwrap();
            let x1 = d.variable("X1").unwrap();
            let x2 = d.variable("X2").unwrap();
            let y = d.variable("Y").unwrap();
            let folded = meet(&d, &[&x1, &x2, &y]).unwrap();
            let graph = meet_allpairs(&d, &[&x1, &x2, &y]).unwrap();
            assert!(is_equivalent(&d, &folded, &graph).unwrap(), "{name}");
        }
    }

    #[test]
    fn joint_with_examples() {
        let rdn = corpus::rdn();
        let x1 = rdn.variable("X1").unwrap();
        let x2 = rdn.variable("X2").unwrap();
        let y = rdn.variable("Y").unwrap();
        let q = meet(&rdn, &[&x1, &x2]).unwrap();
        let qy = joint_with(&rdn, &q, &y).unwrap();
        // Diagonal 2x2 table, mass 1/2 each.
        assert_eq!(qy.len(), 2);
        assert!((qy.prob(0) - 0.5).abs() < TOL && (qy.prob(1) - 0.5).abs() < TOL);

        let c = rdn.constant("c");
        let cy = joint_with(&rdn, &c, &y).unwrap();
        let ymass = y.block_masses(&rdn);
        for row in 0..cy.len() {
            assert!((cy.prob(row) - ymass[row]).abs() < TOL);
        }

        let rx = corpus::rdnxor();
        let q = meet(&rx, &[&rx.variable("X1").unwrap(), &rx.variable("X2").unwrap()]).unwrap();
        let qy = joint_with(&rx, &q, &rx.variable("Y").unwrap()).unwrap();
        assert_eq!(qy.len(), 8);
        for row in 0..qy.len() {
            assert!((qy.prob(row) - 0.125).abs() < TOL);
        }
    }
}
