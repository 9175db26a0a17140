//! Built-in example distributions.
//!
//! Five canonical three-variable distributions over predictors X1, X2 and a
//! target Y, each exercising a distinct redundancy/synergy profile:
//!
//! - `rdn`: one fully redundant bit (X1 = X2 = Y).
//! - `unq`: two unique bits (Y is the pair (X1, X2), predictors independent).
//! - `rdnxor`: one redundant bit plus one synergistic XOR bit.
//! - `imperfectrdn`: near-perfect correlation between the predictors; the
//!   0.001-mass row destroys their common random variable.
//! - `subtle`: uniform over three of four combinations; the target copies
//!   the pair.

use crate::probspace::JointDistribution;

/// Canonical corpus order.
pub const NAMES: [&str; 5] = ["rdn", "unq", "rdnxor", "imperfectrdn", "subtle"];

/// Looks up a corpus distribution by name.
pub fn by_name(name: &str) -> Option<JointDistribution> {
    match name {
        "rdn" => Some(rdn()),
        "unq" => Some(unq()),
        "rdnxor" => Some(rdnxor()),
        "imperfectrdn" => Some(imperfect_rdn()),
        "subtle" => Some(subtle()),
        _ => None,
    }
}

pub fn rdn() -> JointDistribution {
    JointDistribution::from_rows(
        &["X1", "X2", "Y"],
        &[(&["r", "r", "r"], 0.5), (&["R", "R", "R"], 0.5)],
    )
    .expect("rdn table is valid")
}

pub fn unq() -> JointDistribution {
    JointDistribution::from_rows(
        &["X1", "X2", "Y"],
        &[
            (&["a", "b", "ab"], 0.25),
            (&["a", "B", "aB"], 0.25),
            (&["A", "b", "Ab"], 0.25),
            (&["A", "B", "AB"], 0.25),
        ],
    )
    .expect("unq table is valid")
}

pub fn rdnxor() -> JointDistribution {
    JointDistribution::from_rows(
        &["X1", "X2", "Y"],
        &[
            (&["r0", "r0", "r0"], 0.125),
            (&["r0", "r1", "r1"], 0.125),
            (&["r1", "r0", "r1"], 0.125),
            (&["r1", "r1", "r0"], 0.125),
            (&["R0", "R0", "R0"], 0.125),
            (&["R0", "R1", "R1"], 0.125),
            (&["R1", "R0", "R1"], 0.125),
            (&["R1", "R1", "R0"], 0.125),
        ],
    )
    .expect("rdnxor table is valid")
}

pub fn imperfect_rdn() -> JointDistribution {
    JointDistribution::from_rows(
        &["X1", "X2", "Y"],
        &[
            (&["0", "0", "0"], 0.499),
            (&["0", "1", "0"], 0.001),
            (&["1", "1", "1"], 0.5),
        ],
    )
    .expect("imperfectrdn table is valid")
}

pub fn subtle() -> JointDistribution {
    JointDistribution::from_rows(
        &["X1", "X2", "Y"],
        &[
            (&["0", "0", "00"], 1.0 / 3.0),
            (&["0", "1", "01"], 1.0 / 3.0),
            (&["1", "1", "11"], 1.0 / 3.0),
        ],
    )
    .expect("subtle table is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_covers_all_names() {
        for name in NAMES {
            assert!(by_name(name).is_some());
        }
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn row_counts() {
        assert_eq!(rdn().len(), 2);
        assert_eq!(unq().len(), 4);
        assert_eq!(rdnxor().len(), 8);
        assert_eq!(imperfect_rdn().len(), 3);
        assert_eq!(subtle().len(), 3);
    }
}
