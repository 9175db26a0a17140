//! Information decomposition over finite discrete joint distributions.
//!
//! The crate models random variables as partitions of a finite joint
//! support, computes the informational partial order with its join and meet
//! (common random variable) operators, and builds on them:
//!
//! - zero-error information I⁰(A:B) = H(A∧B) and its state-dependent form;
//! - three intersection-information measures (`imin`, `iwedge`, `iwedge0`),
//!   plus union information by inclusion–exclusion and conditional
//!   intersection information;
//! - the n=2 partial information decomposition into redundant, unique and
//!   synergistic parts, with negative-synergy detection;
//! - a randomized axiom checker that confirms or refutes the desired
//!   properties of an intersection information on seeded trial streams.
//!
//! The `gkpid` binary exposes everything on the command line; see the
//! `cli` module.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod fileio;
pub mod lattice;
pub mod measures;
pub mod pid;
pub mod probspace;
pub mod propcheck;

pub use error::{Error, Result};
pub use lattice::{compare, is_equivalent, is_poorer, join, joint_with, meet, OrderRelation};
pub use measures::{
    conditional_intersection, i_min, i_union, i_wedge, i_wedge0, state_dependent_zero_error,
    zero_error_information, MeasureId,
};
pub use pid::{decompose2, has_negative_synergy, PidResult};
pub use probspace::{JointDistribution, RandomVariable};
pub use propcheck::{check, search_counterexample, table1, PropertyId, PropertyReport, Verdict};
