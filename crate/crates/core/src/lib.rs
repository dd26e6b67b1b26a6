//! Dissections of the 2-sphere by generic immersions into 3-space.
//!
//! The pieces cut out by the multiplicity graph of an immersion with `2n`
//! triple points are planar surfaces; the census `a_1, a_2, ...` counts them
//! by number of boundary circuits. A census is realizable exactly when
//! `sum (2 - k) a_k = 2 + 6n` and, for `n = 0`, the number of pieces is odd.
//!
//! - [`census`] decides feasibility and derives `n`.
//! - [`planner`] reduces a feasible census to a base template.
//! - [`surgery`] builds base certificates and replays the plan on them.
//! - [`complex`] holds the certificate model and its independent verifier.
//! - [`oracle`] provides brute-force cross-checks and fuzz generators.

pub mod census;
pub mod complex;
pub mod oracle;
pub mod planner;
pub mod surgery;
mod union_find;

pub use census::{check_feasibility, euler_sum, Census, CensusDelta, CensusError, FeasibilityVerdict, InfeasibleReason};
pub use complex::{verify, Certificate, CombMap, Component, VerifyReport};
pub use planner::{plan_reduction, step_delta, SurgeryPlan, SurgeryStep};
pub use surgery::{realize, BaseTemplate, RealizeError};
