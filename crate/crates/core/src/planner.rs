//! Reduction of a feasible census to a base template.
//!
//! Each reduction step removes one piece with the largest boundary count `m`
//! (`m >= 3`), or, once only discs and annuli remain, two annuli. The steps
//! are recorded inverted and in execution order, so replaying them from the
//! base census rebuilds the target.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::census::{check_feasibility, Census, CensusDelta, CensusError, FeasibilityVerdict, InfeasibleReason};
use crate::surgery::BaseTemplate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("census is not feasible (restriction {0} fails)")]
    NotFeasible(InfeasibleReason),
    #[error("census arithmetic failed during reduction: {0}")]
    Census(#[from] CensusError),
}

/// One surgery, named after the modification it performs.
///
/// `F1a { m }` turns a piece with `m - 2` boundary circuits into one with
/// `m` and adds two discs. `F1b` turns a disc into two annuli and a disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SurgeryStep {
    F1a { m: usize },
    F1b,
}

impl SurgeryStep {
    /// Boundary count of the piece this step needs as a host.
    pub fn host_index(&self) -> usize {
        match *self {
            SurgeryStep::F1a { m } => m - 2,
            SurgeryStep::F1b => 1,
        }
    }
}

/// Census change produced by executing `step`.
pub fn step_delta(step: SurgeryStep) -> CensusDelta {
    match step {
        SurgeryStep::F1a { m: 3 } => CensusDelta::from([(1, 1), (3, 1)]),
        SurgeryStep::F1a { m } => {
            debug_assert!(m >= 4, "F1a needs m >= 3");
            CensusDelta::from([(1, 2), (m - 2, -1), (m, 1)])
        }
        SurgeryStep::F1b => CensusDelta::from([(2, 2)]),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryPlan {
    pub base: BaseTemplate,
    /// Execution order, base first.
    pub steps: Vec<SurgeryStep>,
    /// `trace[0]` is the base census and `trace[i + 1]` the census after
    /// `steps[i]`; the last entry is the target.
    pub trace: Vec<Census>,
}

impl SurgeryPlan {
    pub fn target(&self) -> &Census {
        self.trace.last().expect("trace always holds the base census")
    }
}

/// `2 * sum_{k>=3} (k - 2) a_k + a_2`; strictly decreases along a reduction.
pub fn reduction_measure(census: &Census) -> u128 {
    let higher: u128 = census
        .iter()
        .filter(|&(k, _)| k >= 3)
        .map(|(k, c)| (k as u128 - 2) * c as u128)
        .sum();
    2 * higher + census.get(2) as u128
}

/// Undoes one `F1a { m }`: drop a piece of type `m`, add one of type
/// `m - 2`, drop two discs.
fn reduce_f1a(census: &Census, m: usize) -> Result<Census, CensusError> {
    census.sub(m, 1)?.add(m - 2, 1)?.sub(1, 2)
}

pub fn plan_reduction(census: &Census) -> Result<SurgeryPlan, PlanError> {
    let n = match check_feasibility(census) {
        FeasibilityVerdict::Feasible { n } => n,
        FeasibilityVerdict::Infeasible { reason } => return Err(PlanError::NotFeasible(reason)),
    };

    let mut current = census.clone();
    let mut reversed_steps = Vec::new();
    let mut reversed_trace = vec![current.clone()];

    while let Some(m) = current.max_index().filter(|&m| m >= 3) {
        current = reduce_f1a(&current, m)?;
        reversed_steps.push(SurgeryStep::F1a { m });
        reversed_trace.push(current.clone());
    }
    while current.get(2) >= 2 {
        current = current.sub(2, 2)?;
        reversed_steps.push(SurgeryStep::F1b);
        reversed_trace.push(current.clone());
    }

    let base = if n == 0 {
        BaseTemplate::Circles
    } else if current.get(2) == 1 {
        BaseTemplate::Annulus { n }
    } else {
        BaseTemplate::Discs { n }
    };
    // feasibility is preserved by every reduction, so the remainder is
    // exactly the base census
    debug_assert_eq!(Some(current), base.census().ok());

    reversed_steps.reverse();
    reversed_trace.reverse();
    Ok(SurgeryPlan {
        base,
        steps: reversed_steps,
        trace: reversed_trace,
    })
}
