//! Base certificates and the two local surgeries, composed into [`realize`].
//!
//! Both surgeries insert the two preimage circles of one new double circle
//! into a host piece, so the circle count stays even and no vertex is added.
//! F1a places the circles side by side, F1b nests one inside the other.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::census::{check_feasibility, Census, FeasibilityVerdict, InfeasibleReason};
use crate::complex::{global_faces, verify, Certificate, CombMap, Component, GlobalFace, LocalFace, StructureError};
use crate::planner::{plan_reduction, step_delta, PlanError, SurgeryStep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no piece with {k} boundary circuit(s) to host the surgery")]
    NoHostFace { k: usize },
    #[error("local face {host:?} is not a valid host with {k} boundary circuit(s)")]
    BadHost { host: LocalFace, k: usize },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("census is not feasible (restriction {0} fails)")]
    NotFeasible(InfeasibleReason),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

/// Starting configurations the planner reduces to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BaseTemplate {
    /// Two nested circles: `{a_1: 2, a_2: 1}`, no triple points.
    Circles,
    /// `2 + 6n` discs.
    Discs { n: u64 },
    /// `2 + 6n` discs and one annulus.
    Annulus { n: u64 },
}

impl BaseTemplate {
    fn checked_n(&self) -> Result<u64, SurgeryError> {
        match *self {
            BaseTemplate::Circles => Ok(0),
            BaseTemplate::Discs { n } | BaseTemplate::Annulus { n } => {
                // 6n vertices must be addressable as darts
                if n == 0 || n > (usize::MAX / 24) as u64 {
                    Err(SurgeryError::InvalidParameter(format!("{self:?} needs 1 <= n")))
                } else {
                    Ok(n)
                }
            }
        }
    }

    pub fn census(&self) -> Result<Census, SurgeryError> {
        let n = self.checked_n()?;
        let pairs = match self {
            BaseTemplate::Circles => vec![(1, 2), (2, 1)],
            BaseTemplate::Discs { .. } => vec![(1, 2 + 6 * n)],
            BaseTemplate::Annulus { .. } => vec![(1, 2 + 6 * n), (2, 1)],
        };
        Census::from_pairs(pairs).map_err(|e| SurgeryError::InvalidParameter(e.to_string()))
    }
}

/// Builds the certificate of a base template.
///
/// `Discs { n }` is a doubled cycle on `6n` vertices (`6n + 2` disc faces).
/// `Annulus { n }` nests a doubled 2-cycle in a face of a doubled
/// `(6n - 2)`-cycle; the two glued faces form the annulus.
pub fn instantiate_base(template: BaseTemplate) -> Result<Certificate, SurgeryError> {
    let n = template.checked_n()? as usize;
    Ok(match template {
        BaseTemplate::Circles => {
            let mut cert = Certificate::single(Component::Circle);
            cert.attach(Component::Circle, 0, 1, 0);
            cert
        }
        BaseTemplate::Discs { .. } => Certificate::single(Component::Map(CombMap::doubled_cycle(6 * n))),
        BaseTemplate::Annulus { .. } => {
            let mut cert = Certificate::single(Component::Map(CombMap::doubled_cycle(6 * n - 2)));
            cert.attach(Component::Map(CombMap::doubled_cycle(2)), 0, 0, 0);
            cert
        }
    })
}

/// First face class with `k` members; classes come ordered by their lowest
/// (component, local face), which makes the choice deterministic.
fn lowest_host(faces: &[GlobalFace], k: usize) -> Result<LocalFace, SurgeryError> {
    faces
        .iter()
        .find(|f| f.k() == k)
        .map(GlobalFace::representative)
        .ok_or(SurgeryError::NoHostFace { k })
}

fn check_host(cert: &Certificate, host: LocalFace, k: usize) -> Result<(), SurgeryError> {
    let faces = global_faces(cert)?;
    let ok = faces.iter().any(|f| f.k() == k && f.members.contains(&host));
    if ok {
        Ok(())
    } else {
        Err(SurgeryError::BadHost { host, k })
    }
}

fn check_m(m: usize) -> Result<(), SurgeryError> {
    if m < 3 {
        Err(SurgeryError::InvalidParameter(format!("F1a needs m >= 3, got {m}")))
    } else {
        Ok(())
    }
}

/// F1a at the lowest host of type `m - 2`.
pub fn apply_f1a(cert: &Certificate, m: usize) -> Result<Certificate, SurgeryError> {
    check_m(m)?;
    let host = lowest_host(&global_faces(cert)?, m - 2)?;
    apply_f1a_at(cert, m, host)
}

/// Two sibling circles inside `host`, each with side0 facing the host. The
/// host piece gains two boundary circuits and each circle bounds a new disc.
pub fn apply_f1a_at(cert: &Certificate, m: usize, host: LocalFace) -> Result<Certificate, SurgeryError> {
    check_m(m)?;
    check_host(cert, host, m - 2)?;
    let mut out = cert.clone();
    out.attach(Component::Circle, host.component, host.face, 0);
    out.attach(Component::Circle, host.component, host.face, 0);
    Ok(out)
}

/// F1b at the lowest disc.
pub fn apply_f1b(cert: &Certificate) -> Result<Certificate, SurgeryError> {
    let host = lowest_host(&global_faces(cert)?, 1)?;
    apply_f1b_at(cert, host)
}

/// Circle `c1` inside the disc `host`, circle `c2` inside `c1`. The disc
/// becomes an annulus, the band between the circles a second annulus, and
/// `c2` bounds a new disc.
pub fn apply_f1b_at(cert: &Certificate, host: LocalFace) -> Result<Certificate, SurgeryError> {
    check_host(cert, host, 1)?;
    let mut out = cert.clone();
    let outer = out.attach(Component::Circle, host.component, host.face, 0);
    out.attach(Component::Circle, outer, 1, 0);
    Ok(out)
}

pub fn apply_step(cert: &Certificate, step: SurgeryStep) -> Result<Certificate, SurgeryError> {
    match step {
        SurgeryStep::F1a { m } => apply_f1a(cert, m),
        SurgeryStep::F1b => apply_f1b(cert),
    }
}

/// Builds a verified certificate for a feasible census.
///
/// The census after every surgery is recomputed from scratch and compared
/// with the plan's trace.
pub fn realize(census: &Census) -> Result<Certificate, RealizeError> {
    let n = match check_feasibility(census) {
        FeasibilityVerdict::Feasible { n } => n,
        FeasibilityVerdict::Infeasible { reason } => return Err(RealizeError::NotFeasible(reason)),
    };
    let internal = |msg: String| RealizeError::InternalInvariantViolation(msg);
    let plan = plan_reduction(census).map_err(|e| match e {
        PlanError::NotFeasible(reason) => RealizeError::NotFeasible(reason),
        other => internal(other.to_string()),
    })?;

    let mut cert = instantiate_base(plan.base).map_err(|e| internal(e.to_string()))?;
    let expect = |cert: &Certificate, expected: &Census, what: &str| {
        let report = verify(cert);
        match &report.census {
            Some(got) if got == expected => Ok(report),
            Some(got) => Err(internal(format!("{what}: census {got}, plan expects {expected}"))),
            None => Err(internal(format!(
                "{what}: certificate fails verification ({:?})",
                report.failed_check().map(|c| c.name)
            ))),
        }
    };
    expect(&cert, &plan.trace[0], "base")?;
    for (i, &step) in plan.steps.iter().enumerate() {
        debug_assert_eq!(plan.trace[i].apply_delta(&step_delta(step)).ok().as_ref(), Some(&plan.trace[i + 1]));
        cert = apply_step(&cert, step).map_err(|e| internal(format!("step {i} ({step:?}): {e}")))?;
        expect(&cert, &plan.trace[i + 1], &format!("after step {i}"))?;
    }
    let report = expect(&cert, census, "result")?;
    if report.n != Some(n) {
        return Err(internal(format!("verifier derives n = {:?}, census has n = {n}", report.n)));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(text: &str) -> Census {
        text.parse().unwrap()
    }

    fn census_of(cert: &Certificate) -> Census {
        let report = verify(cert);
        assert!(report.passed(), "{report}");
        report.census.unwrap()
    }

    #[test]
    fn base_templates() {
        let circles = instantiate_base(BaseTemplate::Circles).unwrap();
        assert_eq!(census_of(&circles), c("2,1"));
        assert_eq!(verify(&circles).n, Some(0));

        let discs = instantiate_base(BaseTemplate::Discs { n: 1 }).unwrap();
        assert_eq!(census_of(&discs), c("8"));
        assert_eq!((discs.vertex_count(), discs.edge_count()), (6, 12));

        let annulus = instantiate_base(BaseTemplate::Annulus { n: 2 }).unwrap();
        assert_eq!(census_of(&annulus), c("14,1"));
        assert_eq!(annulus.vertex_count(), 12);
    }

    #[test]
    fn base_parameters_are_checked() {
        for t in [BaseTemplate::Discs { n: 0 }, BaseTemplate::Annulus { n: 0 }] {
            assert!(matches!(instantiate_base(t), Err(SurgeryError::InvalidParameter(_))));
            assert!(t.census().is_err());
        }
    }

    #[test]
    fn f1a_examples() {
        let circles = instantiate_base(BaseTemplate::Circles).unwrap();
        let out = apply_f1a(&circles, 3).unwrap();
        assert_eq!(census_of(&out), c("3,1,1"));
        assert_eq!(out.circle_count(), 4);

        let discs = instantiate_base(BaseTemplate::Discs { n: 1 }).unwrap();
        assert_eq!(apply_f1a(&discs, 4), Err(SurgeryError::NoHostFace { k: 2 }));

        let annulus = instantiate_base(BaseTemplate::Annulus { n: 1 }).unwrap();
        let out = apply_f1a(&annulus, 4).unwrap();
        assert_eq!(census_of(&out), c("10,0,0,1"));
        assert_eq!(out.vertex_count(), 6);

        assert!(matches!(apply_f1a(&circles, 2), Err(SurgeryError::InvalidParameter(_))));
    }

    #[test]
    fn f1b_examples() {
        let circles = instantiate_base(BaseTemplate::Circles).unwrap();
        assert_eq!(census_of(&apply_f1b(&circles).unwrap()), c("2,3"));

        let discs = instantiate_base(BaseTemplate::Discs { n: 1 }).unwrap();
        let once = apply_f1b(&discs).unwrap();
        assert_eq!(census_of(&once), c("8,2"));
        let twice = apply_f1b(&once).unwrap();
        assert_eq!(census_of(&twice), c("8,4"));
        assert_eq!(twice.vertex_count(), 6);
    }

    #[test]
    fn host_selection_is_lowest() {
        let circles = instantiate_base(BaseTemplate::Circles).unwrap();
        // discs are c0.0 and c1.1; c0.0 wins
        let out = apply_f1b(&circles).unwrap();
        assert_eq!(out.attachments[1].parent, 0);
        assert_eq!(out.attachments[1].parent_face, 0);
        assert_eq!(out.attachments[2].parent, 2);
        assert_eq!(out.attachments[2].parent_face, 1);
    }

    #[test]
    fn explicit_hosts_are_validated() {
        let circles = instantiate_base(BaseTemplate::Circles).unwrap();
        let annulus_face = LocalFace { component: 0, face: 1 };
        assert!(matches!(
            apply_f1b_at(&circles, annulus_face),
            Err(SurgeryError::BadHost { .. })
        ));
        let out = apply_f1a_at(&circles, 4, annulus_face).unwrap();
        assert_eq!(census_of(&out), c("4,0,0,1"));
        let inner = LocalFace { component: 1, face: 1 };
        assert_eq!(census_of(&apply_f1b_at(&circles, inner).unwrap()), c("2,3"));
    }

    #[test]
    fn realize_examples() {
        let cert = realize(&c("2,1")).unwrap();
        assert_eq!(cert, instantiate_base(BaseTemplate::Circles).unwrap());

        assert_eq!(realize(&c("2")), Err(RealizeError::NotFeasible(InfeasibleReason::PViolation)));
        assert_eq!(realize(&c("3")), Err(RealizeError::NotFeasible(InfeasibleReason::EViolation)));

        let cert = realize(&c("11,0,1,1")).unwrap();
        assert_eq!(cert.vertex_count(), 6);
        assert_eq!(cert.circle_count(), 4);
        assert_eq!(census_of(&cert), c("11,0,1,1"));
    }

    #[test]
    fn realize_is_deterministic() {
        let a = realize(&c("13,3,2,0,1")).unwrap();
        let b = realize(&c("13,3,2,0,1")).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
