//! Structural checks, global face merging and census extraction.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::certificate::{Certificate, Component};
use crate::census::{euler_sum, Census};
use crate::union_find::DisjointSets;

pub const CHECK_DARTS: &str = "dart permutations";
pub const CHECK_REGULARITY: &str = "4-regularity";
pub const CHECK_CONNECTIVITY: &str = "connectivity";
pub const CHECK_SPHERICITY: &str = "sphericity";
pub const CHECK_FOREST: &str = "containment forest";
pub const CHECK_OUTWARD: &str = "outward faces";
pub const CHECK_EVEN_CIRCLES: &str = "even circle count";
pub const CHECK_VERTICES_MOD6: &str = "vertex count divisible by 6";
pub const CHECK_EULER: &str = "euler identity";
pub const CHECK_PARITY: &str = "parity";

/// A structural check failed; carries the check name and what went wrong.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("check {check:?} failed: {detail}")]
pub struct StructureError {
    pub check: &'static str,
    pub detail: String,
}

/// Local face `face` of component `component`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LocalFace {
    pub component: usize,
    pub face: usize,
}

/// One component of the sphere minus the complex: a class of local faces
/// glued by attachments. It is a planar piece with `k()` boundary circuits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalFace {
    /// Ascending; the first member is the class representative.
    pub members: Vec<LocalFace>,
}

impl GlobalFace {
    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn representative(&self) -> LocalFace {
        self.members[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// Set only when every check passed.
    pub census: Option<Census>,
    /// Set only when every check passed.
    pub n: Option<u64>,
    pub vertices: usize,
    pub circles: usize,
    /// Checks in the order they ran; the first failure ends the run.
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.census.is_some()
    }

    pub fn failed_check(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            let status = if check.passed { "pass" } else { "FAIL" };
            writeln!(f, "{status} {}: {}", check.name, check.detail)?;
        }
        match (&self.census, self.n) {
            (Some(census), Some(n)) => write!(f, "census {census} n={n}"),
            _ => write!(f, "verification failed"),
        }
    }
}

/// Per-component local face counts after all structural checks.
struct Structure {
    local_faces: Vec<usize>,
}

struct Recorder<'a> {
    checks: &'a mut Vec<CheckResult>,
}

impl Recorder<'_> {
    fn record(&mut self, name: &'static str, outcome: Result<String, String>) -> Result<(), StructureError> {
        match outcome {
            Ok(detail) => {
                self.checks.push(CheckResult {
                    name,
                    passed: true,
                    detail,
                });
                Ok(())
            }
            Err(detail) => {
                self.checks.push(CheckResult {
                    name,
                    passed: false,
                    detail: detail.clone(),
                });
                Err(StructureError {
                    check: name,
                    detail,
                })
            }
        }
    }
}

/// Runs one map-level check over every map component.
fn per_map<F>(cert: &Certificate, check: F) -> Result<String, String>
where
    F: Fn(&super::map::CombMap) -> Result<(), super::map::MapError>,
{
    let mut maps = 0;
    for (i, comp) in cert.components.iter().enumerate() {
        if let Component::Map(map) = comp {
            check(map).map_err(|e| format!("component {i}: {e}"))?;
            maps += 1;
        }
    }
    Ok(format!("{maps} map component(s)"))
}

fn check_forest(cert: &Certificate) -> Result<String, String> {
    let count = cert.components.len();
    if cert.root >= count {
        return Err(format!("root {} out of range ({count} components)", cert.root));
    }
    let mut parent: Vec<Option<usize>> = vec![None; count];
    for (i, att) in cert.attachments.iter().enumerate() {
        if att.child >= count || att.parent >= count {
            return Err(format!("attachment {i} references a missing component"));
        }
        if att.child == cert.root {
            return Err(format!("attachment {i} attaches the root"));
        }
        if parent[att.child].replace(att.parent).is_some() {
            return Err(format!("component {} is attached twice", att.child));
        }
    }
    for c in 0..count {
        if c == cert.root {
            continue;
        }
        if parent[c].is_none() {
            return Err(format!("component {c} is neither the root nor attached"));
        }
        // every chain must reach the root within `count` steps
        let mut node = c;
        let mut steps = 0;
        while node != cert.root {
            node = parent[node].expect("all non-root nodes have parents");
            steps += 1;
            if steps > count {
                return Err(format!("component {c} lies on a containment cycle"));
            }
        }
    }
    Ok(format!("{count} component(s) rooted at {}", cert.root))
}

fn check_outward(cert: &Certificate, local_faces: &[usize]) -> Result<String, String> {
    for (i, att) in cert.attachments.iter().enumerate() {
        if att.outward_face >= local_faces[att.child] {
            return Err(format!(
                "attachment {i}: outward face {} of component {} does not exist ({} local faces)",
                att.outward_face, att.child, local_faces[att.child]
            ));
        }
        if att.parent_face >= local_faces[att.parent] {
            return Err(format!(
                "attachment {i}: parent face {} of component {} does not exist ({} local faces)",
                att.parent_face, att.parent, local_faces[att.parent]
            ));
        }
    }
    Ok(format!("{} attachment(s)", cert.attachments.len()))
}

fn structural_checks(cert: &Certificate, checks: &mut Vec<CheckResult>) -> Result<Structure, StructureError> {
    let mut rec = Recorder { checks };
    rec.record(CHECK_DARTS, per_map(cert, |m| m.check_darts()))?;
    rec.record(CHECK_REGULARITY, per_map(cert, |m| m.check_regularity()))?;
    rec.record(CHECK_CONNECTIVITY, per_map(cert, |m| m.check_connected()))?;
    let local_faces: Vec<usize> = cert
        .components
        .iter()
        .map(|c| match c {
            Component::Map(map) => map.face_orbits().len(),
            Component::Circle => 2,
        })
        .collect();
    let sphericity = cert
        .components
        .iter()
        .zip(&local_faces)
        .enumerate()
        .try_for_each(|(i, (comp, &faces))| match comp {
            Component::Map(map) => map
                .check_spherical(faces)
                .map_err(|e| format!("component {i}: {e}")),
            Component::Circle => Ok(()),
        })
        .map(|()| format!("{} local face(s)", local_faces.iter().sum::<usize>()));
    rec.record(CHECK_SPHERICITY, sphericity)?;
    rec.record(CHECK_FOREST, check_forest(cert))?;
    rec.record(CHECK_OUTWARD, check_outward(cert, &local_faces))?;
    let circles = cert.circle_count();
    rec.record(
        CHECK_EVEN_CIRCLES,
        if circles % 2 == 0 {
            Ok(format!("{circles} circle(s)"))
        } else {
            Err(format!("{circles} circle(s) is odd"))
        },
    )?;
    let v = cert.vertex_count();
    rec.record(
        CHECK_VERTICES_MOD6,
        if v % 6 == 0 {
            Ok(format!("V = {v}, n = {}", v / 6))
        } else {
            Err(format!("V = {v} is not a multiple of 6"))
        },
    )?;
    Ok(Structure { local_faces })
}

fn merge_faces(cert: &Certificate, structure: &Structure) -> Vec<GlobalFace> {
    let mut offsets = Vec::with_capacity(structure.local_faces.len());
    let mut total = 0;
    for &count in &structure.local_faces {
        offsets.push(total);
        total += count;
    }
    let mut sets = DisjointSets::new(total);
    for att in &cert.attachments {
        sets.union(
            offsets[att.child] + att.outward_face,
            offsets[att.parent] + att.parent_face,
        );
    }
    let locate = |flat: usize| {
        let component = offsets.partition_point(|&o| o <= flat) - 1;
        LocalFace {
            component,
            face: flat - offsets[component],
        }
    };
    sets.classes()
        .into_iter()
        .map(|class| GlobalFace {
            members: class.into_iter().map(locate).collect(),
        })
        .collect()
}

/// Partitions all local faces into the faces of the sphere minus the
/// complex, ordered by representative.
pub fn global_faces(cert: &Certificate) -> Result<Vec<GlobalFace>, StructureError> {
    let structure = structural_checks(cert, &mut Vec::new())?;
    Ok(merge_faces(cert, &structure))
}

pub fn census_of(faces: &[GlobalFace]) -> Census {
    Census::from_pairs(faces.iter().map(|f| (f.k(), 1)))
        .expect("face classes are non-empty and few")
}

/// Checks a certificate from scratch and recomputes its census. The Euler
/// identity `sum (2 - k) a_k = V + 2` is checked, not assumed.
pub fn verify(cert: &Certificate) -> VerifyReport {
    let mut checks = Vec::new();
    let vertices = cert.vertex_count();
    let circles = cert.circle_count();
    let failed = |checks| VerifyReport {
        census: None,
        n: None,
        vertices,
        circles,
        checks,
    };

    let Ok(structure) = structural_checks(cert, &mut checks) else {
        return failed(checks);
    };
    let faces = merge_faces(cert, &structure);
    let census = census_of(&faces);

    let lhs = euler_sum(&census);
    let rhs = vertices as i128 + 2;
    let mut rec = Recorder { checks: &mut checks };
    let euler = if lhs == rhs {
        Ok(format!("sum (2-k) a_k = {lhs} = V + 2"))
    } else {
        Err(format!("sum (2-k) a_k = {lhs}, V + 2 = {rhs}"))
    };
    if rec.record(CHECK_EULER, euler).is_err() {
        return failed(checks);
    }
    let total = census.total();
    let parity = if vertices > 0 {
        Ok("not applicable, n > 0".to_string())
    } else if total % 2 == 1 {
        Ok(format!("{total} faces, odd"))
    } else {
        Err(format!("{total} faces with n = 0 is even"))
    };
    if rec.record(CHECK_PARITY, parity).is_err() {
        return failed(checks);
    }

    VerifyReport {
        census: Some(census),
        n: Some((vertices / 6) as u64),
        vertices,
        circles,
        checks,
    }
}
