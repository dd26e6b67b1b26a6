//! Dissection certificates: 4-regular sphere maps and smooth circles nested
//! in a containment forest, with the verifier that recomputes the census.

mod certificate;
mod dot;
mod map;
mod verify;

pub use certificate::{Attachment, Certificate, CertificateParseError, Component, CERT_VERSION};
pub use dot::to_dot;
pub use map::{CombMap, MapError};
pub use verify::{
    census_of, global_faces, verify, CheckResult, GlobalFace, LocalFace, StructureError, VerifyReport,
    CHECK_CONNECTIVITY, CHECK_DARTS, CHECK_EULER, CHECK_EVEN_CIRCLES, CHECK_FOREST, CHECK_OUTWARD,
    CHECK_PARITY, CHECK_REGULARITY, CHECK_SPHERICITY, CHECK_VERTICES_MOD6,
};

#[cfg(test)]
pub(crate) use map::tests as map_tests;
