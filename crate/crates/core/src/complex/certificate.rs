use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::map::CombMap;

pub const CERT_VERSION: &str = "sd-cert/1";

#[derive(Debug, Error)]
pub enum CertificateParseError {
    #[error("malformed certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported certificate version {0:?}, expected \"sd-cert/1\"")]
    Version(String),
}

/// One connected piece of the multiplicity graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Component {
    Map(CombMap),
    /// A smooth circle without vertices. Local face 0 is side0, 1 is side1.
    Circle,
}

impl Component {
    pub fn vertex_count(&self) -> usize {
        match self {
            Component::Map(map) => map.vertex_count(),
            Component::Circle => 0,
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, Component::Circle)
    }
}

/// Places a non-root component inside a local face of its parent. The
/// child's `outward_face` and the parent's `parent_face` become parts of one
/// face of the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Attachment {
    pub child: usize,
    pub parent: usize,
    pub parent_face: usize,
    pub outward_face: usize,
}

/// Components of a 1-complex on the sphere plus their containment forest.
///
/// Deserialization does not validate; run [`verify`](super::verify) on
/// anything read from outside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: String,
    pub root: usize,
    pub components: Vec<Component>,
    pub attachments: Vec<Attachment>,
}

impl Certificate {
    /// Certificate with a single root component.
    pub fn single(root: Component) -> Self {
        Self {
            version: CERT_VERSION.to_string(),
            root: 0,
            components: vec![root],
            attachments: Vec::new(),
        }
    }

    /// Appends `child` inside `parent_face` of component `parent` and returns
    /// its index.
    pub fn attach(
        &mut self,
        child: Component,
        parent: usize,
        parent_face: usize,
        outward_face: usize,
    ) -> usize {
        let index = self.components.len();
        self.components.push(child);
        self.attachments.push(Attachment {
            child: index,
            parent,
            parent_face,
            outward_face,
        });
        index
    }

    /// Total vertices, `V`.
    pub fn vertex_count(&self) -> usize {
        // saturating: unverified input may carry absurd vertex counts
        self.components
            .iter()
            .fold(0usize, |acc, c| acc.saturating_add(c.vertex_count()))
    }

    pub fn edge_count(&self) -> usize {
        self.components
            .iter()
            .map(|c| match c {
                Component::Map(map) => map.edge_count(),
                Component::Circle => 0,
            })
            .fold(0usize, usize::saturating_add)
    }

    pub fn circle_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_circle()).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Parses JSON and checks the version tag. Structure is left to the
    /// verifier.
    pub fn from_json(text: &str) -> Result<Self, CertificateParseError> {
        let cert: Certificate = serde_json::from_str(text)?;
        if cert.version != CERT_VERSION {
            return Err(CertificateParseError::Version(cert.version));
        }
        Ok(cert)
    }
}
