use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("{which} has length {len}, expected {expected} (4 darts per vertex)")]
    WrongLength {
        which: &'static str,
        len: usize,
        expected: usize,
    },
    #[error("{which} is not a permutation of the darts: {detail}")]
    NotPermutation { which: &'static str, detail: String },
    #[error("alpha is not a fixed-point-free involution at dart {dart}")]
    BadInvolution { dart: usize },
    #[error("rotation at vertex {vertex} is not a single 4-cycle on its own darts")]
    NotFourRegular { vertex: usize },
    #[error("map is disconnected: {reached} of {total} darts reachable from dart 0")]
    Disconnected { reached: usize, total: usize },
    #[error("map is not spherical: V - E + F = {vertices} - {edges} + {faces} != 2")]
    NotSpherical {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
}

/// A connected 4-regular map on the sphere.
///
/// Vertex `v` owns darts `4v..4v+4`. `sigma` rotates darts counterclockwise
/// around their vertex and `alpha` exchanges the two darts of an edge. Faces
/// are the orbits of `phi(d) = sigma(alpha(d))`. Loops and parallel edges
/// are allowed.
///
/// The fields are not validated on construction through [`CombMap::from_raw`]
/// or deserialization; the verifier reports malformed data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombMap {
    vertices: usize,
    sigma: Vec<usize>,
    alpha: Vec<usize>,
}

impl CombMap {
    /// Validating constructor: dart permutations, 4-regularity,
    /// connectivity and sphericity.
    pub fn new(vertices: usize, sigma: Vec<usize>, alpha: Vec<usize>) -> Result<Self, MapError> {
        let map = Self::from_raw(vertices, sigma, alpha);
        map.trace_faces()?;
        Ok(map)
    }

    pub fn from_raw(vertices: usize, sigma: Vec<usize>, alpha: Vec<usize>) -> Self {
        Self {
            vertices,
            sigma,
            alpha,
        }
    }

    /// `len` vertices on a cycle, consecutive vertices joined by two parallel
    /// edges. Faces: one `len`-gon on each side and `len` digons.
    pub fn doubled_cycle(len: usize) -> Self {
        assert!(len >= 1, "doubled cycle needs at least one vertex");
        let sigma = (0..4 * len).map(|d| 4 * (d / 4) + (d + 1) % 4).collect();
        let mut alpha = vec![0; 4 * len];
        for v in 0..len {
            let next = (v + 1) % len;
            // darts 0,1 lead forward, darts 3,2 arrive from behind
            alpha[4 * v] = 4 * next + 3;
            alpha[4 * next + 3] = 4 * v;
            alpha[4 * v + 1] = 4 * next + 2;
            alpha[4 * next + 2] = 4 * v + 1;
        }
        Self::from_raw(len, sigma, alpha)
    }

    /// Map of a simple 4-regular graph given by its rotation system:
    /// `rotations[v]` lists the neighbours of `v` counterclockwise.
    pub fn from_simple_rotations(rotations: &[[usize; 4]]) -> Result<Self, MapError> {
        let n = rotations.len();
        let sigma = (0..4 * n).map(|d| 4 * (d / 4) + (d + 1) % 4).collect();
        let mut alpha = vec![usize::MAX; 4 * n];
        for (v, nbrs) in rotations.iter().enumerate() {
            for (i, &u) in nbrs.iter().enumerate() {
                let j = rotations
                    .get(u)
                    .and_then(|r| r.iter().position(|&w| w == v))
                    .ok_or(MapError::BadInvolution { dart: 4 * v + i })?;
                alpha[4 * v + i] = 4 * u + j;
            }
        }
        Self::new(n, sigma, alpha)
    }

    /// Inserts a curl on the edge holding `dart`: a new vertex subdivides the
    /// edge and carries a loop between two rotation-adjacent darts. Adds one
    /// vertex, two edges and one face (the loop's interior).
    pub fn with_curl(&self, dart: usize) -> Self {
        assert!(dart < self.dart_count(), "dart out of range");
        let partner = self.alpha[dart];
        let base = self.dart_count();
        let mut sigma = self.sigma.clone();
        let mut alpha = self.alpha.clone();
        sigma.extend([base + 1, base + 2, base + 3, base]);
        alpha.extend([dart, base + 2, base + 1, partner]);
        alpha[dart] = base;
        alpha[partner] = base + 3;
        Self::from_raw(self.vertices + 1, sigma, alpha)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        4 * self.vertices
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn vertex_of(&self, dart: usize) -> usize {
        dart / 4
    }

    /// Lengths match and both arrays are permutations; alpha is a
    /// fixed-point-free involution.
    pub fn check_darts(&self) -> Result<(), MapError> {
        let expected = self
            .vertices
            .checked_mul(4)
            .ok_or(MapError::WrongLength {
                which: "sigma",
                len: self.sigma.len(),
                expected: usize::MAX,
            })?;
        for (which, perm) in [("sigma", &self.sigma), ("alpha", &self.alpha)] {
            if perm.len() != expected {
                return Err(MapError::WrongLength {
                    which,
                    len: perm.len(),
                    expected,
                });
            }
            let mut seen = vec![false; expected];
            for (d, &img) in perm.iter().enumerate() {
                if img >= expected {
                    return Err(MapError::NotPermutation {
                        which,
                        detail: format!("dart {d} maps to {img}, out of range"),
                    });
                }
                if std::mem::replace(&mut seen[img], true) {
                    return Err(MapError::NotPermutation {
                        which,
                        detail: format!("dart {img} is hit twice"),
                    });
                }
            }
        }
        for (d, &img) in self.alpha.iter().enumerate() {
            if img == d || self.alpha[img] != d {
                return Err(MapError::BadInvolution { dart: d });
            }
        }
        Ok(())
    }

    /// Every vertex's rotation is one 4-cycle on its own four darts.
    /// Assumes [`check_darts`](Self::check_darts) passed.
    pub fn check_regularity(&self) -> Result<(), MapError> {
        for v in 0..self.vertices {
            let start = 4 * v;
            let mut d = start;
            for step in 1..=4 {
                d = self.sigma[d];
                if d / 4 != v || (d == start) != (step == 4) {
                    return Err(MapError::NotFourRegular { vertex: v });
                }
            }
        }
        Ok(())
    }

    /// The darts reachable from dart 0 under sigma and alpha are all darts.
    /// A map without vertices counts as disconnected.
    pub fn check_connected(&self) -> Result<(), MapError> {
        let total = self.dart_count();
        if total == 0 {
            return Err(MapError::Disconnected { reached: 0, total });
        }
        let mut seen = vec![false; total];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(d) = stack.pop() {
            for next in [self.sigma[d], self.alpha[d]] {
                if !seen[next] {
                    seen[next] = true;
                    reached += 1;
                    stack.push(next);
                }
            }
        }
        if reached == total {
            Ok(())
        } else {
            Err(MapError::Disconnected { reached, total })
        }
    }

    /// Orbits of `phi = sigma . alpha`, each starting at its smallest dart,
    /// ordered by that dart. Assumes valid dart permutations.
    pub fn face_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.dart_count()];
        let mut faces = Vec::new();
        for start in 0..self.dart_count() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = self.sigma[self.alpha[d]];
            }
            faces.push(face);
        }
        faces
    }

    pub fn check_spherical(&self, face_count: usize) -> Result<(), MapError> {
        let (v, e) = (self.vertices, self.edge_count());
        if v as i128 - e as i128 + face_count as i128 == 2 {
            Ok(())
        } else {
            Err(MapError::NotSpherical {
                vertices: v,
                edges: e,
                faces: face_count,
            })
        }
    }

    /// Local faces of the map, in local-face-id order. Runs every map-level
    /// check first.
    pub fn trace_faces(&self) -> Result<Vec<Vec<usize>>, MapError> {
        self.check_darts()?;
        self.check_regularity()?;
        self.check_connected()?;
        let faces = self.face_orbits();
        self.check_spherical(faces.len())?;
        Ok(faces)
    }
}
