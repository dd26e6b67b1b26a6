//! Brute-force cross-checks and fuzz generators.
//!
//! Without triple points the multiplicity graph is a family of disjoint
//! circles, and the dissection is determined by how the circles nest. Every
//! nesting is a rooted forest; enumerating forests up to isomorphism gives
//! every census with `n = 0` directly, independent of the planner.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::census::Census;
use crate::complex::{global_faces, Certificate, CombMap, Component, LocalFace};
use crate::surgery::{apply_f1a_at, apply_f1b_at, instantiate_base, BaseTemplate};

/// Largest circle count `enumerate_n0` accepts.
pub const MAX_ENUMERATED_CIRCLES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("a nesting forest needs an even, positive number of circles, got {0}")]
    CircleCount(usize),
    #[error("nesting forest has a bad parent link at circle {0}")]
    BadParent(usize),
    #[error("max_circles must be even and at most {MAX_ENUMERATED_CIRCLES}, got {0}")]
    Bound(usize),
}

/// How disjoint circles nest on the sphere, seen from a fixed base point:
/// `parent[c]` is the circle immediately enclosing `c`, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestingForest {
    parent: Vec<Option<usize>>,
}

impl NestingForest {
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self, OracleError> {
        let c = parent.len();
        if c == 0 || c % 2 != 0 {
            return Err(OracleError::CircleCount(c));
        }
        for start in 0..c {
            let mut node = start;
            let mut steps = 0;
            while let Some(p) = parent[node] {
                if p >= c || steps > c {
                    return Err(OracleError::BadParent(start));
                }
                node = p;
                steps += 1;
            }
        }
        Ok(Self { parent })
    }

    pub fn circles(&self) -> usize {
        self.parent.len()
    }
}

/// One piece inside each circle (bounded by it and its children) plus the
/// outer piece bounded by the outermost circles.
pub fn forest_census(forest: &NestingForest) -> Census {
    let c = forest.circles();
    let mut children = vec![0u64; c];
    let mut roots = 0u64;
    for p in &forest.parent {
        match p {
            Some(p) => children[*p] += 1,
            None => roots += 1,
        }
    }
    let pieces = children
        .iter()
        .map(|&ch| (1 + ch as usize, 1))
        .chain(std::iter::once((roots as usize, 1)));
    Census::from_pairs(pieces).expect("forest pieces have k >= 1")
}

/// Unlabeled rooted trees by node count, children stored as non-increasing
/// tree ids. Ids are assigned in order of size, so a multiset of subtrees
/// has exactly one non-increasing listing.
struct RootedTrees {
    children: Vec<Vec<usize>>,
    size: Vec<usize>,
    by_size: Vec<Vec<usize>>,
}

impl RootedTrees {
    fn up_to(max_nodes: usize) -> Self {
        let mut trees = RootedTrees {
            children: Vec::new(),
            size: Vec::new(),
            by_size: vec![Vec::new(); max_nodes + 1],
        };
        for nodes in 1..=max_nodes {
            let mut found = Vec::new();
            let mut current = Vec::new();
            let max_id = trees.children.len();
            trees.collect_children(nodes - 1, max_id, &mut current, &mut found);
            for children in found {
                let id = trees.children.len();
                trees.children.push(children);
                trees.size.push(nodes);
                trees.by_size[nodes].push(id);
            }
        }
        trees
    }

    /// Non-increasing id sequences below `bound` whose sizes sum to `remaining`.
    fn collect_children(&self, remaining: usize, bound: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for id in (0..bound).rev() {
            if self.size[id] <= remaining {
                current.push(id);
                self.collect_children(remaining - self.size[id], id + 1, current, out);
                current.pop();
            }
        }
    }

    /// Labels the non-root nodes of tree `id` as circles `0..size-1`; the
    /// root stands for the base point's piece.
    fn to_forest(&self, id: usize) -> Vec<Option<usize>> {
        let mut parent = Vec::new();
        let mut stack: Vec<(usize, Option<usize>)> = self.children[id].iter().map(|&ch| (ch, None)).collect();
        while let Some((tree, up)) = stack.pop() {
            let label = parent.len();
            parent.push(up);
            stack.extend(self.children[tree].iter().map(|&ch| (ch, Some(label))));
        }
        parent
    }
}

/// Every census of an embedding of `c` disjoint circles, `c` even with
/// `2 <= c <= max_circles`.
pub fn enumerate_n0(max_circles: usize) -> Result<BTreeSet<Census>, OracleError> {
    if max_circles % 2 != 0 || max_circles > MAX_ENUMERATED_CIRCLES {
        return Err(OracleError::Bound(max_circles));
    }
    let trees = RootedTrees::up_to(max_circles + 1);
    let mut out = BTreeSet::new();
    for c in (2..=max_circles).step_by(2) {
        for &id in &trees.by_size[c + 1] {
            let forest = NestingForest::new(trees.to_forest(id))?;
            out.insert(forest_census(&forest));
        }
    }
    Ok(out)
}

/// Number of unlabeled rooted trees on `nodes` nodes, from the enumerator.
pub fn rooted_tree_count(nodes: usize) -> usize {
    RootedTrees::up_to(nodes).by_size[nodes].len()
}

/// Limits for [`random_certificate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomBounds {
    /// Upper bound on the total number of pieces. Values below 3 still give
    /// the smallest certificate (three pieces).
    pub max_faces: u64,
    /// Upper bound on `n` for the base template.
    pub max_n: u64,
}

impl Default for RandomBounds {
    fn default() -> Self {
        Self { max_faces: 40, max_n: 3 }
    }
}

/// A valid certificate from a random base template followed by random
/// surgeries at random hosts. Deterministic in `seed`.
pub fn random_certificate(seed: u64, bounds: RandomBounds) -> Certificate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bases = vec![BaseTemplate::Circles];
    for n in 1..=bounds.max_n {
        if 2 + 6 * n <= bounds.max_faces {
            bases.push(BaseTemplate::Discs { n });
        }
        if 3 + 6 * n <= bounds.max_faces {
            bases.push(BaseTemplate::Annulus { n });
        }
    }
    let base = *bases.choose(&mut rng).expect("circles always present");
    let mut cert = instantiate_base(base).expect("valid template");
    let mut faces = base.census().expect("valid template").total();
    while faces + 2 <= bounds.max_faces && rng.gen_bool(0.85) {
        let (host, k) = random_host(&cert, &mut rng);
        cert = if k == 1 && rng.gen_bool(0.5) {
            apply_f1b_at(&cert, host)
        } else {
            apply_f1a_at(&cert, k + 2, host)
        }
        .expect("host drawn from the certificate's own faces");
        faces += 2;
    }
    cert
}

/// A uniformly random local face and the size of its class.
pub fn random_host<R: Rng>(cert: &Certificate, rng: &mut R) -> (LocalFace, usize) {
    let faces = global_faces(cert).expect("random hosts need a valid certificate");
    let total: usize = faces.iter().map(|f| f.k()).sum();
    let mut pick = rng.gen_range(0..total);
    for face in &faces {
        if pick < face.k() {
            return (face.members[pick], face.k());
        }
        pick -= face.k();
    }
    unreachable!("pick is below the member total")
}

/// A valid certificate with arbitrary structure: doubled cycles and
/// octahedra decorated with curls, and circles, nested at random faces.
/// Unlike [`random_certificate`] it does not go through the surgeries.
pub fn random_complex(seed: u64, max_components: usize) -> Certificate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=max_components.max(1));
    let mut components: Vec<Component> = (0..count).map(|_| random_component(&mut rng)).collect();

    let vertices: usize = components.iter().map(Component::vertex_count).sum();
    if vertices % 6 != 0 {
        let pad = 6 - vertices % 6;
        match components.iter_mut().find(|c| !c.is_circle()) {
            Some(Component::Map(map)) => {
                for _ in 0..pad {
                    let dart = rng.gen_range(0..map.dart_count());
                    *map = map.with_curl(dart);
                }
            }
            _ => unreachable!("vertices > 0 implies a map component"),
        }
    }
    if components.iter().filter(|c| c.is_circle()).count() % 2 != 0 {
        components.push(Component::Circle);
    }

    let local_faces = |c: &Component| match c {
        Component::Map(map) => map.vertex_count() + 2,
        Component::Circle => 2,
    };
    // attach components in a random order, each below an earlier one
    let mut order: Vec<usize> = (0..components.len()).collect();
    order.shuffle(&mut rng);
    let mut cert = Certificate {
        version: crate::complex::CERT_VERSION.to_string(),
        root: order[0],
        components,
        attachments: Vec::new(),
    };
    for i in 1..order.len() {
        let child = order[i];
        let parent = order[rng.gen_range(0..i)];
        cert.attachments.push(crate::complex::Attachment {
            child,
            parent,
            parent_face: rng.gen_range(0..local_faces(&cert.components[parent])),
            outward_face: rng.gen_range(0..local_faces(&cert.components[child])),
        });
    }
    cert
}

fn random_component<R: Rng>(rng: &mut R) -> Component {
    let mut map = match rng.gen_range(0..4) {
        0 => return Component::Circle,
        1 => octahedron(),
        _ => CombMap::doubled_cycle(rng.gen_range(1..=8)),
    };
    for _ in 0..rng.gen_range(0..4) {
        let dart = rng.gen_range(0..map.dart_count());
        map = map.with_curl(dart);
    }
    Component::Map(map)
}

fn octahedron() -> CombMap {
    CombMap::from_simple_rotations(&[
        [1, 2, 3, 4],
        [0, 4, 5, 2],
        [0, 1, 5, 3],
        [0, 2, 5, 4],
        [0, 3, 5, 1],
        [1, 4, 3, 2],
    ])
    .expect("octahedron is a sphere map")
}

/// A random census satisfying both restrictions, with at most `max_faces`
/// pieces (`max_faces >= 3`). Pieces with two or more boundary circuits are
/// drawn first and `a_1` is solved from the Euler equation.
pub fn random_feasible_census<R: Rng>(rng: &mut R, max_faces: u64) -> Census {
    assert!(max_faces >= 3, "the smallest feasible census has 3 pieces");
    let max_n = (max_faces - 2) / 6;
    loop {
        let n = rng.gen_range(0..=max_n);
        let max_k = rng.gen_range(2..=12usize);
        let mut higher = Vec::new();
        let mut faces = 2 + 6 * n;
        while faces < max_faces && rng.gen_bool(0.8) {
            let k = rng.gen_range(2..=max_k);
            // each such piece costs itself plus k - 2 extra discs
            faces += 1 + (k as u64 - 2);
            higher.push(k);
        }
        if faces > max_faces {
            continue;
        }
        if n == 0 && faces % 2 == 0 {
            continue;
        }
        let a1 = 2 + 6 * n + higher.iter().map(|&k| k as u64 - 2).sum::<u64>();
        let pairs = std::iter::once((1, a1)).chain(higher.into_iter().map(|k| (k, 1)));
        return Census::from_pairs(pairs).expect("small counts");
    }
}
