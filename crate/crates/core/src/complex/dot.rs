use std::fmt::Write;

use super::certificate::{Certificate, Component};
use super::verify::{global_faces, StructureError};

/// Graphviz rendering: one node per vertex, one edge per dart pair, circles
/// as two-node cycles. Local faces and attachments are listed as comments.
/// Output order follows component, vertex and dart indices.
pub fn to_dot(cert: &Certificate) -> Result<String, StructureError> {
    let faces = global_faces(cert)?;
    let mut out = String::new();
    writeln!(out, "graph certificate {{").unwrap();
    for (i, comp) in cert.components.iter().enumerate() {
        match comp {
            Component::Map(map) => {
                writeln!(out, "  // component {i}: map, {} vertices", map.vertex_count()).unwrap();
                for v in 0..map.vertex_count() {
                    writeln!(out, "  c{i}_v{v};").unwrap();
                }
                for (d, &e) in map.alpha().iter().enumerate() {
                    if d < e {
                        writeln!(
                            out,
                            "  c{i}_v{} -- c{i}_v{}; // darts {d},{e}",
                            map.vertex_of(d),
                            map.vertex_of(e)
                        )
                        .unwrap();
                    }
                }
                for (f, face) in map.face_orbits().iter().enumerate() {
                    let darts: Vec<String> = face.iter().map(|d| d.to_string()).collect();
                    writeln!(out, "  // c{i} face {f}: darts {}", darts.join(" ")).unwrap();
                }
            }
            Component::Circle => {
                writeln!(out, "  // component {i}: circle").unwrap();
                writeln!(out, "  c{i}_a [label=\"circle {i}\"];").unwrap();
                writeln!(out, "  c{i}_b [label=\"circle {i}\"];").unwrap();
                writeln!(out, "  c{i}_a -- c{i}_b;").unwrap();
                writeln!(out, "  c{i}_b -- c{i}_a;").unwrap();
                writeln!(out, "  // c{i} face 0: side0").unwrap();
                writeln!(out, "  // c{i} face 1: side1").unwrap();
            }
        }
    }
    for att in &cert.attachments {
        writeln!(
            out,
            "  // c{} face {} lies in c{} face {}",
            att.child, att.outward_face, att.parent, att.parent_face
        )
        .unwrap();
    }
    for (g, face) in faces.iter().enumerate() {
        let members: Vec<String> = face
            .members
            .iter()
            .map(|m| format!("c{}.{}", m.component, m.face))
            .collect();
        writeln!(out, "  // global face {g} (k={}): {}", face.k(), members.join(" ")).unwrap();
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}
