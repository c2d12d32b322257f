//! Bundled example graphs and the tree options used for them.

use crate::error::{Error, Result};
use crate::graph::{GraphFile, Graph};
use crate::tree::TreeOptions;

/// Name and JSON text of every bundled graph.
pub const BUNDLED: [(&str, &str); 11] = [
    ("star3", include_str!("../fixtures/star3.json")),
    ("star4", include_str!("../fixtures/star4.json")),
    ("cycle5", include_str!("../fixtures/cycle5.json")),
    ("theta3", include_str!("../fixtures/theta3.json")),
    ("vartheta3", include_str!("../fixtures/vartheta3.json")),
    ("lollipop", include_str!("../fixtures/lollipop.json")),
    ("theta4_appendix", include_str!("../fixtures/theta4_appendix.json")),
    ("k4", include_str!("../fixtures/k4.json")),
    ("w4", include_str!("../fixtures/w4.json")),
    ("prism", include_str!("../fixtures/prism.json")),
    ("octahedron", include_str!("../fixtures/octahedron.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

pub fn load(name: &str) -> Result<GraphFile> {
    let (_, text) = BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Invalid(format!("no bundled graph `{name}`")))?;
    GraphFile::parse(text)
}

/// Whether the rotation system is a plane embedding (Euler's formula on a connected graph).
pub fn is_plane(g: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Ok(false);
    }
    let faces = g.faces()?;
    Ok(g.vertex_count() + faces.len() == g.edge_count() + 2)
}

/// Tree options for a graph file: its own hints if present; otherwise, for a plane
/// 2-connected graph, the first bounded face touching the unbounded one becomes the base loop.
pub fn tree_options(file: &GraphFile) -> TreeOptions {
    if file.hints.root.is_some() || !file.hints.deleted.is_empty() {
        return TreeOptions::from_hints(&file.hints);
    }
    let g = &file.graph;
    if is_plane(g).unwrap_or(false) && g.topological_connectivity().value >= 2 {
        if let Ok(faces) = g.faces() {
            let outer: std::collections::HashSet<_> = faces.face_edges(faces.unbounded).into_iter().collect();
            let base = (0..faces.len())
                .filter(|f| *f != faces.unbounded)
                .find(|f| faces.face_edges(*f).iter().any(|e| outer.contains(e)));
            if let Some(f) = base {
                return TreeOptions { base_face: Some(f), ..Default::default() };
            }
        }
    }
    TreeOptions::default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bundled_graphs_parse() {
        for name in names() {
            let f = load(name).unwrap();
            assert!(f.graph.is_connected(), "{name}");
        }
        assert!(load("nope").is_err());
    }

    #[test]
    fn plane_fixtures_pass_euler() {
        for name in ["k4", "w4", "prism", "octahedron", "theta3", "theta4_appendix"] {
            assert!(is_plane(&load(name).unwrap().graph).unwrap(), "{name}");
        }
    }

    #[test]
    fn hintless_plane_graphs_get_a_base_face() {
        assert!(tree_options(&load("k4").unwrap()).base_face.is_some());
        assert!(tree_options(&load("theta3").unwrap()).root.is_some());
    }
}
