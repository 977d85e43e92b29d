//! The cycle `C_m` with the colorings used by the cycle product.

use super::general::{ColoredGraph, Graph, Orientation, VertexColoring};
use super::{GraphError, Label};

/// `C_m` on vertices `1..=m`; edge `i` joins vertex `i + 1` to `i + 2`
/// (mod `m`), so edges run clockwise.
pub fn cycle(m: usize) -> Result<Graph, GraphError> {
    if m < 3 {
        return Err(GraphError::UnsupportedCycle { m, reason: "a cycle needs at least 3 vertices" });
    }
    let vertices = (1..=m as u64).map(Label::Int).collect();
    Graph::new(vertices, (0..m).map(|i| (i, (i + 1) % m)).collect())
}

/// Three colors `a, b, c` for `C_3`; alternating `a, b` for even `m`.
pub fn cycle_vertex_coloring(m: usize) -> Result<VertexColoring, GraphError> {
    let host = cycle(m)?;
    let names: &[&str] = match m {
        3 => &["a", "b", "c"],
        m if m % 2 == 0 => &["a", "b"],
        _ => return Err(GraphError::UnsupportedCycle { m, reason: "odd cycles other than C_3 are not colored" }),
    };
    let colors = (0..m).map(|v| Label::name(names[v % names.len()])).collect();
    VertexColoring::new(&host, colors)
}

/// Edge `i` gets color `i mod 3 + 1`; strong whenever `3 | m`.
pub fn cycle_strong_coloring(m: usize) -> Result<ColoredGraph, GraphError> {
    let host = cycle(m)?;
    if !m.is_multiple_of(3) {
        return Err(GraphError::UnsupportedCycle { m, reason: "three edge colors need m divisible by 3" });
    }
    let vertices = host.vertices().to_vec();
    let edges = host
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (a as usize, b as usize, Label::Int(i as u64 % 3 + 1)))
        .collect();
    ColoredGraph::from_labeled_edges(vertices, edges)
}

/// Two opposing orientations with disjoint colors: each edge as stored
/// keeps its color, the reverse arc gets the primed copy.
pub fn opposing_orientations(coloring: &ColoredGraph) -> (Orientation, Orientation) {
    let mut forward = Vec::with_capacity(coloring.edge_count());
    let mut backward = Vec::with_capacity(coloring.edge_count());
    for (a, b, c) in coloring.colored_edges() {
        let color = coloring.colors()[c as usize].clone();
        forward.push((a, b, color.clone()));
        backward.push((b, a, color.primed()));
    }
    (Orientation::new(forward), Orientation::new(backward))
}
