//! Edge-colored graphs and the bridge to PDAs.
//!
//! A PDA is the same thing as a strong edge coloring of a bipartite graph
//! (rows on the left, columns on the right, a colored cell is an edge)
//! whose right-hand vertices all have the same degree. Constructions in
//! this crate work on the graph side with structured [`Label`]s and convert
//! to dense integer PDAs at the end, keeping a [`ColorLegend`].

mod bipartite;
mod cycle;
mod general;
mod label;
mod strong;

use thiserror::Error;

pub use bipartite::{coloring_to_pda, pda_to_coloring, ColorLegend, ColoredBipartiteGraph};
pub use cycle::{cycle, cycle_strong_coloring, cycle_vertex_coloring, opposing_orientations};
pub use general::{ColoredGraph, Graph, Orientation, VertexColoring};
pub use label::Label;
pub use strong::{StrongColoringReport, StrongViolation, StrongViolationKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex label {0}")]
    DuplicateVertex(Label),
    #[error("duplicate color label {0}")]
    DuplicateColor(Label),
    #[error("unknown vertex label {0}")]
    UnknownVertex(Label),
    #[error("edge {0} -- {1} appears more than once")]
    DuplicateEdge(Label, Label),
    #[error("edge {0} -- {1} does not cross the bipartition")]
    EdgeWithinSide(Label, Label),
    #[error("self-loop at {0}")]
    SelfLoop(Label),
    #[error("color {0} is not in the declared color set")]
    UndeclaredColor(Label),
    #[error("color {0} is declared but labels no edge")]
    UnusedColor(Label),
    #[error("right-hand degrees differ: {first} has degree {first_degree}, {other} has degree {other_degree}")]
    NonConstantRightDegree { first: Label, first_degree: usize, other: Label, other_degree: usize },
    #[error("coloring is not strong: {0}")]
    NotStrong(Box<StrongViolation>),
    #[error("vertex coloring is improper: {0} and {1} are adjacent and share color {2}")]
    ImproperVertexColoring(Label, Label, Label),
    #[error("vertex coloring covers {found} vertices, graph has {expected}")]
    PartialVertexColoring { found: usize, expected: usize },
    #[error("cycle length {m} unsupported: {reason}")]
    UnsupportedCycle { m: usize, reason: &'static str },
}
