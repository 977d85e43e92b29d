//! Operators that build new strong edge colorings (and so new PDAs) from
//! old ones.
//!
//! Every operator keeps structured labels: an output color is a
//! [`Label::Tuple`] of the input colors and vertices that produced it, so
//! [`ColoredBipartiteGraph::legend`] on the result maps each dense PDA
//! color back to its ingredients.

mod cycle_product;
mod products;
mod same_colors;

use thiserror::Error;

use crate::graphs::{ColoredBipartiteGraph, GraphError, Label, StrongViolation};

pub use cycle_product::{cycle_product, cycle_product_supported};
pub use products::{star_product, tensor_product};
pub use same_colors::{
    combine_same_colors, combine_same_colors_fold, combine_same_colors_keeping, CombinePrediction, ParamMismatch,
    SameColorCombination,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatorError {
    #[error("color sets differ: only in first {only_first:?}, only in second {only_second:?}")]
    ColorSetMismatch { only_first: Vec<Label>, only_second: Vec<Label> },
    #[error("operand {operand} is not a strong coloring: {violation}")]
    NotStrong { operand: usize, violation: Box<StrongViolation> },
    #[error("need at least {needed} operands, got {got}")]
    TooFewOperands { needed: usize, got: usize },
    #[error("tensor product needs a bipartite factor; neither operand is 2-colorable")]
    NeitherBipartite,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn require_strong(operand: usize, g: &ColoredBipartiteGraph) -> Result<(), CombinatorError> {
    match g.strong_coloring_report().violations.into_iter().next() {
        Some(violation) => Err(CombinatorError::NotStrong { operand, violation: Box::new(violation) }),
        None => Ok(()),
    }
}
