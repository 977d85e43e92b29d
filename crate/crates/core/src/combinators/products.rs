use itertools::Itertools;

use super::{require_strong, CombinatorError};
use crate::graphs::{ColoredBipartiteGraph, ColoredGraph, Label};

fn tuple_labels(sides: &[&[Label]]) -> Vec<Label> {
    sides
        .iter()
        .map(|s| s.iter())
        .multi_cartesian_product()
        .map(|t| Label::Tuple(t.into_iter().cloned().collect()))
        .collect()
}

/// Mixed-radix index of a coordinate tuple, first coordinate most
/// significant, matching the order of [`tuple_labels`].
fn flat_index(coords: impl Iterator<Item = (usize, usize)>) -> usize {
    coords.fold(0, |acc, (i, radix)| acc * radix + i)
}

/// Componentwise product: vertex tuples on each side, an edge when every
/// coordinate is an edge, colored by the tuple of coordinate colors.
pub fn star_product(gs: &[ColoredBipartiteGraph]) -> Result<ColoredBipartiteGraph, CombinatorError> {
    if gs.len() < 2 {
        return Err(CombinatorError::TooFewOperands { needed: 2, got: gs.len() });
    }
    for (i, g) in gs.iter().enumerate() {
        require_strong(i, g)?;
    }
    let lefts: Vec<&[Label]> = gs.iter().map(|g| g.left()).collect();
    let rights: Vec<&[Label]> = gs.iter().map(|g| g.right()).collect();
    let edges = gs
        .iter()
        .map(|g| g.edges().iter())
        .multi_cartesian_product()
        .map(|combo| {
            let l = flat_index(combo.iter().zip(gs).map(|(e, g)| (e.0 as usize, g.left().len())));
            let r = flat_index(combo.iter().zip(gs).map(|(e, g)| (e.1 as usize, g.right().len())));
            let color = Label::Tuple(combo.iter().zip(gs).map(|(e, g)| g.colors()[e.2 as usize].clone()).collect());
            (l, r, color)
        })
        .collect();
    Ok(ColoredBipartiteGraph::from_labeled_edges(tuple_labels(&lefts), tuple_labels(&rights), edges)?)
}

/// Tensor product of two general colorings: `(x, y) ~ (u, v)` when
/// `x ~ u` and `y ~ v`, colored by the pair of colors. One factor must be
/// bipartite.
pub fn tensor_product(c1: &ColoredGraph, c2: &ColoredGraph) -> Result<ColoredGraph, CombinatorError> {
    if !c1.is_bipartite() && !c2.is_bipartite() {
        return Err(CombinatorError::NeitherBipartite);
    }
    for (operand, c) in [c1, c2].into_iter().enumerate() {
        if let Some(violation) = c.strong_coloring_report().violations.into_iter().next() {
            return Err(CombinatorError::NotStrong { operand, violation: Box::new(violation) });
        }
    }
    let vertices = tuple_labels(&[c1.vertices(), c2.vertices()]);
    let n2 = c2.vertices().len();
    let at = |a: u32, b: u32| a as usize * n2 + b as usize;
    let mut edges = Vec::with_capacity(2 * c1.edge_count() * c2.edge_count());
    for (x, u, s1) in c1.colored_edges() {
        for (y, v, s2) in c2.colored_edges() {
            let color = Label::pair(c1.colors()[s1 as usize].clone(), c2.colors()[s2 as usize].clone());
            edges.push((at(x, y), at(u, v), color.clone()));
            edges.push((at(x, v), at(u, y), color));
        }
    }
    Ok(ColoredGraph::from_labeled_edges(vertices, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{disjoint_union_coloring, star_graph_coloring, trivial_pda};
    use crate::graphs::{cycle_strong_coloring, Graph};
    use crate::pda::{equivalent, fixtures, PdaArray};

    fn single_edge() -> ColoredGraph {
        ColoredGraph::from_labeled_edges(vec![Label::name("p"), Label::name("q")], vec![(0, 1, Label::Int(1))]).unwrap()
    }

    #[test]
    fn trivial_squared() {
        let t = ColoredBipartiteGraph::from(trivial_pda());
        let p = star_product(&[t.clone(), t]).unwrap().to_pda().unwrap();
        assert!(p.validate().is_valid());
        assert_eq!(p.params().unwrap().tuple(), (4, 4, 3, 1));
    }

    #[test]
    fn grouping_with_a_star() {
        let e1 = ColoredBipartiteGraph::from(fixtures::four_by_four());
        let p = star_product(&[e1, star_graph_coloring(3).unwrap()]).unwrap().to_pda().unwrap();
        assert!(p.validate().is_valid());
        assert_eq!(p.params().unwrap().tuple(), (12, 4, 2, 12));
    }

    #[test]
    fn single_star_edge_is_an_identity() {
        for p in [fixtures::four_by_four(), trivial_pda(), disjoint_union_coloring(4, 1, 2).unwrap().to_pda().unwrap()]
        {
            let g = star_product(&[ColoredBipartiteGraph::from(p.clone()), star_graph_coloring(1).unwrap()]).unwrap();
            assert!(equivalent(&g.to_pda().unwrap(), &p, 1_000_000).is_equivalent());
        }
    }

    #[test]
    fn star_product_needs_two_strong_operands() {
        let t = ColoredBipartiteGraph::from(trivial_pda());
        assert!(matches!(star_product(std::slice::from_ref(&t)), Err(CombinatorError::TooFewOperands { .. })));
        let bad = ColoredBipartiteGraph::from(PdaArray::from_grid_str("1 2\n2 1").unwrap());
        assert!(matches!(star_product(&[t, bad]), Err(CombinatorError::NotStrong { operand: 1, .. })));
    }

    #[test]
    fn tensor_of_single_edges() {
        let t = tensor_product(&single_edge(), &single_edge()).unwrap();
        assert_eq!(t.edge_count(), 2);
        assert_eq!(t.colors().len(), 1);
        let touched: std::collections::HashSet<u32> = t.colored_edges().flat_map(|(a, b, _)| [a, b]).collect();
        assert_eq!(touched.len(), 4);
        assert!(t.is_strong_coloring());
    }

    #[test]
    fn tensor_with_trivial_graph() {
        let g = ColoredBipartiteGraph::from(trivial_pda()).to_general();
        let t = tensor_product(&g, &single_edge()).unwrap();
        assert_eq!(t.edge_count(), 4);
        assert!(t.is_strong_coloring());
        let c3 = cycle_strong_coloring(3).unwrap();
        assert!(tensor_product(&c3, &single_edge()).unwrap().is_strong_coloring());
    }

    #[test]
    fn odd_cycles_are_rejected() {
        let c3 = cycle_strong_coloring(3).unwrap();
        assert!(!Graph::is_bipartite(c3.graph()));
        assert_eq!(tensor_product(&c3, &c3).unwrap_err(), CombinatorError::NeitherBipartite);
    }
}
