use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{require_strong, CombinatorError};
use crate::graphs::{ColoredBipartiteGraph, Label};

/// Parameters the closed-form statement predicts for a same-color
/// combination. `z` is not predicted; it is only measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CombinePrediction {
    pub k: usize,
    pub f: usize,
    pub s: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamMismatch {
    pub name: &'static str,
    pub predicted: usize,
    pub measured: usize,
}

impl fmt::Display for ParamMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: predicted {}, measured {}", self.name, self.predicted, self.measured)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SameColorCombination {
    pub graph: ColoredBipartiteGraph,
    pub predicted: CombinePrediction,
    /// Predicted values that the constructed graph does not reproduce.
    pub mismatches: Vec<ParamMismatch>,
}

fn check_same_colors(g1: &ColoredBipartiteGraph, g2: &ColoredBipartiteGraph) -> Result<(), CombinatorError> {
    if g1.colors() == g2.colors() {
        return Ok(());
    }
    let a: BTreeSet<&Label> = g1.colors().iter().collect();
    let b: BTreeSet<&Label> = g2.colors().iter().collect();
    Err(CombinatorError::ColorSetMismatch {
        only_first: a.difference(&b).map(|l| (*l).clone()).collect(),
        only_second: b.difference(&a).map(|l| (*l).clone()).collect(),
    })
}

/// Combines two strong colorings over the same color set.
///
/// The new left side is `g1`'s right side. A right vertex is a pair
/// `(x, u)` of a left vertex of `g1` and one of `g2` that meet some
/// common color `s`, and the edge `(y, (x, u))` exists for
/// `(x, y, s)` in `g1` and `(u, v, s)` in `g2`, colored `(s, v)`.
pub fn combine_same_colors(
    g1: &ColoredBipartiteGraph,
    g2: &ColoredBipartiteGraph,
) -> Result<SameColorCombination, CombinatorError> {
    let graph = combine_same_colors_keeping(g1, g2, |_, _| true)?;
    let predicted = CombinePrediction {
        k: sharing_row_pairs(g1, g2),
        f: g1.right().len(),
        s: g1.colors().len() * g2.right().len(),
    };
    let measured = [("K", graph.right().len()), ("F", graph.left().len()), ("S", graph.colors().len())];
    let mismatches = [predicted.k, predicted.f, predicted.s]
        .into_iter()
        .zip(measured)
        .filter(|(p, (_, m))| p != m)
        .map(|(predicted, (name, measured))| ParamMismatch { name, predicted, measured })
        .collect();
    Ok(SameColorCombination { graph, predicted, mismatches })
}

/// Counts row pairs of the two PDAs that share a color, straight from the
/// color sets of the left vertices.
fn sharing_row_pairs(g1: &ColoredBipartiteGraph, g2: &ColoredBipartiteGraph) -> usize {
    let row_colors = |g: &ColoredBipartiteGraph| {
        let mut sets = vec![BTreeSet::new(); g.left().len()];
        for &(l, _, c) in g.edges() {
            sets[l as usize].insert(c);
        }
        sets
    };
    let (r1, r2) = (row_colors(g1), row_colors(g2));
    r1.iter().map(|a| r2.iter().filter(|b| !a.is_disjoint(b)).count()).sum()
}

/// [`combine_same_colors`] restricted to the right vertices `(x, u)` for
/// which `keep(x, u)` holds. Colors left without an edge are dropped.
pub fn combine_same_colors_keeping(
    g1: &ColoredBipartiteGraph,
    g2: &ColoredBipartiteGraph,
    keep: impl Fn(&Label, &Label) -> bool,
) -> Result<ColoredBipartiteGraph, CombinatorError> {
    check_same_colors(g1, g2)?;
    require_strong(0, g1)?;
    require_strong(1, g2)?;
    let mut by_color: Vec<Vec<(u32, u32)>> = vec![Vec::new(); g2.colors().len()];
    for &(u, v, s) in g2.edges() {
        by_color[s as usize].push((u, v));
    }
    let mut pairs: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    let mut raw = Vec::new();
    for &(x, y, s) in g1.edges() {
        for &(u, v) in &by_color[s as usize] {
            if keep(&g1.left()[x as usize], &g2.left()[u as usize]) {
                pairs.insert((x, u), 0);
                raw.push((y, (x, u), s, v));
            }
        }
    }
    let mut right = Vec::with_capacity(pairs.len());
    for (i, (&(x, u), slot)) in pairs.iter_mut().enumerate() {
        *slot = i;
        right.push(Label::pair(g1.left()[x as usize].clone(), g2.left()[u as usize].clone()));
    }
    let edges = raw
        .into_iter()
        .map(|(y, xu, s, v)| {
            let color = Label::pair(g1.colors()[s as usize].clone(), g2.right()[v as usize].clone());
            (y as usize, pairs[&xu], color)
        })
        .collect();
    Ok(ColoredBipartiteGraph::from_labeled_edges(g1.right().to_vec(), right, edges)?)
}

/// Left fold of [`combine_same_colors`]. Each step needs the running
/// result and the next graph to share a color set.
pub fn combine_same_colors_fold(gs: &[ColoredBipartiteGraph]) -> Result<ColoredBipartiteGraph, CombinatorError> {
    let (first, rest) = match gs {
        [first, rest @ ..] if !rest.is_empty() => (first, rest),
        _ => return Err(CombinatorError::TooFewOperands { needed: 2, got: gs.len() }),
    };
    rest.iter().try_fold(first.clone(), |acc, g| Ok(combine_same_colors(&acc, g)?.graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{disjoint_union_coloring, trivial_pda};
    use crate::pda::{equivalent, fixtures, PdaArray};

    #[test]
    fn two_small_pdas_give_the_four_user_array() {
        let p1 = PdaArray::from_grid_str("* 1 * 2\n1 * 2 *").unwrap();
        let p2 = p1.clone();
        let out = combine_same_colors(&p1.clone().into(), &p2.into()).unwrap();
        let p = out.graph.to_pda().unwrap();
        assert_eq!(p.params().unwrap().tuple(), (4, 4, 2, 4));
        assert!(equivalent(&p, &fixtures::four_by_four(), 1_000_000).is_equivalent());
        assert_eq!(out.graph.left(), ColoredBipartiteGraph::from(p1).right());
    }

    #[test]
    fn single_edge_partner_relabels_right_side() {
        let g1 = ColoredBipartiteGraph::from(trivial_pda());
        let g2 = ColoredBipartiteGraph::from_triples(
            vec![Label::name("u")],
            vec![Label::name("v")],
            [(Label::name("u"), Label::name("v"), Label::Int(1))],
        )
        .unwrap();
        let out = combine_same_colors(&g1, &g2).unwrap().graph;
        assert_eq!(out.to_pda().unwrap(), trivial_pda());
        let rights: Vec<String> = out.right().iter().map(ToString::to_string).collect();
        assert_eq!(rights, ["(1,u)", "(2,u)"]);
        assert_eq!(out.colors(), [Label::pair(Label::Int(1), Label::name("v"))]);
    }

    #[test]
    fn color_set_mismatch() {
        let g1 = ColoredBipartiteGraph::from(PdaArray::from_grid_str("1 2").unwrap());
        let g2 = ColoredBipartiteGraph::from_triples(
            vec![Label::Int(1)],
            vec![Label::Int(1), Label::Int(2)],
            [(Label::Int(1), Label::Int(1), Label::Int(1)), (Label::Int(1), Label::Int(2), Label::Int(3))],
        )
        .unwrap();
        match combine_same_colors(&g1, &g2) {
            Err(CombinatorError::ColorSetMismatch { only_first, only_second }) => {
                assert_eq!(only_first, [Label::Int(2)]);
                assert_eq!(only_second, [Label::Int(3)]);
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    #[test]
    fn non_strong_operand_is_rejected() {
        let bad = ColoredBipartiteGraph::from(PdaArray::from_grid_str("1 2\n2 1").unwrap());
        let err = combine_same_colors(&bad, &bad).unwrap_err();
        assert!(matches!(err, CombinatorError::NotStrong { operand: 0, .. }));
    }

    #[test]
    fn prediction_is_reported_not_trusted() {
        let g = disjoint_union_coloring(4, 1, 2).unwrap();
        let out = combine_same_colors(&g, &g).unwrap();
        assert!(out.graph.is_strong_coloring());
        assert_eq!(out.predicted.f, out.graph.left().len());
        assert_eq!(out.predicted.k, out.graph.right().len());
        // Every color (s, v) comes from one edge of the second graph.
        assert_eq!(out.graph.colors().len(), g.edge_count());
        let s = out.mismatches.iter().find(|m| m.name == "S").unwrap();
        assert_eq!((s.predicted, s.measured), (4 * 6, 12));
    }

    #[test]
    fn fold_needs_matching_colors() {
        let g = ColoredBipartiteGraph::from(trivial_pda());
        assert!(matches!(
            combine_same_colors_fold(std::slice::from_ref(&g)),
            Err(CombinatorError::TooFewOperands { .. })
        ));
        let two = combine_same_colors_fold(&[g.clone(), g.clone()]).unwrap();
        assert!(two.is_strong_coloring());
        assert!(matches!(
            combine_same_colors_fold(&[g.clone(), g.clone(), g]),
            Err(CombinatorError::ColorSetMismatch { .. })
        ));
    }
}
