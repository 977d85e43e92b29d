//! Base constructions: subset families over `[n] = {1..n}`, the trivial
//! 2x2 PDA and the star `K_{1,m}`.
//!
//! Subsets enumerate in lexicographic order of their sorted element lists,
//! which fixes row and column order of every generated array.

use itertools::Itertools;
use thiserror::Error;

use crate::combinators::{combine_same_colors_keeping, CombinatorError};
use crate::graphs::{ColoredBipartiteGraph, GraphError, Label};
use crate::pda::{PdaArray, PdaEntry};

/// Largest ground set supported; subsets are handled as 64-bit masks.
pub const MAX_GROUND_SET: u32 = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{family}: parameters must satisfy {requirement}")]
    Range { family: &'static str, requirement: &'static str },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Combine(#[from] CombinatorError),
}

fn require(ok: bool, family: &'static str, requirement: &'static str) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::Range { family, requirement })
    }
}

/// All `k`-subsets of `{1..n}` as bitmasks, in lexicographic order.
pub fn subsets(n: u32, k: u32) -> Vec<u64> {
    (1..=n).combinations(k as usize).map(|c| c.iter().fold(0u64, |m, &x| m | 1 << (x - 1))).collect()
}

/// The label of a subset mask.
pub fn set_label(mask: u64) -> Label {
    Label::Set((0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect())
}

fn set_labels(masks: &[u64]) -> Vec<Label> {
    masks.iter().map(|&m| set_label(m)).collect()
}

/// Left `a`-subsets, right `b`-subsets, an edge when disjoint, colored by
/// the union.
pub fn disjoint_union_coloring(n: u32, a: u32, b: u32) -> Result<ColoredBipartiteGraph, FamilyError> {
    const NAME: &str = "disjoint-union";
    require(n <= MAX_GROUND_SET, NAME, "n <= 63")?;
    require(a >= 1 && b >= 1 && a + b <= n, NAME, "a >= 1, b >= 1, a + b <= n")?;
    let (left, right) = (subsets(n, a), subsets(n, b));
    let mut edges = Vec::new();
    for (i, &x) in left.iter().enumerate() {
        for (j, &y) in right.iter().enumerate() {
            if x & y == 0 {
                edges.push((i, j, set_label(x | y)));
            }
        }
    }
    Ok(ColoredBipartiteGraph::from_labeled_edges(set_labels(&left), set_labels(&right), edges)?)
}

/// Left `a`-subsets, right `b`-subsets, an edge when `|A ∩ B| = t`,
/// colored by the pair (symmetric difference, intersection).
pub fn intersection_t_coloring(n: u32, a: u32, b: u32, t: u32) -> Result<ColoredBipartiteGraph, FamilyError> {
    const NAME: &str = "intersection-t";
    require(n <= MAX_GROUND_SET, NAME, "n <= 63")?;
    require(0 < a && a < n && 0 < b && b < n, NAME, "0 < a, b < n")?;
    require(t <= a.min(b) && a + b - t <= n, NAME, "t <= min(a, b) and a + b - t <= n")?;
    let (left, right) = (subsets(n, a), subsets(n, b));
    let mut edges = Vec::new();
    for (i, &x) in left.iter().enumerate() {
        for (j, &y) in right.iter().enumerate() {
            if (x & y).count_ones() == t {
                edges.push((i, j, Label::pair(set_label(x ^ y), set_label(x & y))));
            }
        }
    }
    Ok(ColoredBipartiteGraph::from_labeled_edges(set_labels(&left), set_labels(&right), edges)?)
}

fn check_restricted(n: u32, a: u32, b: u32, t: u32) -> Result<(), FamilyError> {
    const NAME: &str = "restricted-combined";
    require(n <= MAX_GROUND_SET, NAME, "n <= 63")?;
    require(a >= 1 && b >= 1 && a + b <= n, NAME, "a >= 1, b >= 1, a + b <= n")?;
    require(t < b && a + t <= n, NAME, "0 <= t < b and a + t <= n")
}

/// Combines the `(a+t, b-t)` and `(a, b)` disjoint-union colorings by
/// shared colors and keeps the right-hand pairs `(A, A')` with `A' ⊆ A`,
/// which gives every kept vertex the same degree.
pub fn restricted_combined_coloring(n: u32, a: u32, b: u32, t: u32) -> Result<ColoredBipartiteGraph, FamilyError> {
    check_restricted(n, a, b, t)?;
    let g1 = disjoint_union_coloring(n, a + t, b - t)?;
    let g2 = disjoint_union_coloring(n, a, b)?;
    let nested = |x: &Label, u: &Label| match (x.as_set(), u.as_set()) {
        (Some(big), Some(small)) => small.iter().all(|e| big.contains(e)),
        _ => false,
    };
    Ok(combine_same_colors_keeping(&g1, &g2, nested)?)
}

/// The PDA of [`restricted_combined_coloring`].
pub fn restricted_combined_family(n: u32, a: u32, b: u32, t: u32) -> Result<PdaArray, FamilyError> {
    Ok(restricted_combined_coloring(n, a, b, t)?.to_pda()?)
}

/// `[[*, 1], [1, *]]`.
pub fn trivial_pda() -> PdaArray {
    use PdaEntry::{Color, Star};
    PdaArray::new(vec![vec![Star, Color(1)], vec![Color(1), Star]]).expect("fixed array is well formed")
}

/// `K_{1,m}` with every edge its own color.
pub fn star_graph_coloring(m: u32) -> Result<ColoredBipartiteGraph, FamilyError> {
    require(m >= 1, "star", "m >= 1")?;
    let ints = |k: u32| (1..=u64::from(k)).map(Label::Int).collect::<Vec<_>>();
    let edges = (0..m as usize).map(|j| (0, j, Label::Int(j as u64 + 1))).collect();
    Ok(ColoredBipartiteGraph::from_labeled_edges(ints(1), ints(m), edges)?)
}

/// A named family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    DisjointUnion { n: u32, a: u32, b: u32 },
    IntersectionT { n: u32, a: u32, b: u32, t: u32 },
    RestrictedCombined { n: u32, a: u32, b: u32, t: u32 },
    Trivial,
    Star { m: u32 },
}

impl FamilySpec {
    pub fn coloring(&self) -> Result<ColoredBipartiteGraph, FamilyError> {
        match *self {
            FamilySpec::DisjointUnion { n, a, b } => disjoint_union_coloring(n, a, b),
            FamilySpec::IntersectionT { n, a, b, t } => intersection_t_coloring(n, a, b, t),
            FamilySpec::RestrictedCombined { n, a, b, t } => restricted_combined_coloring(n, a, b, t),
            FamilySpec::Trivial => Ok(ColoredBipartiteGraph::from_pda(&trivial_pda())),
            FamilySpec::Star { m } => star_graph_coloring(m),
        }
    }

    pub fn build(&self) -> Result<PdaArray, FamilyError> {
        Ok(self.coloring()?.to_pda()?)
    }
}
