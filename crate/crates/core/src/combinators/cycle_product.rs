use std::collections::HashMap;

use super::{require_strong, CombinatorError};
use crate::graphs::{
    cycle_strong_coloring, cycle_vertex_coloring, opposing_orientations, ColoredBipartiteGraph, GraphError, Label,
};

/// Cycle lengths with the colorings the product needs: `3`, or a multiple
/// of `6` (two vertex colors and three edge colors).
pub fn cycle_product_supported(m: usize) -> bool {
    m == 3 || (m >= 6 && m.is_multiple_of(6))
}

/// Product of `C_m` with a strong bipartite coloring.
///
/// Left vertices are `(x, y)` with `x` on the cycle and `y` a left vertex
/// of `base`; right vertices are `(u, v)` with `v` on the right of `base`.
/// `(x, y) ~ (u, v)` when `(y, v)` is a base edge and `x = u` or `x ~ u`
/// on the cycle. The color is `(s, s2)` with `s2` the base color and `s`
/// the vertex color of `x` when `x = u`, otherwise the color of the arc
/// `x -> u` in one of two opposing orientations with disjoint colors.
///
/// For `6 | m` this uses `2 + 6` cycle colors, so `S = 8 S'`; for `m = 3`
/// it uses `3 + 6`.
pub fn cycle_product(base: &ColoredBipartiteGraph, m: usize) -> Result<ColoredBipartiteGraph, CombinatorError> {
    if !cycle_product_supported(m) {
        return Err(GraphError::UnsupportedCycle { m, reason: "the cycle product needs m = 3 or 6 | m" }.into());
    }
    require_strong(0, base)?;
    let vertex_colors = cycle_vertex_coloring(m)?;
    let edge_colors = cycle_strong_coloring(m)?;
    let (forward, backward) = opposing_orientations(&edge_colors);
    let arcs: HashMap<(usize, usize), &Label> =
        forward.arcs().iter().chain(backward.arcs()).map(|(a, b, c)| ((*a as usize, *b as usize), c)).collect();

    let ring = |x: usize| Label::Int(x as u64 + 1);
    let tag = |x: usize, l: &Label| Label::pair(ring(x), l.clone());
    let (f, k) = (base.left().len(), base.right().len());
    let left = (0..m).flat_map(|x| base.left().iter().map(move |y| tag(x, y))).collect();
    let right = (0..m).flat_map(|u| base.right().iter().map(move |v| tag(u, v))).collect();

    let mut edges = Vec::with_capacity(3 * m * base.edge_count());
    for &(y, v, s2) in base.edges() {
        let s2 = &base.colors()[s2 as usize];
        for x in 0..m {
            for u in [x, (x + 1) % m, (x + m - 1) % m] {
                let s = if u == x { vertex_colors.color(x) } else { arcs[&(x, u)] };
                edges.push((x * f + y as usize, u * k + v as usize, Label::pair(s.clone(), s2.clone())));
            }
        }
    }
    Ok(ColoredBipartiteGraph::from_labeled_edges(left, right, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{disjoint_union_coloring, trivial_pda};

    fn product_params(base: &ColoredBipartiteGraph, m: usize) -> (usize, usize, usize, usize) {
        let p = cycle_product(base, m).unwrap().to_pda().unwrap();
        assert!(p.validate().is_valid());
        p.params().unwrap().tuple()
    }

    #[test]
    fn triangle_on_trivial() {
        let t = ColoredBipartiteGraph::from(trivial_pda());
        assert_eq!(product_params(&t, 3), (6, 6, 3, 9));
    }

    #[test]
    fn hexagon_on_trivial() {
        let t = ColoredBipartiteGraph::from(trivial_pda());
        assert_eq!(product_params(&t, 6), (12, 12, 9, 8));
    }

    #[test]
    fn hexagon_on_subset_family() {
        let g = disjoint_union_coloring(4, 1, 2).unwrap();
        // Base (6, 4, 2, 4) with g' = 2.
        assert_eq!(product_params(&g, 6), (36, 24, 24 - 3 * 2, 32));
    }

    #[test]
    fn unsupported_lengths() {
        let t = ColoredBipartiteGraph::from(trivial_pda());
        for m in [1, 2, 4, 5, 9, 15] {
            assert!(cycle_product(&t, m).is_err(), "m = {m}");
        }
        assert!(cycle_product_supported(12));
    }
}
