use std::collections::{BTreeMap, HashMap, HashSet};

use super::general::ColoredGraph;
use super::strong::{self, RawKind, StrongColoringReport, StrongViolation, StrongViolationKind};
use super::{GraphError, Label};
use crate::pda::{PdaArray, PdaEntry};
use crate::Execution;

/// An edge-colored bipartite graph, stored as its triple system
/// `(left, right, color)`.
///
/// Left and right vertex lists are ordered: PDA rows and columns follow
/// list position. Colors are kept sorted and every color labels at least
/// one edge, so color `i` of the list becomes PDA color `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredBipartiteGraph {
    left: Vec<Label>,
    right: Vec<Label>,
    colors: Vec<Label>,
    edges: Vec<(u32, u32, u32)>,
}

fn check_distinct(labels: &[Label]) -> Result<(), GraphError> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l) {
            return Err(GraphError::DuplicateVertex(l.clone()));
        }
    }
    Ok(())
}

impl ColoredBipartiteGraph {
    /// Builds from index-based edges carrying color labels. The color set is
    /// the set of labels that occur.
    pub fn from_labeled_edges(
        left: Vec<Label>,
        right: Vec<Label>,
        edges: Vec<(usize, usize, Label)>,
    ) -> Result<Self, GraphError> {
        check_distinct(&left)?;
        check_distinct(&right)?;
        let mut color_ids: BTreeMap<Label, u32> = BTreeMap::new();
        for (_, _, c) in &edges {
            color_ids.entry(c.clone()).or_insert(0);
        }
        for (i, id) in color_ids.values_mut().enumerate() {
            *id = i as u32;
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut indexed = Vec::with_capacity(edges.len());
        for (l, r, c) in edges {
            let lbl = left.get(l).ok_or(GraphError::UnknownVertex(Label::Int(l as u64)))?;
            let rbl = right.get(r).ok_or(GraphError::UnknownVertex(Label::Int(r as u64)))?;
            if !seen.insert((l, r)) {
                return Err(GraphError::DuplicateEdge(lbl.clone(), rbl.clone()));
            }
            indexed.push((l as u32, r as u32, color_ids[&c]));
        }
        indexed.sort_unstable();
        Ok(Self { left, right, colors: color_ids.into_keys().collect(), edges: indexed })
    }

    /// Builds from a fully labeled triple system.
    pub fn from_triples(
        left: Vec<Label>,
        right: Vec<Label>,
        triples: impl IntoIterator<Item = (Label, Label, Label)>,
    ) -> Result<Self, GraphError> {
        let lpos: HashMap<&Label, usize> = left.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let rpos: HashMap<&Label, usize> = right.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut edges = Vec::new();
        for (l, r, c) in triples {
            let li = *lpos.get(&l).ok_or_else(|| GraphError::UnknownVertex(l.clone()))?;
            let ri = *rpos.get(&r).ok_or_else(|| GraphError::UnknownVertex(r.clone()))?;
            edges.push((li, ri, c));
        }
        Self::from_labeled_edges(left, right, edges)
    }

    /// Like [`from_labeled_edges`](Self::from_labeled_edges) but with an
    /// explicit declared color set, every member of which must be used.
    pub fn with_declared_colors(
        left: Vec<Label>,
        right: Vec<Label>,
        colors: &[Label],
        edges: Vec<(usize, usize, Label)>,
    ) -> Result<Self, GraphError> {
        let declared: HashSet<&Label> = colors.iter().collect();
        if declared.len() != colors.len() {
            let mut seen = HashSet::new();
            let dup = colors.iter().find(|c| !seen.insert(*c)).unwrap();
            return Err(GraphError::DuplicateColor(dup.clone()));
        }
        if let Some((_, _, c)) = edges.iter().find(|(_, _, c)| !declared.contains(c)) {
            return Err(GraphError::UndeclaredColor(c.clone()));
        }
        let g = Self::from_labeled_edges(left, right, edges)?;
        if let Some(unused) = colors.iter().find(|c| g.colors.binary_search(c).is_err()) {
            return Err(GraphError::UnusedColor(unused.clone()));
        }
        Ok(g)
    }

    /// The graph of a PDA: rows `1..F` on the left, columns `1..K` on the
    /// right, colors `1..S`, one edge per colored cell.
    pub fn from_pda(p: &PdaArray) -> Self {
        let ints = |n: usize| (1..=n as u64).map(Label::Int).collect::<Vec<_>>();
        let edges = p.entries().filter_map(|(r, c, e)| e.color().map(|s| (r as u32, c as u32, s - 1))).collect();
        Self { left: ints(p.rows()), right: ints(p.cols()), colors: ints(p.color_count() as usize), edges }
    }

    pub fn left(&self) -> &[Label] {
        &self.left
    }

    pub fn right(&self) -> &[Label] {
        &self.right
    }

    pub fn colors(&self) -> &[Label] {
        &self.colors
    }

    /// Index triples `(left, right, color)`, sorted.
    pub fn edges(&self) -> &[(u32, u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn triples(&self) -> impl Iterator<Item = (&Label, &Label, &Label)> + '_ {
        self.edges.iter().map(|&(l, r, c)| (&self.left[l as usize], &self.right[r as usize], &self.colors[c as usize]))
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.right.len()];
        for &(_, r, _) in &self.edges {
            deg[r as usize] += 1;
        }
        deg
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.left.len()];
        for &(l, _, _) in &self.edges {
            deg[l as usize] += 1;
        }
        deg
    }

    /// Common degree of the right-hand vertices, if there is one.
    pub fn constant_right_degree(&self) -> Result<usize, GraphError> {
        let deg = self.right_degrees();
        let Some(&first_degree) = deg.first() else { return Ok(0) };
        match deg.iter().position(|&d| d != first_degree) {
            None => Ok(first_degree),
            Some(i) => Err(GraphError::NonConstantRightDegree {
                first: self.right[0].clone(),
                first_degree,
                other: self.right[i].clone(),
                other_degree: deg[i],
            }),
        }
    }

    pub fn strong_coloring_report(&self) -> StrongColoringReport {
        self.strong_coloring_report_with(Execution::default())
    }

    pub fn strong_coloring_report_with(&self, exec: Execution) -> StrongColoringReport {
        let offset = self.left.len() as u32;
        let unified: Vec<(u32, u32, u32)> = self.edges.iter().map(|&(l, r, c)| (l, offset + r, c)).collect();
        let vertex = |v: u32| {
            if v < offset {
                self.left[v as usize].clone()
            } else {
                self.right[(v - offset) as usize].clone()
            }
        };
        let edge = |i: usize| (vertex(unified[i].0), vertex(unified[i].1));
        let violations = strong::scan(&unified, self.colors.len(), exec)
            .into_iter()
            .map(|raw| StrongViolation {
                color: self.colors[raw.color as usize].clone(),
                first: edge(raw.first),
                second: edge(raw.second),
                kind: match raw.kind {
                    RawKind::Shared(v) => StrongViolationKind::SharedVertex(vertex(v)),
                    RawKind::Joined(a, b) => StrongViolationKind::JoinedBy(vertex(a), vertex(b)),
                },
            })
            .collect();
        StrongColoringReport { violations }
    }

    pub fn is_strong_coloring(&self) -> bool {
        self.strong_coloring_report().is_strong()
    }

    /// The PDA of this coloring: non-edges become stars. Requires constant
    /// right degree and a strong coloring.
    pub fn to_pda(&self) -> Result<PdaArray, GraphError> {
        self.constant_right_degree()?;
        if let Some(v) = self.strong_coloring_report().violations.into_iter().next() {
            return Err(GraphError::NotStrong(Box::new(v)));
        }
        Ok(self.to_array_unchecked())
    }

    /// Grid of this coloring without checking any PDA condition.
    pub fn to_array_unchecked(&self) -> PdaArray {
        let k = self.right.len();
        let mut cells = vec![PdaEntry::Star; self.left.len() * k];
        for &(l, r, c) in &self.edges {
            cells[l as usize * k + r as usize] = PdaEntry::Color(c + 1);
        }
        PdaArray::from_cells(self.left.len(), k, cells).expect("colors are dense by construction")
    }

    pub fn legend(&self) -> ColorLegend {
        ColorLegend { labels: self.colors.clone() }
    }

    /// Keeps the right-hand vertices accepted by `keep` and drops colors
    /// that no longer label an edge. The left side is unchanged.
    pub fn restrict_right(&self, keep: impl Fn(&Label) -> bool) -> ColoredBipartiteGraph {
        let mut new_index = vec![u32::MAX; self.right.len()];
        let mut right = Vec::new();
        for (i, r) in self.right.iter().enumerate() {
            if keep(r) {
                new_index[i] = right.len() as u32;
                right.push(r.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(_, r, _)| new_index[r as usize] != u32::MAX)
            .map(|&(l, r, c)| (l as usize, new_index[r as usize] as usize, self.colors[c as usize].clone()))
            .collect();
        Self::from_labeled_edges(self.left.clone(), right, edges).expect("restriction keeps labels distinct")
    }

    /// The same coloring as a general graph; vertices become `(L,x)` and
    /// `(R,y)`.
    pub fn to_general(&self) -> ColoredGraph {
        let side = |tag: &str, l: &Label| Label::pair(Label::name(tag), l.clone());
        let mut vertices: Vec<Label> = self.left.iter().map(|l| side("L", l)).collect();
        vertices.extend(self.right.iter().map(|r| side("R", r)));
        let offset = self.left.len();
        let edges = self
            .edges
            .iter()
            .map(|&(l, r, c)| (l as usize, offset + r as usize, self.colors[c as usize].clone()))
            .collect();
        ColoredGraph::from_labeled_edges(vertices, edges).expect("bipartite graph has no loops or duplicates")
    }
}

impl From<PdaArray> for ColoredBipartiteGraph {
    fn from(p: PdaArray) -> Self {
        Self::from_pda(&p)
    }
}

impl From<&PdaArray> for ColoredBipartiteGraph {
    fn from(p: &PdaArray) -> Self {
        Self::from_pda(p)
    }
}

/// Rows become left vertices, columns right vertices, colored cells edges.
pub fn pda_to_coloring(p: &PdaArray) -> ColoredBipartiteGraph {
    ColoredBipartiteGraph::from_pda(p)
}

/// Inverse of [`pda_to_coloring`]; see [`ColoredBipartiteGraph::to_pda`].
pub fn coloring_to_pda(g: &ColoredBipartiteGraph) -> Result<PdaArray, GraphError> {
    g.to_pda()
}

/// Dense PDA color `i + 1` stands for `labels[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorLegend {
    labels: Vec<Label>,
}

impl ColorLegend {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, color: u32) -> Option<&Label> {
        self.labels.get((color as usize).checked_sub(1)?)
    }

    pub fn color_of(&self, label: &Label) -> Option<u32> {
        self.labels.binary_search(label).ok().map(|i| i as u32 + 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Label)> + '_ {
        self.labels.iter().enumerate().map(|(i, l)| (i as u32 + 1, l))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pda::fixtures::four_by_four;

    fn ints(v: &[u64]) -> Vec<Label> {
        v.iter().copied().map(Label::Int).collect()
    }

    fn primed(v: &[u64]) -> Vec<Label> {
        v.iter().map(|&i| Label::Int(i).primed()).collect()
    }

    #[test]
    fn shared_color_example_is_strong() {
        let t = |l: u64, r: u64, c: u64| (Label::Int(l), Label::Int(r).primed(), Label::Int(c));
        let g = ColoredBipartiteGraph::from_triples(
            ints(&[1, 2]),
            primed(&[1, 2, 3, 4]),
            [t(1, 2, 1), t(1, 4, 2), t(2, 1, 1), t(2, 3, 2)],
        )
        .unwrap();
        assert!(g.is_strong_coloring());
        assert_eq!(g.to_pda().unwrap(), PdaArray::from_grid_str("* 1 * 2\n1 * 2 *").unwrap());
    }

    #[test]
    fn four_by_four_round_trip() {
        let p = four_by_four();
        let g = pda_to_coloring(&p);
        assert_eq!(g.edge_count(), 8);
        assert!(g.is_strong_coloring());
        assert_eq!(coloring_to_pda(&g).unwrap(), p);
    }

    #[test]
    fn complete_bipartite_needs_distinct_colors() {
        let g = ColoredBipartiteGraph::from_labeled_edges(
            ints(&[1]),
            ints(&[1, 2, 3]),
            (0..3).map(|r| (0, r, Label::Int(r as u64 + 1))).collect(),
        )
        .unwrap();
        let p = g.to_pda().unwrap();
        assert_eq!(p, PdaArray::from_grid_str("1 2 3").unwrap());
        assert_eq!(p.params().unwrap().z, 0);
    }

    #[test]
    fn uneven_right_degree_is_rejected() {
        let g = ColoredBipartiteGraph::from_triples(
            ints(&[1, 2]),
            vec![Label::name("a"), Label::name("b")],
            [
                (Label::Int(1), Label::name("a"), Label::Int(1)),
                (Label::Int(1), Label::name("b"), Label::Int(2)),
                (Label::Int(2), Label::name("b"), Label::Int(3)),
            ],
        )
        .unwrap();
        assert!(g.is_strong_coloring());
        assert_eq!(
            g.to_pda(),
            Err(GraphError::NonConstantRightDegree {
                first: Label::name("a"),
                first_degree: 1,
                other: Label::name("b"),
                other_degree: 2
            })
        );
    }

    #[test]
    fn non_strong_is_rejected() {
        let g = pda_to_coloring(&PdaArray::from_grid_str("1 2\n2 1").unwrap());
        assert!(matches!(g.to_pda(), Err(GraphError::NotStrong(_))));
        let report = g.strong_coloring_report();
        assert_eq!(report.joined_count(), 2);
        assert_eq!(report.shared_vertex_count(), 0);
    }

    #[test]
    fn structural_errors() {
        let dup = ColoredBipartiteGraph::from_labeled_edges(
            ints(&[1]),
            ints(&[1]),
            vec![(0, 0, Label::Int(1)), (0, 0, Label::Int(2))],
        );
        assert!(matches!(dup, Err(GraphError::DuplicateEdge(..))));
        let unused = ColoredBipartiteGraph::with_declared_colors(
            ints(&[1]),
            ints(&[1]),
            &ints(&[1, 2]),
            vec![(0, 0, Label::Int(1))],
        );
        assert_eq!(unused, Err(GraphError::UnusedColor(Label::Int(2))));
        assert!(matches!(
            ColoredBipartiteGraph::from_labeled_edges(ints(&[1, 1]), ints(&[1]), vec![]),
            Err(GraphError::DuplicateVertex(_))
        ));
    }

    #[test]
    fn restriction_drops_orphaned_colors() {
        let g = pda_to_coloring(&four_by_four());
        let r = g.restrict_right(|l| *l != Label::Int(1));
        assert_eq!(r.right().len(), 3);
        assert_eq!(r.colors().len(), 4);
        let r = g.restrict_right(|l| *l == Label::Int(2));
        assert_eq!(r.colors(), &ints(&[1, 2]));
        assert_eq!(r.to_pda().unwrap(), PdaArray::from_grid_str("1\n*\n2\n*").unwrap());
    }

    #[test]
    fn legend_is_a_bijection() {
        let g = pda_to_coloring(&four_by_four());
        let legend = g.legend();
        for (color, label) in legend.iter() {
            assert_eq!(legend.color_of(label), Some(color));
        }
        assert_eq!(legend.label(0), None);
        assert_eq!(legend.label(5), None);
    }
}
