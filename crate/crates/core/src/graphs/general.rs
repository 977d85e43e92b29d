use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use super::bipartite::ColoredBipartiteGraph;
use super::strong::{self, RawKind, StrongColoringReport, StrongViolation, StrongViolationKind};
use super::{GraphError, Label};
use crate::Execution;

fn check_distinct(labels: &[Label]) -> Result<(), GraphError> {
    let mut seen = HashSet::with_capacity(labels.len());
    match labels.iter().find(|l| !seen.insert(*l)) {
        Some(l) => Err(GraphError::DuplicateVertex(l.clone())),
        None => Ok(()),
    }
}

fn undirected(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<Label>,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    pub fn new(vertices: Vec<Label>, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        check_distinct(&vertices)?;
        let mut seen = HashSet::new();
        let mut stored = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= vertices.len() || b >= vertices.len() {
                return Err(GraphError::UnknownVertex(Label::Int(a.max(b) as u64)));
            }
            if a == b {
                return Err(GraphError::SelfLoop(vertices[a].clone()));
            }
            if !seen.insert(undirected(a as u32, b as u32)) {
                return Err(GraphError::DuplicateEdge(vertices[a].clone(), vertices[b].clone()));
            }
            stored.push((a as u32, b as u32));
        }
        Ok(Self { vertices, edges: stored })
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    /// Edges in insertion order, endpoints as given.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = undirected(a as u32, b as u32);
        self.edges.iter().any(|&(x, y)| undirected(x, y) == key)
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b as usize);
            adj[b as usize].push(a as usize);
        }
        adj
    }

    /// A proper 2-coloring (`true` = first side), if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let adj = self.neighbors();
        let mut side: Vec<Option<bool>> = vec![None; self.vertices.len()];
        for start in 0..self.vertices.len() {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(true);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let s = side[v].unwrap();
                for &w in &adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!s);
                            queue.push_back(w);
                        }
                        Some(t) if t == s => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}

/// An edge-colored general graph. No self-loops, one color per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    graph: Graph,
    colors: Vec<Label>,
    edge_colors: Vec<u32>,
}

impl ColoredGraph {
    pub fn from_labeled_edges(vertices: Vec<Label>, edges: Vec<(usize, usize, Label)>) -> Result<Self, GraphError> {
        let mut ids: BTreeMap<Label, u32> = BTreeMap::new();
        for (_, _, c) in &edges {
            ids.entry(c.clone()).or_insert(0);
        }
        for (i, id) in ids.values_mut().enumerate() {
            *id = i as u32;
        }
        let edge_colors = edges.iter().map(|(_, _, c)| ids[c]).collect();
        let graph = Graph::new(vertices, edges.into_iter().map(|(a, b, _)| (a, b)).collect())?;
        Ok(Self { graph, colors: ids.into_keys().collect(), edge_colors })
    }

    pub fn from_triples(
        vertices: Vec<Label>,
        triples: impl IntoIterator<Item = (Label, Label, Label)>,
    ) -> Result<Self, GraphError> {
        let pos: HashMap<&Label, usize> = vertices.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut edges = Vec::new();
        for (a, b, c) in triples {
            let ai = *pos.get(&a).ok_or_else(|| GraphError::UnknownVertex(a.clone()))?;
            let bi = *pos.get(&b).ok_or_else(|| GraphError::UnknownVertex(b.clone()))?;
            edges.push((ai, bi, c));
        }
        Self::from_labeled_edges(vertices, edges)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertices(&self) -> &[Label] {
        self.graph.vertices()
    }

    pub fn colors(&self) -> &[Label] {
        &self.colors
    }

    /// `(a, b, color index)` in insertion order.
    pub fn colored_edges(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.graph.edges.iter().zip(&self.edge_colors).map(|(&(a, b), &c)| (a, b, c))
    }

    pub fn edge_count(&self) -> usize {
        self.edge_colors.len()
    }

    /// Color label of edge `{a, b}`.
    pub fn color_of(&self, a: usize, b: usize) -> Option<&Label> {
        let key = undirected(a as u32, b as u32);
        self.colored_edges().find(|&(x, y, _)| undirected(x, y) == key).map(|(_, _, c)| &self.colors[c as usize])
    }

    pub fn strong_coloring_report(&self) -> StrongColoringReport {
        self.strong_coloring_report_with(Execution::default())
    }

    pub fn strong_coloring_report_with(&self, exec: Execution) -> StrongColoringReport {
        let edges: Vec<(u32, u32, u32)> = self.colored_edges().collect();
        let v = |i: u32| self.graph.vertices[i as usize].clone();
        let edge = |i: usize| (v(edges[i].0), v(edges[i].1));
        let violations = strong::scan(&edges, self.colors.len(), exec)
            .into_iter()
            .map(|raw| StrongViolation {
                color: self.colors[raw.color as usize].clone(),
                first: edge(raw.first),
                second: edge(raw.second),
                kind: match raw.kind {
                    RawKind::Shared(x) => StrongViolationKind::SharedVertex(v(x)),
                    RawKind::Joined(a, b) => StrongViolationKind::JoinedBy(v(a), v(b)),
                },
            })
            .collect();
        StrongColoringReport { violations }
    }

    pub fn is_strong_coloring(&self) -> bool {
        self.strong_coloring_report().is_strong()
    }

    pub fn is_bipartite(&self) -> bool {
        self.graph.is_bipartite()
    }

    /// Splits into a bipartite coloring with the vertices accepted by
    /// `is_left` on the left. Every edge must cross the split.
    pub fn to_bipartite(&self, is_left: impl Fn(&Label) -> bool) -> Result<ColoredBipartiteGraph, GraphError> {
        let mut index = vec![(false, 0usize); self.vertices().len()];
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (i, l) in self.vertices().iter().enumerate() {
            if is_left(l) {
                index[i] = (true, left.len());
                left.push(l.clone());
            } else {
                index[i] = (false, right.len());
                right.push(l.clone());
            }
        }
        let mut edges = Vec::with_capacity(self.edge_count());
        for (a, b, c) in self.colored_edges() {
            let ((sa, ia), (sb, ib)) = (index[a as usize], index[b as usize]);
            let color = self.colors[c as usize].clone();
            match (sa, sb) {
                (true, false) => edges.push((ia, ib, color)),
                (false, true) => edges.push((ib, ia, color)),
                _ => {
                    return Err(GraphError::EdgeWithinSide(
                        self.vertices()[a as usize].clone(),
                        self.vertices()[b as usize].clone(),
                    ))
                }
            }
        }
        ColoredBipartiteGraph::from_labeled_edges(left, right, edges)
    }
}

/// A proper vertex coloring; `colors[v]` is the color of vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColoring {
    colors: Vec<Label>,
}

impl VertexColoring {
    pub fn new(host: &Graph, colors: Vec<Label>) -> Result<Self, GraphError> {
        if colors.len() != host.vertices().len() {
            return Err(GraphError::PartialVertexColoring { found: colors.len(), expected: host.vertices().len() });
        }
        if let Some(&(a, b)) = host.edges().iter().find(|&&(a, b)| colors[a as usize] == colors[b as usize]) {
            return Err(GraphError::ImproperVertexColoring(
                host.vertices()[a as usize].clone(),
                host.vertices()[b as usize].clone(),
                colors[a as usize].clone(),
            ));
        }
        Ok(Self { colors })
    }

    pub fn color(&self, v: usize) -> &Label {
        &self.colors[v]
    }

    pub fn color_set(&self) -> BTreeSet<Label> {
        self.colors.iter().cloned().collect()
    }
}

/// A choice of direction for every colored edge: arcs `(from, to, color)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    arcs: Vec<(u32, u32, Label)>,
}

impl Orientation {
    pub(crate) fn new(arcs: Vec<(u32, u32, Label)>) -> Self {
        Self { arcs }
    }

    pub fn arcs(&self) -> &[(u32, u32, Label)] {
        &self.arcs
    }

    pub fn color_of(&self, from: usize, to: usize) -> Option<&Label> {
        self.arcs.iter().find(|&&(a, b, _)| a as usize == from && b as usize == to).map(|(_, _, c)| c)
    }

    pub fn color_set(&self) -> BTreeSet<Label> {
        self.arcs.iter().map(|(_, _, c)| c.clone()).collect()
    }

    /// Undirected edges covered, normalized.
    pub fn support(&self) -> BTreeSet<(u32, u32)> {
        self.arcs.iter().map(|&(a, b, _)| undirected(a, b)).collect()
    }

    /// Directed pairs with arrows reversed.
    pub fn reversed_pairs(&self) -> BTreeSet<(u32, u32)> {
        self.arcs.iter().map(|&(a, b, _)| (b, a)).collect()
    }

    pub fn pairs(&self) -> BTreeSet<(u32, u32)> {
        self.arcs.iter().map(|&(a, b, _)| (a, b)).collect()
    }

    /// True when exactly one direction of every edge of `host` is present.
    pub fn orients(&self, host: &ColoredGraph) -> bool {
        let pairs = self.pairs();
        pairs.len() == self.arcs.len()
            && self.arcs.len() == host.edge_count()
            && host.colored_edges().all(|(a, b, _)| pairs.contains(&(a, b)) != pairs.contains(&(b, a)))
    }
}
