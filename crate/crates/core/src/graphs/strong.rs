use std::collections::HashSet;
use std::fmt;

use super::Label;
use crate::Execution;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrongViolationKind {
    /// The two edges share this endpoint.
    SharedVertex(Label),
    /// An edge joins an endpoint of one to an endpoint of the other.
    JoinedBy(Label, Label),
}

/// Two edges of the same color at distance at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongViolation {
    pub color: Label,
    pub first: (Label, Label),
    pub second: (Label, Label),
    pub kind: StrongViolationKind,
}

impl fmt::Display for StrongViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "edges {}--{} and {}--{} both have color {} ",
            self.first.0, self.first.1, self.second.0, self.second.1, self.color
        )?;
        match &self.kind {
            StrongViolationKind::SharedVertex(v) => write!(f, "and share vertex {v}"),
            StrongViolationKind::JoinedBy(a, b) => write!(f, "and are joined by edge {a}--{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StrongColoringReport {
    pub violations: Vec<StrongViolation>,
}

impl StrongColoringReport {
    pub fn is_strong(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn shared_vertex_count(&self) -> usize {
        self.violations.iter().filter(|v| matches!(v.kind, StrongViolationKind::SharedVertex(_))).count()
    }

    pub fn joined_count(&self) -> usize {
        self.violations.iter().filter(|v| matches!(v.kind, StrongViolationKind::JoinedBy(..))).count()
    }
}

impl fmt::Display for StrongColoringReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_strong() {
            return f.write_str("strong");
        }
        write!(f, "not strong ({} violations)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

pub(super) enum RawKind {
    Shared(u32),
    Joined(u32, u32),
}

pub(super) struct RawViolation {
    pub color: u32,
    pub first: usize,
    pub second: usize,
    pub kind: RawKind,
}

fn key(a: u32, b: u32) -> u64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    (u64::from(lo) << 32) | u64::from(hi)
}

/// Brute force over every pair of same-colored edges. Vertices of the
/// edge list live in one index space; `(u, v, color)` per edge.
pub(super) fn scan(edges: &[(u32, u32, u32)], color_count: usize, exec: Execution) -> Vec<RawViolation> {
    let adjacent: HashSet<u64> = edges.iter().map(|&(u, v, _)| key(u, v)).collect();
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); color_count];
    for (i, &(_, _, c)) in edges.iter().enumerate() {
        classes[c as usize].push(i);
    }
    let found = exec.map(&classes, |class| {
        let mut out = Vec::new();
        for (n, &i) in class.iter().enumerate() {
            let (a1, b1, color) = edges[i];
            for &j in &class[n + 1..] {
                let (a2, b2, _) = edges[j];
                let shared = [a1, b1].into_iter().find(|x| *x == a2 || *x == b2);
                let kind = if let Some(v) = shared {
                    RawKind::Shared(v)
                } else if let Some((x, y)) =
                    [(a1, a2), (a1, b2), (b1, a2), (b1, b2)].into_iter().find(|&(x, y)| adjacent.contains(&key(x, y)))
                {
                    RawKind::Joined(x, y)
                } else {
                    continue;
                };
                out.push(RawViolation { color, first: i, second: j, kind });
            }
        }
        out
    });
    found.into_iter().flatten().collect()
}
