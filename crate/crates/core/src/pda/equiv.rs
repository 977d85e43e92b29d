//! Equivalence of PDAs up to row permutation, column permutation and color
//! renaming.
//!
//! Backtracking search in two phases. Rows of the first array are mapped in
//! order, pruned by comparing the multisets of partial column star patterns
//! and of the rows each color occupies. With every row fixed, columns are
//! matched one by one while the color bijection is extended; a column's
//! star pattern then pins it to a small class of candidates.

use super::{PdaArray, PdaEntry};

pub const DEFAULT_EQUIVALENCE_BUDGET: u64 = 1_000_000;

/// Maps of the first array onto the second: `row_map[i]` is the image of
/// row `i`, `color_map[s - 1]` the image of color `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub row_map: Vec<usize>,
    pub col_map: Vec<usize>,
    pub color_map: Vec<u32>,
}

impl EquivalenceWitness {
    /// Applies the maps to `p`.
    pub fn apply(&self, p: &PdaArray) -> PdaArray {
        let mut cells = vec![PdaEntry::Star; p.rows() * p.cols()];
        for (r, c, e) in p.entries() {
            let image = match e {
                PdaEntry::Star => PdaEntry::Star,
                PdaEntry::Color(s) => PdaEntry::Color(self.color_map[s as usize - 1]),
            };
            cells[self.row_map[r] * p.cols() + self.col_map[c]] = image;
        }
        PdaArray::from_cells(p.rows(), p.cols(), cells).expect("a bijection keeps colors dense")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent(EquivalenceWitness),
    Inequivalent,
    BudgetExhausted,
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Equivalence::Equivalent(_) => "equivalent",
            Equivalence::Inequivalent => "inequivalent",
            Equivalence::BudgetExhausted => "budget_exhausted",
        }
    }
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort_unstable();
    v
}

fn class_sizes(p: &PdaArray) -> Vec<usize> {
    let mut sizes = vec![0usize; p.color_count() as usize];
    for c in p.cells().iter().filter_map(|e| e.color()) {
        sizes[c as usize - 1] += 1;
    }
    sorted(sizes)
}

/// Decides whether `a` and `b` are the same array up to relabeling.
pub fn equivalent(a: &PdaArray, b: &PdaArray, budget: u64) -> Equivalence {
    if a.rows() != b.rows() || a.cols() != b.cols() || a.color_count() != b.color_count() {
        return Equivalence::Inequivalent;
    }
    let row_stars = |p: &PdaArray| (0..p.rows()).map(|r| p.stars_in_row(r)).collect::<Vec<_>>();
    let col_stars = |p: &PdaArray| (0..p.cols()).map(|c| p.stars_in_column(c)).collect::<Vec<_>>();
    let (ra, rb) = (row_stars(a), row_stars(b));
    let (ca, cb) = (col_stars(a), col_stars(b));
    if sorted(ra.clone()) != sorted(rb.clone())
        || sorted(ca.clone()) != sorted(cb.clone())
        || class_sizes(a) != class_sizes(b)
    {
        return Equivalence::Inequivalent;
    }

    let s = a.color_count() as usize;
    let mut search = Search {
        a,
        b,
        row_stars: (ra, rb),
        col_stars: (ca, cb),
        row_map: vec![usize::MAX; a.rows()],
        row_used: vec![false; a.rows()],
        col_map: vec![usize::MAX; a.cols()],
        col_used: vec![false; a.cols()],
        color_fwd: vec![0; s + 1],
        color_bwd: vec![0; s + 1],
        trail: Vec::new(),
        nodes: 0,
        budget,
    };
    match search.place_row(0) {
        Err(Exhausted) => Equivalence::BudgetExhausted,
        Ok(false) => Equivalence::Inequivalent,
        Ok(true) => Equivalence::Equivalent(EquivalenceWitness {
            row_map: search.row_map,
            col_map: search.col_map,
            color_map: search.color_fwd[1..].to_vec(),
        }),
    }
}

struct Exhausted;

struct Search<'a> {
    a: &'a PdaArray,
    b: &'a PdaArray,
    row_stars: (Vec<usize>, Vec<usize>),
    col_stars: (Vec<usize>, Vec<usize>),
    row_map: Vec<usize>,
    row_used: Vec<bool>,
    col_map: Vec<usize>,
    col_used: Vec<bool>,
    color_fwd: Vec<u32>,
    color_bwd: Vec<u32>,
    trail: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), Exhausted> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    fn undo_colors(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let c = self.trail.pop().unwrap() as usize;
            let image = self.color_fwd[c] as usize;
            self.color_fwd[c] = 0;
            self.color_bwd[image] = 0;
        }
    }

    /// Checks one cell pair, extending the color bijection if needed.
    fn compatible(&mut self, x: PdaEntry, y: PdaEntry) -> bool {
        match (x, y) {
            (PdaEntry::Star, PdaEntry::Star) => true,
            (PdaEntry::Color(p), PdaEntry::Color(q)) => {
                let (pi, qi) = (p as usize, q as usize);
                match (self.color_fwd[pi], self.color_bwd[qi]) {
                    (0, 0) => {
                        self.color_fwd[pi] = q;
                        self.color_bwd[qi] = p;
                        self.trail.push(p);
                        true
                    }
                    (image, _) => image == q,
                }
            }
            _ => false,
        }
    }

    /// Maps column `c` to `cc`, checking every already mapped row.
    fn try_column(&mut self, c: usize, cc: usize) -> bool {
        if self.col_used[cc] || self.col_stars.0[c] != self.col_stars.1[cc] {
            return false;
        }
        for r in 0..self.a.rows() {
            let rr = self.row_map[r];
            if rr != usize::MAX && !self.compatible(self.a.get(r, c), self.b.get(rr, cc)) {
                return false;
            }
        }
        self.col_map[c] = cc;
        self.col_used[cc] = true;
        true
    }

    fn release_column(&mut self, c: usize) {
        self.col_used[self.col_map[c]] = false;
        self.col_map[c] = usize::MAX;
    }

    /// Column star patterns and color row sets over rows `0..depth`, as
    /// multisets, must agree between the two arrays under the row map.
    fn prefix_signatures_match(&self, depth: usize) -> bool {
        let (a, b) = (self.a, self.b);
        let image = |i: usize| self.row_map[i];
        let col_keys = |p: &PdaArray, row: &dyn Fn(usize) -> usize| {
            sorted((0..p.cols()).map(|c| (0..depth).map(|i| p.get(row(i), c).is_star()).collect::<Vec<_>>()).collect())
        };
        let color_keys = |p: &PdaArray, row: &dyn Fn(usize) -> usize| {
            let mut rows_of = vec![Vec::new(); p.color_count() as usize];
            for i in 0..depth {
                for e in p.row(row(i)) {
                    if let PdaEntry::Color(s) = e {
                        rows_of[*s as usize - 1].push(i);
                    }
                }
            }
            sorted(rows_of)
        };
        col_keys(a, &|i| i) == col_keys(b, &image) && color_keys(a, &|i| i) == color_keys(b, &image)
    }

    /// Maps rows in order, then columns once every row is fixed.
    fn place_row(&mut self, r: usize) -> Result<bool, Exhausted> {
        if r == self.a.rows() {
            return self.place_column(0);
        }
        for rr in 0..self.b.rows() {
            if self.row_used[rr] || self.row_stars.0[r] != self.row_stars.1[rr] {
                continue;
            }
            self.tick()?;
            self.row_map[r] = rr;
            self.row_used[rr] = true;
            if self.prefix_signatures_match(r + 1) && self.place_row(r + 1)? {
                return Ok(true);
            }
            self.row_map[r] = usize::MAX;
            self.row_used[rr] = false;
        }
        Ok(false)
    }

    fn place_column(&mut self, c: usize) -> Result<bool, Exhausted> {
        if c == self.a.cols() {
            return Ok(true);
        }
        for cc in 0..self.b.cols() {
            let mark = self.trail.len();
            if self.try_column(c, cc) {
                self.tick()?;
                if self.place_column(c + 1)? {
                    return Ok(true);
                }
                self.release_column(c);
            }
            self.undo_colors(mark);
        }
        Ok(false)
    }
}
