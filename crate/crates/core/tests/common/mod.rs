//! A deliberately naive validator used as an oracle: it compares every pair
//! of cells and shares no code with the library's scanner.

#![allow(dead_code)]

use pdakit::PdaArray;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub stars_constant: bool,
    /// Equal colors sharing a row or a column, counted per pair of cells.
    pub b_pairs: usize,
    /// Equal colors in distinct rows and columns with a colored corner.
    pub c_pairs: usize,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.stars_constant && self.b_pairs == 0 && self.c_pairs == 0
    }
}

pub fn grid(p: &PdaArray) -> Vec<Vec<Option<u32>>> {
    (0..p.rows()).map(|r| (0..p.cols()).map(|c| p.get(r, c).color()).collect()).collect()
}

pub fn naive_verdict(p: &PdaArray) -> Verdict {
    let g = grid(p);
    let (rows, cols) = (p.rows(), p.cols());
    let stars = |c: usize| (0..rows).filter(|&r| g[r][c].is_none()).count();
    let stars_constant = (0..cols).all(|c| stars(c) == stars(0));
    let cells: Vec<(usize, usize, u32)> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .filter_map(|(r, c)| g[r][c].map(|s| (r, c, s)))
        .collect();
    let (mut b_pairs, mut c_pairs) = (0, 0);
    for (i, &(r1, c1, s1)) in cells.iter().enumerate() {
        for &(r2, c2, s2) in &cells[i + 1..] {
            if s1 != s2 {
                continue;
            }
            if r1 == r2 || c1 == c2 {
                b_pairs += 1;
            } else if g[r1][c2].is_some() || g[r2][c1].is_some() {
                c_pairs += 1;
            }
        }
    }
    Verdict { stars_constant, b_pairs, c_pairs }
}

/// `(K, F, Z, S)` read straight off the grid, assuming condition A.
pub fn naive_params(p: &PdaArray) -> (usize, usize, usize, usize) {
    let g = grid(p);
    let z = g.iter().filter(|row| row[0].is_none()).count();
    let s = g.iter().flatten().flatten().collect::<std::collections::BTreeSet<_>>().len();
    (p.cols(), p.rows(), z, s)
}
