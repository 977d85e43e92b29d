//! The placement delivery array itself.
//!
//! A [`PdaArray`] is an immutable `F x K` grid of [`PdaEntry`] values whose
//! colors are always dense: every integer in `1..=S` occurs at least once.
//! Structural well-formedness is enforced at construction; conditions
//! (A)(B)(C) are checked separately by [`PdaArray::validate`] so that invalid
//! arrays can be represented, written out and diagnosed.

mod equiv;
mod format;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num::rational::Ratio;
use thiserror::Error;

pub use equiv::{equivalent, Equivalence, EquivalenceWitness, DEFAULT_EQUIVALENCE_BUDGET};
pub use format::{read_pda, write_pda, FormatError};
pub use validate::{Condition, ValidationReport, Violation};

/// One cell of a PDA: the cache marker `*` or a delivery color `>= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PdaEntry {
    Star,
    Color(u32),
}

impl PdaEntry {
    pub fn is_star(self) -> bool {
        matches!(self, PdaEntry::Star)
    }

    pub fn color(self) -> Option<u32> {
        match self {
            PdaEntry::Star => None,
            PdaEntry::Color(c) => Some(c),
        }
    }
}

impl fmt::Display for PdaEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdaEntry::Star => f.write_str("*"),
            PdaEntry::Color(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdaError {
    #[error("array must have at least one row and one column")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },
    #[error("color 0 at row {row}, column {col}; colors start at 1")]
    ZeroColor { row: usize, col: usize },
    #[error("color {missing} is absent although larger colors are present")]
    ColorGap { missing: u32 },
    #[error("array is not a PDA: {0}")]
    Invalid(ValidationReport),
}

/// An `F x K` array over `{*} ∪ {1..S}` with dense colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PdaArray {
    rows: usize,
    cols: usize,
    colors: u32,
    cells: Vec<PdaEntry>,
}

impl PdaArray {
    pub fn new(rows: Vec<Vec<PdaEntry>>) -> Result<Self, PdaError> {
        let f = rows.len();
        let k = rows.first().map_or(0, Vec::len);
        let mut cells = Vec::with_capacity(f * k);
        for (row, entries) in rows.into_iter().enumerate() {
            if entries.len() != k {
                return Err(PdaError::Ragged { row, found: entries.len(), expected: k });
            }
            cells.extend(entries);
        }
        Self::from_cells(f, k, cells)
    }

    /// Builds from a row-major cell vector of length `rows * cols`.
    pub fn from_cells(rows: usize, cols: usize, cells: Vec<PdaEntry>) -> Result<Self, PdaError> {
        if rows == 0 || cols == 0 {
            return Err(PdaError::Empty);
        }
        assert_eq!(cells.len(), rows * cols, "cell vector does not match shape");
        let mut max = 0u32;
        for (i, e) in cells.iter().enumerate() {
            if let PdaEntry::Color(c) = *e {
                if c == 0 {
                    return Err(PdaError::ZeroColor { row: i / cols, col: i % cols });
                }
                max = max.max(c);
            }
        }
        let mut seen = vec![false; max as usize + 1];
        for c in cells.iter().filter_map(|e| e.color()) {
            seen[c as usize] = true;
        }
        if let Some(missing) = (1..=max).find(|&c| !seen[c as usize]) {
            return Err(PdaError::ColorGap { missing });
        }
        Ok(Self { rows, cols, colors: max, cells })
    }

    /// Builds from arbitrary color keys; `None` is a star. Keys are
    /// numbered `1..=S` in row-major order of first appearance.
    pub fn from_keyed_cells<T: Eq + Hash>(rows: usize, cols: usize, keys: Vec<Option<T>>) -> Result<Self, PdaError> {
        let mut numbering: HashMap<T, u32> = HashMap::new();
        let cells = keys
            .into_iter()
            .map(|key| match key {
                None => PdaEntry::Star,
                Some(key) => {
                    let next = numbering.len() as u32 + 1;
                    PdaEntry::Color(*numbering.entry(key).or_insert(next))
                }
            })
            .collect();
        Self::from_cells(rows, cols, cells)
    }

    /// Whitespace-separated grid, one row per non-empty line (`*` or an
    /// integer per token). Handy for literals; the file format is
    /// [`read_pda`].
    pub fn from_grid_str(text: &str) -> Result<Self, PdaError> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| {
                line.split_whitespace()
                    .map(|tok| match tok {
                        "*" => PdaEntry::Star,
                        n => PdaEntry::Color(n.parse().expect("grid token must be `*` or an integer")),
                    })
                    .collect()
            })
            .collect();
        Self::new(rows)
    }

    /// Number of rows, `F`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns, `K`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of distinct colors, `S`.
    pub fn color_count(&self) -> u32 {
        self.colors
    }

    pub fn get(&self, row: usize, col: usize) -> PdaEntry {
        self.cells[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[PdaEntry] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn cells(&self) -> &[PdaEntry] {
        &self.cells
    }

    /// `(row, col, entry)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, PdaEntry)> + '_ {
        self.cells.iter().enumerate().map(move |(i, &e)| (i / self.cols, i % self.cols, e))
    }

    pub fn stars_in_column(&self, col: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, col).is_star()).count()
    }

    pub fn stars_in_row(&self, row: usize) -> usize {
        self.row(row).iter().filter(|e| e.is_star()).count()
    }

    /// Renumbers colors in row-major order of first appearance.
    pub fn relabel_first_appearance(&self) -> PdaArray {
        let keys = self.cells.iter().map(|e| e.color()).collect();
        Self::from_keyed_cells(self.rows, self.cols, keys).expect("relabeling preserves shape")
    }

    /// Checks conditions (A)(B)(C) by brute force.
    pub fn validate(&self) -> ValidationReport {
        validate::validate(self, crate::Execution::default())
    }

    pub fn validate_with(&self, exec: crate::Execution) -> ValidationReport {
        validate::validate(self, exec)
    }

    /// Measured `(K, F, Z, S)` of a valid PDA.
    pub fn params(&self) -> Result<ParamRecord, PdaError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(PdaError::Invalid(report));
        }
        Ok(ParamRecord::measure(self))
    }
}

impl fmt::Display for PdaArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// `(K, F, Z, S)` plus the derived gap `g = F - Z`, cache ratio `M/N = Z/F`
/// and rate `R = S/F`, all exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamRecord {
    pub k: usize,
    pub f: usize,
    pub z: usize,
    pub s: usize,
    pub g: usize,
    pub ratio: Ratio<u64>,
    pub rate: Ratio<u64>,
}

impl ParamRecord {
    /// Star count is taken from the first column; only meaningful once
    /// condition (A) holds.
    fn measure(p: &PdaArray) -> Self {
        let z = p.stars_in_column(0);
        let f = p.rows();
        let s = p.color_count() as usize;
        Self {
            k: p.cols(),
            f,
            z,
            s,
            g: f - z,
            ratio: Ratio::new(z as u64, f as u64),
            rate: Ratio::new(s as u64, f as u64),
        }
    }

    pub fn tuple(&self) -> (usize, usize, usize, usize) {
        (self.k, self.f, self.z, self.s)
    }
}

impl fmt::Display for ParamRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K={} F={} Z={} S={} g={} M/N={} R={}", self.k, self.f, self.z, self.s, self.g, self.ratio, self.rate)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::PdaArray;

    pub const FOUR_BY_FOUR: &str = "* 1 * 3\n1 * 3 *\n* 2 * 4\n2 * 4 *";

    pub fn four_by_four() -> PdaArray {
        PdaArray::from_grid_str(FOUR_BY_FOUR).unwrap()
    }
}
