use std::fmt;

use super::{PdaArray, PdaEntry};
use crate::Execution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Constant number of stars per column.
    A,
    /// No color twice in a row or column.
    B,
    /// Equal colors sit in a star-cornered 2x2 submatrix.
    C,
}

/// One failed condition with its witness cells. Coordinates are 0-based
/// `(row, col)`; `Display` prints them 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    StarCount { column: usize, stars: usize, reference_column: usize, reference_stars: usize },
    RepeatedInRow { row: usize, columns: (usize, usize), color: u32 },
    RepeatedInColumn { column: usize, rows: (usize, usize), color: u32 },
    NotStarCornered { first: (usize, usize), second: (usize, usize), color: u32 },
}

impl Violation {
    pub fn condition(&self) -> Condition {
        match self {
            Violation::StarCount { .. } => Condition::A,
            Violation::RepeatedInRow { .. } | Violation::RepeatedInColumn { .. } => Condition::B,
            Violation::NotStarCornered { .. } => Condition::C,
        }
    }

    pub fn cells(&self) -> Vec<(usize, usize)> {
        match *self {
            Violation::StarCount { column, reference_column, .. } => vec![(0, reference_column), (0, column)],
            Violation::RepeatedInRow { row, columns: (a, b), .. } => vec![(row, a), (row, b)],
            Violation::RepeatedInColumn { column, rows: (a, b), .. } => vec![(a, column), (b, column)],
            Violation::NotStarCornered { first, second, .. } => vec![first, second],
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::StarCount { column, stars, reference_column, reference_stars } => write!(
                f,
                "condition A: column {} has {stars} stars but column {} has {reference_stars}",
                column + 1,
                reference_column + 1
            ),
            Violation::RepeatedInRow { row, columns: (a, b), color } => {
                write!(f, "condition B: color {color} twice in row {} (columns {} and {})", row + 1, a + 1, b + 1)
            }
            Violation::RepeatedInColumn { column, rows: (a, b), color } => {
                write!(f, "condition B: color {color} twice in column {} (rows {} and {})", column + 1, a + 1, b + 1)
            }
            Violation::NotStarCornered { first: (r1, c1), second: (r2, c2), color } => write!(
                f,
                "condition C: color {color} at ({},{}) and ({},{}) without stars at ({},{}) and ({},{})",
                r1 + 1,
                c1 + 1,
                r2 + 1,
                c2 + 1,
                r1 + 1,
                c2 + 1,
                r2 + 1,
                c1 + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, condition: Condition) -> bool {
        self.violations.iter().any(|v| v.condition() == condition)
    }

    pub fn count(&self, condition: Condition) -> usize {
        self.violations.iter().filter(|v| v.condition() == condition).count()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        write!(f, "invalid ({} violations)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

pub(super) fn validate(p: &PdaArray, exec: Execution) -> ValidationReport {
    let mut violations = Vec::new();

    let reference_stars = p.stars_in_column(0);
    for column in 1..p.cols() {
        let stars = p.stars_in_column(column);
        if stars != reference_stars {
            violations.push(Violation::StarCount { column, stars, reference_column: 0, reference_stars });
        }
    }

    let mut classes: Vec<Vec<(usize, usize)>> = vec![Vec::new(); p.color_count() as usize];
    for (r, c, e) in p.entries() {
        if let PdaEntry::Color(s) = e {
            classes[s as usize - 1].push((r, c));
        }
    }
    // Every pair of equal entries: same row/column is (B), otherwise (C).
    let per_color = exec.map_range(classes.len(), |i| {
        let color = i as u32 + 1;
        let cells = &classes[i];
        let mut found = Vec::new();
        for (a, &(r1, c1)) in cells.iter().enumerate() {
            for &(r2, c2) in &cells[a + 1..] {
                if r1 == r2 {
                    found.push(Violation::RepeatedInRow { row: r1, columns: (c1, c2), color });
                } else if c1 == c2 {
                    found.push(Violation::RepeatedInColumn { column: c1, rows: (r1, r2), color });
                } else if !(p.get(r1, c2).is_star() && p.get(r2, c1).is_star()) {
                    found.push(Violation::NotStarCornered { first: (r1, c1), second: (r2, c2), color });
                }
            }
        }
        found
    });
    violations.extend(per_color.into_iter().flatten());
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pda::fixtures::four_by_four;

    #[test]
    fn four_by_four_is_valid() {
        assert!(four_by_four().validate().is_valid());
    }

    #[test]
    fn repeated_integer_in_row() {
        let p = PdaArray::from_grid_str("1 1").unwrap();
        let report = p.validate();
        assert_eq!(report.violations, vec![Violation::RepeatedInRow { row: 0, columns: (0, 1), color: 1 }]);
        assert_eq!(report.violations[0].to_string(), "condition B: color 1 twice in row 1 (columns 1 and 2)");
    }

    #[test]
    fn missing_star_corner() {
        let p = PdaArray::from_grid_str("1 2\n2 1").unwrap();
        let report = p.validate();
        assert!(!report.is_valid());
        assert!(!report.violates(Condition::A));
        assert!(!report.violates(Condition::B));
        assert_eq!(report.violations[0], Violation::NotStarCornered { first: (0, 0), second: (1, 1), color: 1 });
        assert_eq!(report.violations[0].cells(), vec![(0, 0), (1, 1)]);
        assert_eq!(report.count(Condition::C), 2);
    }

    #[test]
    fn uneven_star_counts() {
        let p = PdaArray::from_grid_str("* 1\n* *").unwrap();
        let report = p.validate();
        assert_eq!(report.count(Condition::A), 1);
        assert!(matches!(report.violations[0], Violation::StarCount { column: 1, stars: 1, reference_stars: 2, .. }));
    }

    #[test]
    fn execution_modes_agree() {
        let p = PdaArray::from_grid_str("1 2 3\n2 1 *\n3 * 1").unwrap();
        assert_eq!(p.validate_with(Execution::Sequential), p.validate_with(Execution::Parallel));
    }
}
