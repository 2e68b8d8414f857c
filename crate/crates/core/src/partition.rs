//! Strict partitions and the shifted Ferrers diagrams they describe.
//!
//! A strict partition `λ1 > λ2 > … > λm ≥ 1` is drawn as a shifted diagram
//! whose row `i` (1-based) occupies columns `i ..= i + λi - 1`. The box in
//! row `i`, column `j` stands for the quadratic monomial `x_i x_j`, and strict
//! decrease of the parts is exactly strong stability of that monomial set.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A box of a shifted diagram, `row <= col`, standing for `x_row * x_col`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Result<Self> {
        if row == 0 || row > col {
            return Err(Error::validation(format!(
                "cell ({row},{col}) must satisfy 1 <= row <= col"
            )));
        }
        Ok(Cell { row, col })
    }

    pub fn is_diagonal(self) -> bool {
        self.row == self.col
    }
}

/// Strictly decreasing positive parts; canonical form carries no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct StrictPartition {
    parts: Vec<u32>,
}

impl StrictPartition {
    /// Validates row lengths listed top row first.
    pub fn from_rows(rows: &[u32]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::validation("partition must have at least one part"));
        }
        for (idx, &part) in rows.iter().enumerate() {
            if part == 0 {
                return Err(Error::validation(format!(
                    "part at index {idx} is {part}; parts must be positive"
                )));
            }
            if idx > 0 && rows[idx - 1] <= part {
                return Err(Error::validation(format!(
                    "part at index {idx} ({part}) is not smaller than the previous part ({})",
                    rows[idx - 1]
                )));
            }
        }
        Ok(StrictPartition {
            parts: rows.to_vec(),
        })
    }

    /// Builds from parts already known to be strictly decreasing and positive.
    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(Self::from_rows(&parts).is_ok(), "bad parts {parts:?}");
        StrictPartition { parts }
    }

    /// The full diagram `(n, n-1, …, 1)` holding every quadratic monomial in `n` variables.
    pub fn staircase(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("staircase needs n >= 1"));
        }
        Ok(StrictPartition {
            parts: (1..=n).rev().collect(),
        })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of columns, which is the largest part.
    pub fn n(&self) -> u32 {
        self.parts[0]
    }

    /// Number of boxes.
    pub fn u(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Number of nonempty rows.
    pub fn rows(&self) -> u32 {
        self.parts.len() as u32
    }

    /// Length of 1-based `row`, zero past the last row.
    pub fn row_len(&self, row: u32) -> u32 {
        row.checked_sub(1)
            .and_then(|i| self.parts.get(i as usize))
            .copied()
            .unwrap_or(0)
    }

    /// Last column occupied by 1-based `row`, if the row exists.
    pub fn row_end(&self, row: u32) -> Option<u32> {
        match self.row_len(row) {
            0 => None,
            len => Some(row + len - 1),
        }
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row <= cell.col
            && self
                .row_end(cell.row)
                .is_some_and(|end| cell.col >= cell.row && cell.col <= end)
    }

    /// All boxes, row by row, left to right.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &len)| {
            let row = i as u32 + 1;
            (row..row + len).map(move |col| Cell { row, col })
        })
    }

    /// Heights of columns `1..=n`; entry `j - 1` is the number of boxes in column `j`.
    /// Rows covering a column always form a prefix `1..=height`.
    pub fn column_heights(&self) -> Vec<u32> {
        let n = self.n() as usize;
        let mut heights = vec![0u32; n];
        for (i, &len) in self.parts.iter().enumerate() {
            for h in &mut heights[i..i + len as usize] {
                *h += 1;
            }
        }
        heights
    }

    /// Corner boxes: the strongly stable generators of the monomial set.
    pub fn generators(&self) -> Vec<Cell> {
        let m = self.parts.len();
        (0..m)
            .filter(|&i| i + 1 == m || self.parts[i] - self.parts[i + 1] >= 2)
            .map(|i| {
                let row = i as u32 + 1;
                Cell {
                    row,
                    col: row + self.parts[i] - 1,
                }
            })
            .collect()
    }
}

impl TryFrom<Vec<u32>> for StrictPartition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        StrictPartition::from_rows(&parts)
    }
}

impl From<StrictPartition> for Vec<u32> {
    fn from(p: StrictPartition) -> Self {
        p.parts
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

impl FromStr for StrictPartition {
    type Err = Error;

    /// Parses the comma-separated text form, e.g. `"12,11,10,9,8,7,6,5,3"`.
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split(',')
            .enumerate()
            .map(|(idx, tok)| {
                tok.trim().parse::<u32>().map_err(|_| {
                    Error::validation(format!(
                        "part at index {idx} ({:?}) is not a nonnegative integer",
                        tok.trim()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        StrictPartition::from_rows(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex71_rows() {
        let p = StrictPartition::from_rows(&[12, 11, 10, 9, 8, 7, 6, 5, 3]).unwrap();
        assert_eq!(p.n(), 12);
        assert_eq!(p.u(), 71);
    }

    #[test]
    fn trivial_shapes() {
        let one = StrictPartition::from_rows(&[1]).unwrap();
        assert_eq!((one.n(), one.u()), (1, 1));
        let full = StrictPartition::from_rows(&[3, 2, 1]).unwrap();
        assert_eq!((full.n(), full.u()), (3, 6));
        assert_eq!(full, StrictPartition::staircase(3).unwrap());
    }

    #[test]
    fn rejects_bad_rows_naming_the_index() {
        let err = StrictPartition::from_rows(&[5, 3, 3]).unwrap_err();
        assert!(err.to_string().contains("index 2"), "{err}");
        let err = StrictPartition::from_rows(&[4, 0]).unwrap_err();
        assert!(err.to_string().contains("index 1"), "{err}");
        let err = StrictPartition::from_rows(&[2, 5]).unwrap_err();
        assert!(err.to_string().contains("index 1"), "{err}");
        assert!(StrictPartition::from_rows(&[]).is_err());
        assert!("3,x".parse::<StrictPartition>().is_err());
        assert!("3,-1".parse::<StrictPartition>().is_err());
    }

    #[test]
    fn text_form() {
        let p: StrictPartition = " 12,11,10,9,8,7,6,5,3".parse().unwrap();
        assert_eq!(p.to_string(), "12,11,10,9,8,7,6,5,3");
    }

    #[test]
    fn figure_one_generators() {
        // st(x2x6, x3x4)
        let p = StrictPartition::from_rows(&[6, 5, 2]).unwrap();
        assert_eq!(
            p.generators(),
            vec![Cell { row: 2, col: 6 }, Cell { row: 3, col: 4 }]
        );
        assert_eq!(p.column_heights(), vec![1, 2, 3, 3, 2, 2]);
        assert!(p.contains(Cell { row: 3, col: 4 }));
        assert!(!p.contains(Cell { row: 3, col: 5 }));
        assert_eq!(p.cells().count(), 13);
    }

    #[test]
    fn serde_validates() {
        let p: StrictPartition = serde_json::from_str("[4,2,1]").unwrap();
        assert_eq!(p.u(), 7);
        assert!(serde_json::from_str::<StrictPartition>("[4,4]").is_err());
        assert_eq!(serde_json::to_string(&p).unwrap(), "[4,2,1]");
    }
}
