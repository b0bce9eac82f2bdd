//! Semistandard Young tableaux and the per-tableau statistics used by the
//! statistic-side decoration rules.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{GLWeight, Shape};

/// A semistandard tableau with entries in `1..=rank+1`.
///
/// Rows are 1-based in the public API. Empty trailing rows are not stored;
/// the shape keeps all `rank+1` parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rank: usize,
    shape: Shape,
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    /// Validating constructor.
    pub fn new(rank: usize, mut rows: Vec<Vec<u32>>) -> Result<Self> {
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        let max = rank as u32 + 1;
        for &e in rows.iter().flatten() {
            if e < 1 || e > max {
                return Err(Error::Range { entry: e, max });
            }
        }
        let shape = Shape::new(rows.iter().map(Vec::len).collect(), rank)?;
        for (i, row) in rows.iter().enumerate() {
            if let Some((k, _)) = row.iter().tuple_windows().find_position(|(a, b)| a > b) {
                return Err(Error::Validation(format!(
                    "row {} decreases at column {}",
                    i + 1,
                    k + 2
                )));
            }
        }
        for (i, (upper, lower)) in rows.iter().tuple_windows().enumerate() {
            if let Some(c) = lower.iter().zip(upper).position(|(lo, up)| lo <= up) {
                return Err(Error::Validation(format!(
                    "column {} not strictly increasing between rows {} and {}",
                    c + 1,
                    i + 1,
                    i + 2
                )));
            }
        }
        Ok(Tableau { rank, shape, rows })
    }

    /// Constructor for callers that already guarantee semistandardness.
    pub(crate) fn from_parts_unchecked(rank: usize, shape: Shape, rows: Vec<Vec<u32>>) -> Self {
        debug_assert!(Tableau::new(rank, rows.clone()).is_ok());
        Tableau { rank, shape, rows }
    }

    /// Parses the one-line form `"1 1 2 / 2 3"`.
    pub fn parse(rank: usize, s: &str) -> Result<Self> {
        Tableau::new(rank, parse_rows(s)?)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Row `i` (1-based); empty beyond the stored rows.
    pub fn row(&self, i: usize) -> &[u32] {
        match i {
            0 => &[],
            _ => self.rows.get(i - 1).map_or(&[], Vec::as_slice),
        }
    }

    pub(crate) fn rows_mut(&mut self) -> &mut [Vec<u32>] {
        &mut self.rows
    }

    pub fn num_boxes(&self) -> usize {
        self.shape.size()
    }

    /// `content[k-1]` counts the entries equal to `k`.
    pub fn content(&self) -> GLWeight {
        let mut coords = vec![0i64; self.rank + 1];
        for &e in self.rows.iter().flatten() {
            coords[e as usize - 1] += 1;
        }
        GLWeight::new(coords).expect("rank >= 1")
    }

    /// `sum (entry - row index)`: the number of lowering steps from the
    /// highest-weight tableau of the same shape.
    pub fn depth(&self) -> usize {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().map(|&e| e as usize - (i + 1)).sum::<usize>())
            .sum()
    }

    fn count_in_row(&self, i: usize, pred: impl Fn(u32) -> bool) -> u64 {
        self.row(i).iter().filter(|&&e| pred(e)).count() as u64
    }

    /// `a_{i,j}`: number of `(j+1)`-boxes in rows `1..=i`.
    pub fn stats_a(&self) -> TriangularArray {
        TriangularArray::from_fn(self.rank, |i, j| {
            (1..=i)
                .map(|row| self.count_in_row(row, |e| e as usize == j + 1))
                .sum()
        })
    }

    /// `b_{i,j}`: number of boxes in row `i` with entry `>= j+1`.
    pub fn stats_b(&self) -> TriangularArray {
        TriangularArray::from_fn(self.rank, |i, j| self.count_in_row(i, |e| e as usize > j))
    }

    /// No row holds an entry larger than every entry of the next nonempty row.
    pub fn is_strict(&self) -> bool {
        self.rows
            .iter()
            .tuple_windows()
            .all(|(upper, lower)| upper.last() <= lower.last())
    }

    /// The first row pair `(i, i+1)` breaking strictness.
    pub fn strictness_violation(&self) -> Option<usize> {
        self.rows
            .iter()
            .tuple_windows()
            .position(|(upper, lower)| upper.last() > lower.last())
            .map(|p| p + 1)
    }

    /// Maximal runs of a color `k > i` in row `i`, ordered by `(row, start)`.
    pub fn segments(&self) -> Vec<Segment> {
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let i = r + 1;
            let mut col = 0;
            for (color, run) in &row.iter().chunk_by(|&&e| e) {
                let length = run.count();
                if color as usize > i {
                    out.push(Segment {
                        row: i,
                        color,
                        start_column: col + 1,
                        length,
                    });
                }
                col += length;
            }
        }
        out
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.rows.iter().map(|row| row.iter().join(" ")).join(" / ");
        f.write_str(&s)
    }
}

/// Splits `"1 1 2 / 2 3"` (commas also accepted inside rows) into rows.
pub fn parse_rows(s: &str) -> Result<Vec<Vec<u32>>> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty tableau".into()));
    }
    s.split('/')
        .map(|row| {
            row.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|tok| !tok.is_empty())
                .map(|tok| {
                    u32::from_str(tok)
                        .map_err(|_| Error::Parse(format!("bad tableau entry {tok:?}")))
                })
                .collect()
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    rank: usize,
    rows: Vec<Vec<u32>>,
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauJson {
            rank: self.rank,
            rows: self.rows.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TableauJson::deserialize(d)?;
        Tableau::new(raw.rank, raw.rows).map_err(serde::de::Error::custom)
    }
}

/// Entries indexed by `(i, j)` with `1 <= i <= j <= r`, stored row by row:
/// `(1,1), (1,2), ..., (1,r); (2,2), ...; (r,r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriangularArray {
    rank: usize,
    values: Vec<u64>,
}

impl TriangularArray {
    pub fn from_fn(rank: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut values = Vec::with_capacity(rank * (rank + 1) / 2);
        for i in 1..=rank {
            for j in i..=rank {
                values.push(f(i, j));
            }
        }
        TriangularArray { rank, values }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn index(rank: usize, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i <= j && j <= rank);
        (i - 1) * rank - (i - 1) * (i.saturating_sub(2)) / 2 + (j - i)
    }

    /// Reads `(i, j)`; `i = 0`, `i > r` or `j > r` read as 0.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        if i == 0 || i > self.rank || j > self.rank {
            return 0;
        }
        assert!(i <= j, "({i},{j}) is below the diagonal");
        self.values[Self::index(self.rank, i, j)]
    }

    pub fn positions(rank: usize) -> impl Iterator<Item = (usize, usize)> {
        (1..=rank).flat_map(move |i| (i..=rank).map(move |j| (i, j)))
    }
}

impl fmt::Display for TriangularArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = (1..=self.rank).map(|i| (i..=self.rank).map(|j| self.get(i, j)).join(","));
        write!(f, "({})", rows.format(";"))
    }
}

/// A maximal run of color `color` in row `row`, with `color > row`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub row: usize,
    pub color: u32,
    /// 1-based.
    pub start_column: usize,
    pub length: usize,
}
