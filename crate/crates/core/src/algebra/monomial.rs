use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Generator `t^row_col`, both labels 1-based.
///
/// The derived order is lexicographic in `(row, col)`, which is the PBW order
/// used for normal monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub row: u8,
    pub col: u8,
}

impl Generator {
    pub const fn new(row: u8, col: u8) -> Self {
        Generator { row, col }
    }

    pub fn transpose(self) -> Self {
        Generator::new(self.col, self.row)
    }

    /// Label reversal `t^i_j -> t^{n+1-i}_{n+1-j}`.
    pub fn reverse(self, n: u8) -> Self {
        Generator::new(n + 1 - self.row, n + 1 - self.col)
    }

    pub fn in_range(self, n: u8) -> bool {
        (1..=n).contains(&self.row) && (1..=n).contains(&self.col)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{},{}]", self.row, self.col)
    }
}

/// A word in the generators. Elements only ever store normal-ordered
/// (non-decreasing) words; unreduced words appear as rewriting input.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(pub(crate) Vec<Generator>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(factors: Vec<Generator>) -> Self {
        Monomial(factors)
    }

    pub fn factors(&self) -> &[Generator] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Position of the leftmost adjacent pair out of order.
    pub fn first_descent(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[0] > w[1])
    }

    pub fn descents(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i)
    }

    pub fn multidegree(&self, n: u8) -> MultiDegree {
        let mut md = MultiDegree::zero(n);
        for g in &self.0 {
            md.rows[g.row as usize - 1] += 1;
            md.cols[g.col as usize - 1] += 1;
        }
        md
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }
}

/// Lexicographic order on words; a prefix precedes its extensions.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Generator>> for Monomial {
    fn from(v: Vec<Generator>) -> Self {
        Monomial(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Row-label and column-label counts; every defining relation preserves both.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree {
    pub rows: Vec<u32>,
    pub cols: Vec<u32>,
}

impl MultiDegree {
    pub fn zero(n: u8) -> Self {
        MultiDegree {
            rows: vec![0; n as usize],
            cols: vec![0; n as usize],
        }
    }

    pub fn new(rows: Vec<u32>, cols: Vec<u32>) -> Self {
        MultiDegree { rows, cols }
    }

    pub fn total(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.rows.len() == self.cols.len() && self.rows.iter().sum::<u32>() == self.cols.iter().sum::<u32>()
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiDegree {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a + b).collect(),
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scaled(&self, k: u32) -> Self {
        MultiDegree {
            rows: self.rows.iter().map(|a| a * k).collect(),
            cols: self.cols.iter().map(|a| a * k).collect(),
        }
    }

    /// Componentwise difference, `None` if any count would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let sub =
            |a: &[u32], b: &[u32]| -> Option<Vec<u32>> { a.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect() };
        Some(MultiDegree {
            rows: sub(&self.rows, &other.rows)?,
            cols: sub(&self.cols, &other.cols)?,
        })
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rows {:?} cols {:?}", self.rows, self.cols)
    }
}
