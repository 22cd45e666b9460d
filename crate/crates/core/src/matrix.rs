//! Lower-triangular matrices with rational entries.

use std::fmt;

use num_traits::Zero;

use crate::fps::{rat, Rat};

/// A square lower-triangular matrix stored row by row.
///
/// Row `n` holds the entries `(n, 0), ..., (n, n)`; entries above the
/// diagonal are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriMatrix {
    rows: Vec<Vec<Rat>>,
}

impl TriMatrix {
    /// Builds a matrix from rows; row `n` must have exactly `n + 1` entries.
    ///
    /// # Panics
    ///
    /// Panics on a malformed row.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        for (n, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n + 1, "row {n} must have {} entries", n + 1);
        }
        TriMatrix { rows }
    }

    /// Builds a matrix from integer rows.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    /// Builds a `size x size` matrix from an entry function on `k <= n`.
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        TriMatrix {
            rows: (0..size).map(|n| (0..=n).map(|k| f(n, k)).collect()).collect(),
        }
    }

    /// Number of rows.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Entry `(n, k)`; zero above the diagonal.
    ///
    /// # Panics
    ///
    /// Panics if `n` is out of range.
    pub fn get(&self, n: usize, k: usize) -> Rat {
        self.rows[n].get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Borrowed entry `(n, k)` for `k <= n`.
    pub fn entry(&self, n: usize, k: usize) -> Option<&Rat> {
        self.rows.get(n).and_then(|r| r.get(k))
    }

    /// All rows.
    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// Returns a copy with entry `(n, k)` replaced.
    pub fn with_entry(&self, n: usize, k: usize, value: Rat) -> Self {
        let mut m = self.clone();
        m.rows[n][k] = value;
        m
    }

    /// Leading principal submatrix of the given size.
    pub fn leading(&self, size: usize) -> Self {
        TriMatrix {
            rows: self.rows[..size.min(self.size())].to_vec(),
        }
    }

    /// Entry-wise sign twist `(-1)^(n-k) d_{n,k}`.
    pub fn sign_twisted(&self) -> Self {
        TriMatrix::from_fn(self.size(), |n, k| {
            let x = self.rows[n][k].clone();
            if (n - k) % 2 == 1 {
                -x
            } else {
                x
            }
        })
    }

    /// Matrix product over the common leading size.
    pub fn mul(&self, other: &TriMatrix) -> TriMatrix {
        let size = self.size().min(other.size());
        TriMatrix::from_fn(size, |n, k| {
            (k..=n).fold(Rat::zero(), |acc, j| acc + &self.rows[n][j] * &other.rows[j][k])
        })
    }

    /// First entry (in row-major order) where the two matrices differ.
    pub fn first_difference(&self, other: &TriMatrix) -> Option<(usize, usize)> {
        let size = self.size().min(other.size());
        for n in 0..size {
            for k in 0..=n {
                if self.rows[n][k] != other.rows[n][k] {
                    return Some((n, k));
                }
            }
        }
        None
    }

    /// Entries read by rows.
    pub fn flatten(&self) -> Vec<Rat> {
        self.rows.iter().flatten().cloned().collect()
    }

    /// Whether every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.rows.iter().flatten().all(Rat::is_integer)
    }
}

impl fmt::Display for TriMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(String::len)
            .max()
            .unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

