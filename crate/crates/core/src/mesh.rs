//! One-dimensional periodic cell partitions.

use crate::error::{Error, Result};

/// A partition `a = x_{1/2} < x_{3/2} < ... < x_{N+1/2} = b` of `[a, b]`.
///
/// Always periodic: interface `N + 1/2` is identified with `1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D {
    boundaries: Vec<f64>,
    widths: Vec<f64>,
    h: f64,
}

impl Mesh1D {
    /// `n` equal cells on `[a, b]`.
    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self> {
        if a.is_nan() || b.is_nan() || a >= b || !a.is_finite() || !b.is_finite() {
            return Err(Error::invalid(format!("need finite a < b, got a={a}, b={b}")));
        }
        if n < 2 {
            return Err(Error::invalid(format!("need at least 2 cells, got {n}")));
        }
        let dx = (b - a) / n as f64;
        let mut boundaries: Vec<f64> = (0..=n).map(|j| a + j as f64 * dx).collect();
        boundaries[n] = b;
        Self::from_boundaries(boundaries)
    }

    /// General (possibly non-uniform) partition from its `N + 1` boundary points.
    pub fn from_boundaries(boundaries: Vec<f64>) -> Result<Self> {
        if boundaries.len() < 3 {
            return Err(Error::invalid("need at least 2 cells"));
        }
        if boundaries.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("boundaries must be finite"));
        }
        if boundaries.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("boundaries must be strictly increasing"));
        }
        let widths: Vec<f64> = boundaries.windows(2).map(|w| w[1] - w[0]).collect();
        let h = widths.iter().copied().fold(0.0, f64::max);
        Ok(Self { boundaries, widths, h })
    }

    pub fn a(&self) -> f64 {
        self.boundaries[0]
    }

    pub fn b(&self) -> f64 {
        self.boundaries[self.boundaries.len() - 1]
    }

    pub fn num_cells(&self) -> usize {
        self.widths.len()
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    pub fn width(&self, j: usize) -> f64 {
        self.widths[j]
    }

    /// Largest cell width.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn is_periodic(&self) -> bool {
        true
    }

    /// `(left, right)` endpoints of cell `j`.
    pub fn cell(&self, j: usize) -> (f64, f64) {
        (self.boundaries[j], self.boundaries[j + 1])
    }

    pub fn center(&self, j: usize) -> f64 {
        0.5 * (self.boundaries[j] + self.boundaries[j + 1])
    }

    /// Maps `x` in cell `j` to the reference coordinate in [-1, 1].
    pub fn to_reference(&self, j: usize, x: f64) -> f64 {
        2.0 * (x - self.center(j)) / self.widths[j]
    }

    pub fn from_reference(&self, j: usize, xi: f64) -> f64 {
        self.center(j) + 0.5 * self.widths[j] * xi
    }

    /// Cell owning `x`. Interior interfaces belong to the cell on their left.
    pub fn locate(&self, x: f64) -> Result<usize> {
        let (a, b) = (self.a(), self.b());
        if !(a..=b).contains(&x) {
            return Err(Error::OutOfDomain { x, lo: a, hi: b });
        }
        // First boundary index with boundaries[i] >= x, minus one.
        let i = self.boundaries.partition_point(|&bd| bd < x);
        Ok(i.saturating_sub(1).min(self.num_cells() - 1))
    }

    /// Periodic neighbour to the left.
    pub fn left_of(&self, j: usize) -> usize {
        if j == 0 {
            self.num_cells() - 1
        } else {
            j - 1
        }
    }

    /// Periodic neighbour to the right.
    pub fn right_of(&self, j: usize) -> usize {
        (j + 1) % self.num_cells()
    }
}
