//! L²-orthonormal scaled Legendre basis on each cell:
//! `phi_{j,m}(x) = sqrt((2m+1)/dx_j) * P_m(2 (x - x_j^c) / dx_j)`.
//!
//! With this choice every cell mass matrix is the identity.

use crate::error::{Error, Result};
use crate::mesh::Mesh1D;
use crate::quadrature::legendre_table;

/// Local basis of degree `k` (so `k + 1` modes per cell).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Basis {
    degree: usize,
}

impl Basis {
    pub fn new(degree: usize) -> Self {
        Self { degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modes(&self) -> usize {
        self.degree + 1
    }

    /// Normalisation `sqrt((2m+1)/dx)`.
    #[inline]
    pub fn scale(m: usize, width: f64) -> f64 {
        ((2 * m + 1) as f64 / width).sqrt()
    }

    /// Values of all modes at reference point `xi` on a cell of width `width`.
    pub fn values_at(&self, xi: f64, width: f64, out: &mut [f64]) {
        let mut d = vec![0.0; out.len()];
        legendre_table(xi, out, &mut d);
        for (m, v) in out.iter_mut().enumerate() {
            *v *= Self::scale(m, width);
        }
    }

    /// Values and physical x-derivatives of all modes at reference point `xi`.
    pub fn values_and_derivs_at(&self, xi: f64, width: f64, vals: &mut [f64], derivs: &mut [f64]) {
        legendre_table(xi, vals, derivs);
        for m in 0..vals.len() {
            let s = Self::scale(m, width);
            vals[m] *= s;
            derivs[m] *= s * 2.0 / width;
        }
    }

    /// `phi_{j,m}(x)`; `x` must lie in cell `j`.
    pub fn eval(&self, mesh: &Mesh1D, j: usize, m: usize, x: f64) -> Result<f64> {
        if m > self.degree {
            return Err(Error::invalid(format!("mode {m} exceeds degree {}", self.degree)));
        }
        if j >= mesh.num_cells() {
            return Err(Error::invalid(format!("cell {j} out of range")));
        }
        let (lo, hi) = mesh.cell(j);
        if !(lo..=hi).contains(&x) {
            return Err(Error::OutOfDomain { x, lo, hi });
        }
        let xi = mesh.to_reference(j, x).clamp(-1.0, 1.0);
        let mut v = vec![0.0; m + 1];
        let mut d = vec![0.0; m + 1];
        legendre_table(xi, &mut v, &mut d);
        Ok(Self::scale(m, mesh.width(j)) * v[m])
    }
}

/// Free-function form of [`Basis::eval`].
pub fn basis_eval(mesh: &Mesh1D, k: usize, m: usize, j: usize, x: f64) -> Result<f64> {
    Basis::new(k).eval(mesh, j, m, x)
}
