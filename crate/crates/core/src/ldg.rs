//! LDG spatial operators with alternating fluxes on a periodic mesh.
//!
//! With the orthonormal basis (identity mass matrix) the auxiliary equation
//! reads `p = -B u` and the primal equation `3 u + beta E p = rhs`, where
//!
//! * `B[w, u] = ∫ u w_x - Σ_j ((û w⁻)_{j+1/2} - (û w⁺)_{j-1/2})`
//! * `E[φ, p] = ∫ p φ_x - Σ_j ((p̂ φ⁻)_{j+1/2} - (p̂ φ⁺)_{j-1/2})`
//!
//! Taking `û` and `p̂` from opposite sides makes `E = -Bᵀ`, so the step
//! matrix is `A = 3 I + beta Bᵀ B`, symmetric positive definite.

use std::sync::Arc;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::basis::Basis;
use crate::caputo;
use crate::error::{Error, Result};
use crate::field::{assembly_points, DGFunction};
use crate::mesh::Mesh1D;
use crate::quadrature::gauss_rule;

/// Which trace the interface value of each variable is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FluxOrientation {
    /// `û = u⁻`, `p̂ = p⁺`.
    #[default]
    UMinusPPlus,
    /// `û = u⁺`, `p̂ = p⁻`.
    UPlusPMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TraceSide {
    Minus,
    Plus,
}

/// Weak derivative `z ↦ ∫ z ψ_x - Σ((ẑ ψ⁻)_{j+1/2} - (ẑ ψ⁺)_{j-1/2})` with
/// `ẑ` taken from `side`. Rows index test functions, columns trial functions.
fn weak_derivative(mesh: &Mesh1D, k: usize, side: TraceSide) -> DMatrix<f64> {
    let p = k + 1;
    let n = mesh.num_cells();
    let mut m = DMatrix::zeros(n * p, n * p);
    let rule = gauss_rule(assembly_points(k)).expect("positive order");
    let basis = Basis::new(k);
    let mut vals = vec![0.0; p];
    let mut ders = vec![0.0; p];
    let left_sign = |mode: usize| if mode.is_multiple_of(2) { 1.0 } else { -1.0 };

    for j in 0..n {
        let w = mesh.width(j);
        let base = j * p;
        for (xi, wq) in rule.iter() {
            basis.values_and_derivs_at(xi, w, &mut vals, &mut ders);
            let jac = 0.5 * w * wq;
            for test in 0..p {
                for trial in 0..p {
                    m[(base + test, base + trial)] += jac * vals[trial] * ders[test];
                }
            }
        }

        let right = |mode: usize, cell: usize| Basis::scale(mode, mesh.width(cell));
        let left = |mode: usize, cell: usize| left_sign(mode) * Basis::scale(mode, mesh.width(cell));
        let (jl, jr) = (mesh.left_of(j), mesh.right_of(j));
        for test in 0..p {
            for trial in 0..p {
                match side {
                    TraceSide::Minus => {
                        // x_{j+1/2}: ẑ = z⁻ lives in cell j.
                        m[(base + test, base + trial)] -= right(test, j) * right(trial, j);
                        // x_{j-1/2}: ẑ = z⁻ lives in the left neighbour.
                        m[(base + test, jl * p + trial)] += left(test, j) * right(trial, jl);
                    }
                    TraceSide::Plus => {
                        // x_{j+1/2}: ẑ = z⁺ lives in the right neighbour.
                        m[(base + test, jr * p + trial)] -= right(test, j) * left(trial, jr);
                        // x_{j-1/2}: ẑ = z⁺ lives in cell j.
                        m[(base + test, base + trial)] += left(test, j) * left(trial, j);
                    }
                }
            }
        }
    }
    m
}

/// Assembled, factorised operators for one `(mesh, k, beta)`.
#[derive(Debug, Clone)]
pub struct LdgOperators {
    mesh: Arc<Mesh1D>,
    degree: usize,
    beta: f64,
    orientation: FluxOrientation,
    gradient: DMatrix<f64>,
    divergence: DMatrix<f64>,
    laplacian: DMatrix<f64>,
    system: DMatrix<f64>,
    factor: Cholesky<f64, Dyn>,
}

impl LdgOperators {
    /// Assembles with `beta = 2 dt^alpha Gamma(3 - alpha)` and the default
    /// flux orientation.
    pub fn assemble(mesh: &Arc<Mesh1D>, k: usize, alpha: f64, dt: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha < 2.0) {
            return Err(Error::invalid(format!("fractional order must lie in (1, 2), got {alpha}")));
        }
        let beta = caputo::beta(alpha, dt)?;
        Self::assemble_with_beta(mesh, k, beta, FluxOrientation::default())
    }

    pub fn assemble_with_beta(mesh: &Arc<Mesh1D>, k: usize, beta: f64, orientation: FluxOrientation) -> Result<Self> {
        if beta.is_nan() || beta <= 0.0 {
            return Err(Error::invalid(format!("beta must be positive, got {beta}")));
        }
        let (u_side, p_side) = match orientation {
            FluxOrientation::UMinusPPlus => (TraceSide::Minus, TraceSide::Plus),
            FluxOrientation::UPlusPMinus => (TraceSide::Plus, TraceSide::Minus),
        };
        let gradient = weak_derivative(mesh, k, u_side);
        let divergence = weak_derivative(mesh, k, p_side);
        let laplacian = gradient.tr_mul(&gradient);
        let dim = gradient.nrows();
        let mut system = &laplacian * beta;
        for i in 0..dim {
            system[(i, i)] += 3.0;
        }
        // Exact symmetry for the factorisation.
        let system = (&system + system.transpose()) * 0.5;
        let factor = Cholesky::new(system.clone())
            .ok_or_else(|| Error::Internal("system matrix is not positive definite".into()))?;
        Ok(Self {
            mesh: Arc::clone(mesh),
            degree: k,
            beta,
            orientation,
            gradient,
            divergence,
            laplacian,
            system,
            factor,
        })
    }

    pub fn mesh(&self) -> &Arc<Mesh1D> {
        &self.mesh
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn orientation(&self) -> FluxOrientation {
        self.orientation
    }

    pub fn dim(&self) -> usize {
        self.system.nrows()
    }

    /// `B`: the weak gradient, so that `p = -B u`.
    pub fn gradient(&self) -> &DMatrix<f64> {
        &self.gradient
    }

    /// `E`: the weak divergence of the primal equation.
    pub fn divergence(&self) -> &DMatrix<f64> {
        &self.divergence
    }

    /// `Bᵀ B`.
    pub fn laplacian(&self) -> &DMatrix<f64> {
        &self.laplacian
    }

    /// `A = 3 I + beta Bᵀ B`.
    pub fn system(&self) -> &DMatrix<f64> {
        &self.system
    }

    pub fn factor(&self) -> &Cholesky<f64, Dyn> {
        &self.factor
    }

    /// `p = -B u`.
    pub fn apply_gradient(&self, u: &DGFunction) -> Result<DGFunction> {
        if u.degree() != self.degree || u.coefficients().len() != self.dim() {
            return Err(Error::invalid("field does not match the operator discretisation"));
        }
        let coeffs = DVector::from_column_slice(u.coefficients());
        let p = -(&self.gradient * coeffs);
        DGFunction::from_coefficients(Arc::clone(u.mesh()), self.degree, p.as_slice().to_vec())
    }

    /// Solves `A u = rhs`.
    pub fn solve_step(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        if rhs.len() != self.dim() {
            return Err(Error::invalid(format!("rhs has length {}, expected {}", rhs.len(), self.dim())));
        }
        let mut x = DVector::from_column_slice(rhs);
        self.factor.solve_mut(&mut x);
        Ok(x.as_slice().to_vec())
    }
}
