//! Finite difference in time / local discontinuous Galerkin in space for the
//! one-dimensional time-fractional diffusion-wave equation
//!
//! ```text
//! D_t^alpha u - u_xx = f,   1 < alpha < 2,   periodic in x,
//! ```
//!
//! where `D_t^alpha` is the Caputo derivative. The scheme is second order in
//! time and order `k + 1` in space for piecewise polynomials of degree `k`.

pub mod basis;
pub mod caputo;
pub mod error;
pub mod field;
pub mod gamma;
pub mod harness;
pub mod ldg;
pub mod mesh;
pub mod quadrature;
pub mod solver;

pub use basis::{basis_eval, Basis};
pub use caputo::{
    beta, caputo_weights, history_rhs, solve_scalar_mode, CaputoWeights, ScalarModeSolution, StateHistory, TimeGrid,
};
pub use error::{Error, Result};
pub use field::{
    project_gauss_radau, project_l2, DGFunction, ErrorNorms, RadauSide, ScalarField, SpaceTimeField, Trace,
};
pub use gamma::gamma;
pub use ldg::{FluxOrientation, LdgOperators};
pub use mesh::Mesh1D;
pub use quadrature::{gauss_rule, QuadratureRule};
pub use solver::{advance, initialize, run, run_with, ProblemSpec, RunOptions, SolveResult};
