//! Time marching for `D^alpha u - u_xx = f` on a periodic interval.

use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::caputo::{history_rhs, CaputoWeights, StateHistory, TimeGrid};
use crate::error::{Error, Result};
use crate::field::{project_l2, DGFunction, ErrorNorms, ScalarField, SpaceTimeField};
use crate::ldg::{FluxOrientation, LdgOperators};
use crate::mesh::Mesh1D;

/// Problem data: order, domain, final time, initial state and velocity,
/// source, and optionally the exact solution.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    alpha: f64,
    domain: (f64, f64),
    t_final: f64,
    initial: ScalarField,
    velocity: ScalarField,
    source: SpaceTimeField,
    exact: Option<SpaceTimeField>,
}

impl ProblemSpec {
    pub fn new(
        alpha: f64,
        domain: (f64, f64),
        t_final: f64,
        initial: ScalarField,
        velocity: ScalarField,
        source: SpaceTimeField,
    ) -> Result<Self> {
        if !(alpha > 1.0 && alpha < 2.0) {
            return Err(Error::invalid(format!("fractional order must lie in (1, 2), got {alpha}")));
        }
        if t_final.is_nan() || t_final <= 0.0 {
            return Err(Error::invalid(format!("final time must be positive, got {t_final}")));
        }
        if domain.0.is_nan() || domain.1.is_nan() || domain.0 >= domain.1 {
            return Err(Error::invalid("domain must satisfy a < b"));
        }
        Ok(Self { alpha, domain, t_final, initial, velocity, source, exact: None })
    }

    pub fn with_exact(mut self, exact: SpaceTimeField) -> Self {
        self.exact = Some(exact);
        self
    }

    pub fn with_t_final(mut self, t_final: f64) -> Result<Self> {
        if t_final.is_nan() || t_final <= 0.0 {
            return Err(Error::invalid(format!("final time must be positive, got {t_final}")));
        }
        self.t_final = t_final;
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    pub fn initial(&self) -> &ScalarField {
        &self.initial
    }

    pub fn velocity(&self) -> &ScalarField {
        &self.velocity
    }

    pub fn source(&self) -> &SpaceTimeField {
        &self.source
    }

    pub fn exact(&self) -> Option<&SpaceTimeField> {
        self.exact.as_ref()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub orientation: FluxOrientation,
    /// Keep every level `u^0..=u^M` in the result.
    pub keep_trajectory: bool,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub solution: DGFunction,
    /// `u^0..=u^M` when requested.
    pub trajectory: Option<Vec<DGFunction>>,
    /// `‖u^n‖` for `n = 0..=M`.
    pub level_norms: Vec<f64>,
    pub grid: TimeGrid,
    pub steps: usize,
    pub wall_time: Duration,
    /// Errors against the exact solution at `T`, when one is known.
    pub final_error: Option<ErrorNorms>,
}

/// Projects `u_0`, `u_1` and the ghost level `u^{-1} = u_0 - dt u_1`.
pub fn initialize(spec: &ProblemSpec, mesh: &Arc<Mesh1D>, k: usize, grid: &TimeGrid) -> Result<StateHistory> {
    let dt = grid.dt();
    let u0 = spec.initial.clone();
    let u1 = spec.velocity.clone();
    let initial = project_l2(|x| u0.eval(x), mesh, k);
    let velocity = project_l2(|x| u1.eval(x), mesh, k);
    let ghost = project_l2(|x| u0.eval(x) - dt * u1.eval(x), mesh, k);
    Ok(StateHistory::new(ghost.into_coefficients(), initial.into_coefficients(), velocity.into_coefficients())?
        .with_capacity(grid.steps()))
}

/// Computes `u^n` from the stored history and appends it.
pub fn advance(
    hist: &mut StateHistory,
    ops: &LdgOperators,
    weights: &CaputoWeights,
    spec: &ProblemSpec,
    grid: &TimeGrid,
    n: usize,
) -> Result<DGFunction> {
    let mut rhs = history_rhs(hist, weights, n)?;
    let load = project_l2(|x| spec.source.eval(x, grid.time(n)), ops.mesh(), ops.degree());
    let beta = weights.beta();
    for (r, f) in rhs.iter_mut().zip(load.coefficients()) {
        *r += beta * f;
    }
    let u = ops.solve_step(&rhs)?;
    hist.push(&u)?;
    DGFunction::from_coefficients(Arc::clone(ops.mesh()), ops.degree(), u)
}

pub fn run(spec: &ProblemSpec, mesh: &Arc<Mesh1D>, k: usize, grid: &TimeGrid) -> Result<SolveResult> {
    run_with(spec, mesh, k, grid, RunOptions::default())
}

pub fn run_with(
    spec: &ProblemSpec,
    mesh: &Arc<Mesh1D>,
    k: usize,
    grid: &TimeGrid,
    options: RunOptions,
) -> Result<SolveResult> {
    let start = Instant::now();
    let weights = CaputoWeights::new(spec.alpha, grid)?;
    let ops = LdgOperators::assemble_with_beta(mesh, k, weights.beta(), options.orientation)?;
    let mut hist = initialize(spec, mesh, k, grid)?;

    let u0 = DGFunction::from_coefficients(Arc::clone(mesh), k, hist.state(0).to_vec())?;
    let mut level_norms = Vec::with_capacity(grid.steps() + 1);
    level_norms.push(u0.l2_norm());
    let mut trajectory = options.keep_trajectory.then(|| vec![u0.clone()]);
    let mut current = u0;
    for n in 1..=grid.steps() {
        current = advance(&mut hist, &ops, &weights, spec, grid, n)?;
        level_norms.push(current.l2_norm());
        if let Some(t) = trajectory.as_mut() {
            t.push(current.clone());
        }
    }
    let final_error = spec.exact.as_ref().map(|u| {
        let t = grid.t_final();
        current.error_norms(|x| u.eval(x, t))
    });
    Ok(SolveResult {
        solution: current,
        trajectory,
        level_norms,
        grid: *grid,
        steps: grid.steps(),
        wall_time: start.elapsed(),
        final_error,
    })
}
