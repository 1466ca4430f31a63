//! Time discretisation of the Caputo derivative of order `1 < alpha < 2`.
//!
//! The derivative at `t_n` is approximated by a product-integration rule on
//! the second-order backward difference quotient
//! `v_i = (3 u^i - 4 u^{i-1} + u^{i-2}) / (2 dt)`. Multiplying through by
//! `beta = 2 dt^alpha Gamma(3 - alpha)` gives one step of the form
//!
//! ```text
//! 3 u^n - beta u_xx^n = sum_{i=1}^{n-1} (b_{n-i-1} - b_{n-i}) (3u^i - 4u^{i-1} + u^{i-2})
//!                       + 2 dt b_{n-1} v^0 + beta f^n + 4 u^{n-1} - u^{n-2}
//! ```
//!
//! with `b_i = (i+1)^{2-alpha} - i^{2-alpha}` and the ghost state
//! `u^{-1} = u^0 - dt u_1`.

use crate::error::{Error, Result};
use crate::gamma::gamma;

/// Uniform grid `t_n = n dt`, `n = 0..=M`, on `[0, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_final: f64,
    steps: usize,
    dt: f64,
}

impl TimeGrid {
    pub fn new(t_final: f64, steps: usize) -> Result<Self> {
        if t_final.is_nan() || t_final <= 0.0 || !t_final.is_finite() {
            return Err(Error::invalid(format!("final time must be positive, got {t_final}")));
        }
        if steps < 2 {
            return Err(Error::invalid(format!("need at least 2 time steps, got {steps}")));
        }
        Ok(Self { t_final, steps, dt: t_final / steps as f64 })
    }

    /// Grid whose step is the closest to `dt` that divides `t_final`:
    /// `M = round(T / dt)` and `dt_eff = T / M`.
    pub fn from_step(t_final: f64, dt: f64) -> Result<Self> {
        if dt.is_nan() || dt <= 0.0 || !dt.is_finite() {
            return Err(Error::invalid(format!("time step must be positive, got {dt}")));
        }
        let steps = (t_final / dt).round();
        if steps.is_nan() || steps < 2.0 {
            return Err(Error::invalid(format!("time step {dt} leaves fewer than 2 steps in [0, {t_final}]")));
        }
        Self::new(t_final, steps as usize)
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn time(&self, n: usize) -> f64 {
        if n == self.steps {
            self.t_final
        } else {
            n as f64 * self.dt
        }
    }
}

fn check_order(alpha: f64) -> Result<()> {
    if alpha > 1.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("fractional order must lie in (1, 2), got {alpha}")))
    }
}

/// `b_0..b_{count-1}` with `b_i = (i+1)^{2-alpha} - i^{2-alpha}`.
///
/// Evaluated as `i^g * expm1(g * ln1p(1/i))` to avoid cancellation for large `i`.
pub fn caputo_weights(alpha: f64, count: usize) -> Result<Vec<f64>> {
    check_order(alpha)?;
    if count == 0 {
        return Err(Error::invalid("need at least one weight"));
    }
    let g = 2.0 - alpha;
    Ok((0..count)
        .map(|i| {
            if i == 0 {
                1.0
            } else {
                let x = i as f64;
                x.powf(g) * (g * (1.0 / x).ln_1p()).exp_m1()
            }
        })
        .collect())
}

/// `beta = 2 dt^alpha Gamma(3 - alpha)`.
///
/// The endpoints `alpha = 1` and `alpha = 2` are accepted here so the
/// Gamma evaluation can be checked against `Gamma(2) = Gamma(1) = 1`.
pub fn beta(alpha: f64, dt: f64) -> Result<f64> {
    if dt.is_nan() || dt <= 0.0 {
        return Err(Error::invalid(format!("time step must be positive, got {dt}")));
    }
    if !(1.0..=2.0).contains(&alpha) {
        return Err(Error::invalid(format!("fractional order must lie in [1, 2], got {alpha}")));
    }
    Ok(2.0 * dt.powf(alpha) * gamma(3.0 - alpha))
}

/// All constants of the time discretisation for one `(alpha, grid)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CaputoWeights {
    alpha: f64,
    dt: f64,
    b: Vec<f64>,
    beta: f64,
}

impl CaputoWeights {
    pub fn new(alpha: f64, grid: &TimeGrid) -> Result<Self> {
        let b = caputo_weights(alpha, grid.steps())?;
        let beta = beta(alpha, grid.dt())?;
        Ok(Self { alpha, dt: grid.dt(), b, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }
}

/// Time levels `u^{-1}, u^0, ..., u^{n-1}` plus the projected initial
/// velocity `v^0`.
///
/// The three-point differences `3u^i - 4u^{i-1} + u^{i-2}` are cached as
/// levels are pushed, so one history evaluation is a single weighted sum.
#[derive(Debug, Clone, PartialEq)]
pub struct StateHistory {
    ndof: usize,
    velocity: Vec<f64>,
    // u^{-1}, u^0, u^1, ... back to back.
    states: Vec<f64>,
    // D_1, D_2, ... back to back.
    diffs: Vec<f64>,
}

impl StateHistory {
    /// Starts a history from `u^{-1}`, `u^0` and `v^0`.
    pub fn new(ghost: Vec<f64>, initial: Vec<f64>, velocity: Vec<f64>) -> Result<Self> {
        let ndof = initial.len();
        if ghost.len() != ndof || velocity.len() != ndof {
            return Err(Error::invalid("initial levels must share one length"));
        }
        let mut states = ghost;
        states.extend_from_slice(&initial);
        Ok(Self { ndof, velocity, states, diffs: Vec::new() })
    }

    pub fn with_capacity(mut self, levels: usize) -> Self {
        self.states.reserve(levels * self.ndof);
        self.diffs.reserve(levels * self.ndof);
        self
    }

    pub fn ndof(&self) -> usize {
        self.ndof
    }

    /// Index of the newest stored level (`0` right after construction).
    pub fn latest(&self) -> usize {
        self.states.len() / self.ndof - 2
    }

    /// Level `u^i` for `i >= -1`.
    pub fn state(&self, i: isize) -> &[f64] {
        assert!(i >= -1 && i <= self.latest() as isize, "level {i} not stored");
        let s = (i + 1) as usize * self.ndof;
        &self.states[s..s + self.ndof]
    }

    pub fn ghost(&self) -> &[f64] {
        self.state(-1)
    }

    pub fn velocity(&self) -> &[f64] {
        &self.velocity
    }

    /// Appends the next level.
    pub fn push(&mut self, u: &[f64]) -> Result<()> {
        if u.len() != self.ndof {
            return Err(Error::invalid(format!("level has length {}, expected {}", u.len(), self.ndof)));
        }
        let i = self.latest() as isize + 1;
        let prev = self.state(i - 1).to_vec();
        let prev2 = self.state(i - 2).to_vec();
        self.diffs.extend(u.iter().zip(&prev).zip(&prev2).map(|((a, b), c)| 3.0 * a - 4.0 * b + c));
        self.states.extend_from_slice(u);
        Ok(())
    }

    /// `3u^i - 4u^{i-1} + u^{i-2}` for `i >= 1`.
    pub fn difference(&self, i: usize) -> &[f64] {
        assert!(i >= 1 && i <= self.latest());
        let s = (i - 1) * self.ndof;
        &self.diffs[s..s + self.ndof]
    }
}

/// Right-hand side of step `n` without the `beta f^n` load:
///
/// `sum_{i=1}^{n-1} (b_{n-i-1} - b_{n-i}) D_i + 2 dt b_{n-1} v^0 + 4 u^{n-1} - u^{n-2}`.
pub fn history_rhs(hist: &StateHistory, weights: &CaputoWeights, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Precondition("step index starts at 1".into()));
    }
    if hist.latest() + 1 < n {
        return Err(Error::Precondition(format!(
            "step {n} needs levels through {}, history ends at {}",
            n - 1,
            hist.latest()
        )));
    }
    let b = weights.b();
    if n > b.len() {
        return Err(Error::Precondition(format!("step {n} beyond the {} computed weights", b.len())));
    }
    let last = hist.state(n as isize - 1);
    let before = hist.state(n as isize - 2);
    let vel = 2.0 * weights.dt() * b[n - 1];
    let mut out: Vec<f64> =
        last.iter().zip(before).zip(hist.velocity()).map(|((u1, u2), v)| 4.0 * u1 - u2 + vel * v).collect();
    for i in 1..n {
        let c = b[n - i - 1] - b[n - i];
        for (o, d) in out.iter_mut().zip(hist.difference(i)) {
            *o += c * d;
        }
    }
    Ok(out)
}

/// Outcome of [`solve_scalar_mode`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarModeSolution {
    /// `g^0..=g^M`.
    pub values: Vec<f64>,
    /// `|g^M - g(T)|`.
    pub final_error: f64,
}

/// Applies the time scheme to a single Fourier mode,
/// `D^alpha g + lambda g = f_g(t)`, `g(0) = g0`, `g'(0) = g1`.
pub fn solve_scalar_mode(
    lambda: f64,
    alpha: f64,
    grid: &TimeGrid,
    (g0, g1): (f64, f64),
    forcing: impl Fn(f64) -> f64,
    exact: impl Fn(f64) -> f64,
) -> Result<ScalarModeSolution> {
    if lambda < 0.0 {
        return Err(Error::invalid(format!("mode eigenvalue must be non-negative, got {lambda}")));
    }
    let w = CaputoWeights::new(alpha, grid)?;
    let diag = 3.0 + w.beta() * lambda;
    if diag.is_nan() || diag <= 0.0 {
        return Err(Error::Internal(format!("non-positive step diagonal {diag}")));
    }
    let mut hist = StateHistory::new(vec![g0 - grid.dt() * g1], vec![g0], vec![g1])?.with_capacity(grid.steps());
    let mut values = Vec::with_capacity(grid.steps() + 1);
    values.push(g0);
    for n in 1..=grid.steps() {
        let rhs = history_rhs(&hist, &w, n)?[0] + w.beta() * forcing(grid.time(n));
        let g = rhs / diag;
        hist.push(&[g])?;
        values.push(g);
    }
    let final_error = (values[grid.steps()] - exact(grid.t_final())).abs();
    Ok(ScalarModeSolution { values, final_error })
}
