//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use fdldg_core::{CaputoWeights, Mesh1D, StateHistory, TimeGrid};

pub fn mesh(cells: usize) -> Arc<Mesh1D> {
    Arc::new(Mesh1D::uniform(0.0, 1.0, cells).expect("valid mesh"))
}

/// A history holding `levels` states of `ndof` values plus weights for `levels` steps.
pub fn history(levels: usize, ndof: usize, alpha: f64) -> (StateHistory, CaputoWeights) {
    let state = |l: usize| -> Vec<f64> { (0..ndof).map(|d| ((l * 31 + d * 7) % 17) as f64 / 17.0).collect() };
    let mut hist = StateHistory::new(state(0), state(1), state(2)).expect("consistent shapes").with_capacity(levels);
    for l in 1..levels {
        hist.push(&state(l + 2)).expect("consistent shapes");
    }
    let grid = TimeGrid::new(1.0, levels).expect("valid grid");
    (hist, CaputoWeights::new(alpha, &grid).expect("valid order"))
}
