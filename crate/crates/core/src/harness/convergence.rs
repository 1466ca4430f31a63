//! Refinement studies in space and time.

use std::sync::Arc;

use rayon::prelude::*;

use crate::caputo::TimeGrid;
use crate::error::{Error, Result};
use crate::mesh::Mesh1D;
use crate::solver::run;

use super::problems::ManufacturedProblem;

/// Environment variable holding the worker count for study runs.
pub const THREADS_ENV: &str = "FDLDG_THREADS";

/// One resolution of a refinement study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportRow {
    pub alpha: f64,
    pub degree: usize,
    pub cells: usize,
    pub dt_eff: f64,
    pub l2: f64,
    pub l2_order: Option<f64>,
    pub linf: f64,
    pub linf_order: Option<f64>,
    pub l1: f64,
    pub l1_order: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ReportRow>,
}

impl ConvergenceReport {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Appends another report's rows (orders are left as computed).
    pub fn extend(&mut self, other: ConvergenceReport) {
        self.rows.extend(other.rows);
    }
}

/// `ln(e_coarse / e_fine) / ln(r_coarse / r_fine)`; `None` when the two
/// resolutions coincide.
pub fn observed_order(e_coarse: f64, e_fine: f64, r_coarse: f64, r_fine: f64) -> Option<f64> {
    if r_coarse == r_fine {
        return None;
    }
    Some((e_coarse / e_fine).ln() / (r_coarse / r_fine).ln())
}

/// Worker count from [`THREADS_ENV`], default 1.
pub fn study_threads() -> usize {
    std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0).unwrap_or(1)
}

/// Runs `cases` on [`study_threads`] workers; results keep input order.
fn run_cases<C, T>(cases: &[C], f: impl Fn(&C) -> Result<T> + Sync) -> Result<Vec<T>>
where
    C: Sync,
    T: Send,
{
    let threads = study_threads();
    if threads == 1 {
        return cases.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(|| cases.par_iter().map(&f).collect())
}

fn row_for(problem: &ManufacturedProblem, degree: usize, cells: usize, grid: &TimeGrid) -> Result<ReportRow> {
    let (a, b) = problem.spec().domain();
    let mesh = Arc::new(Mesh1D::uniform(a, b, cells)?);
    let spec = problem.spec().clone().with_t_final(grid.t_final())?;
    let result = run(&spec, &mesh, degree, grid)?;
    let e = result.final_error.ok_or_else(|| Error::Internal("manufactured problem without exact solution".into()))?;
    Ok(ReportRow {
        alpha: problem.alpha(),
        degree,
        cells,
        dt_eff: grid.dt(),
        l2: e.l2,
        l2_order: None,
        linf: e.linf,
        linf_order: None,
        l1: e.l1,
        l1_order: None,
    })
}

fn fill_orders(rows: &mut [ReportRow], resolution: impl Fn(&ReportRow) -> f64) {
    for i in 1..rows.len() {
        let (prev, cur) = (rows[i - 1], rows[i]);
        let (r0, r1) = (resolution(&prev), resolution(&cur));
        rows[i].l2_order = observed_order(prev.l2, cur.l2, r0, r1);
        rows[i].linf_order = observed_order(prev.linf, cur.linf, r0, r1);
        rows[i].l1_order = observed_order(prev.l1, cur.l1, r0, r1);
    }
}

/// One run per `(k, N)` with fixed `dt`; orders against `h` within each `k`.
pub fn converge_space(
    problem: &ManufacturedProblem,
    degrees: &[usize],
    cells: &[usize],
    dt: f64,
) -> Result<ConvergenceReport> {
    if cells.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("cell counts must be non-decreasing"));
    }
    let grid = TimeGrid::from_step(problem.spec().t_final(), dt)?;
    let cases: Vec<(usize, usize)> = degrees.iter().flat_map(|&k| cells.iter().map(move |&n| (k, n))).collect();
    let rows = run_cases(&cases, |&(k, n)| row_for(problem, k, n, &grid))?;
    let (a, b) = problem.spec().domain();
    let mut out = Vec::with_capacity(rows.len());
    for block in rows.chunks(cells.len().max(1)) {
        let mut block = block.to_vec();
        fill_orders(&mut block, |r| (b - a) / r.cells as f64);
        out.extend(block);
    }
    Ok(ConvergenceReport { rows: out })
}

/// One run per requested `dt` (rounded so it divides `T`); orders against
/// the effective step.
pub fn converge_time(
    problem: &ManufacturedProblem,
    degree: usize,
    cells: usize,
    dts: &[f64],
) -> Result<ConvergenceReport> {
    if dts.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::invalid("time steps must be non-increasing"));
    }
    let t_final = problem.spec().t_final();
    let grids = dts.iter().map(|&dt| TimeGrid::from_step(t_final, dt)).collect::<Result<Vec<_>>>()?;
    let mut rows = run_cases(&grids, |g| row_for(problem, degree, cells, g))?;
    fill_orders(&mut rows, |r| r.dt_eff);
    Ok(ConvergenceReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::problems::example41;

    #[test]
    fn order_definition() {
        let eps = 1e-5;
        assert_eq!(observed_order(4.0 * eps, eps, 0.1, 0.05), Some(2.0));
        assert_eq!(observed_order(1.0, 1.0, 0.1, 0.1), None);
    }

    #[test]
    fn repeated_step_gives_identical_rows() {
        let p = example41(1.5).unwrap();
        let r = converge_time(&p, 1, 10, &[0.1, 0.1]).unwrap();
        assert_eq!(r.rows[0].l2, r.rows[1].l2);
        assert_eq!(r.rows[1].l2_order, None);
        assert_eq!(r.rows[0].l2_order, None);
    }

    #[test]
    fn rejects_unsorted_sweeps() {
        let p = example41(1.5).unwrap();
        assert!(converge_space(&p, &[0], &[10, 5], 0.1).is_err());
        assert!(converge_time(&p, 0, 5, &[0.05, 0.1]).is_err());
    }

    #[test]
    fn small_space_study_has_expected_layout() {
        let p = example41(1.5).unwrap();
        let r = converge_space(&p, &[0, 1], &[5, 10, 20], 0.05).unwrap();
        assert_eq!(r.len(), 6);
        assert!(r.rows[0].l2_order.is_none() && r.rows[3].l2_order.is_none());
        assert!(r.rows[1].l2_order.is_some() && r.rows[5].l1_order.is_some());
        assert_eq!(r.rows[4].degree, 1);
        assert!((r.rows[4].dt_eff - 0.05).abs() < 1e-15);
    }
}
