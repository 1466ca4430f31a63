//! Re-running a published table and diffing it cell by cell.

use std::fmt;

use crate::error::{Error, Result};

use super::convergence::{converge_space, converge_time, ConvergenceReport};
use super::problems::example41;
use super::reference::{reference_table, ReferenceTable, SecondNorm, StudyKind};

/// Outcome for a single published cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellCheck {
    pub row: usize,
    pub column: &'static str,
    pub reference: f64,
    pub computed: Option<f64>,
    /// Relative for error cells, absolute for order cells.
    pub tolerance: f64,
    pub relative: bool,
    pub pass: bool,
}

impl CellCheck {
    fn error(row: usize, column: &'static str, reference: f64, computed: f64, tol: f64) -> Self {
        let pass = ((computed - reference) / reference).abs() <= tol;
        Self { row, column, reference, computed: Some(computed), tolerance: tol, relative: true, pass }
    }

    fn order(row: usize, column: &'static str, reference: f64, computed: Option<f64>, tol: f64) -> Self {
        let pass = computed.is_some_and(|c| (c - reference).abs() <= tol);
        Self { row, column, reference, computed, tolerance: tol, relative: false, pass }
    }

    /// Signed deviation: relative for error cells, absolute for orders.
    pub fn deviation(&self) -> Option<f64> {
        self.computed.map(|c| if self.relative { (c - self.reference) / self.reference } else { c - self.reference })
    }
}

impl fmt::Display for CellCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "ok  " } else { "FAIL" };
        let computed = self.computed.map_or_else(|| "-".to_string(), |c| format!("{c:.6e}"));
        let dev = match (self.deviation(), self.relative) {
            (Some(d), true) => format!("{:+.2}%", 100.0 * d),
            (Some(d), false) => format!("{d:+.3}"),
            (None, _) => "n/a".into(),
        };
        let tol = if self.relative { format!("{:.0}%", 100.0 * self.tolerance) } else { format!("{}", self.tolerance) };
        write!(
            f,
            "{status} row {:>2} {:<12} ref {:.6e} got {computed} dev {dev} (tol {tol})",
            self.row, self.column, self.reference
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub table: u8,
    pub cells: Vec<CellCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellCheck> {
        self.cells.iter().filter(|c| !c.pass)
    }
}

/// Runs the configuration behind a published table.
pub fn run_reference(table: &ReferenceTable) -> Result<ConvergenceReport> {
    let mut report = ConvergenceReport::default();
    for alpha in table.alphas() {
        let rows: Vec<_> = table.rows.iter().filter(|r| r.alpha == alpha).collect();
        let problem = example41(alpha)?;
        let part = match table.kind {
            StudyKind::Space => {
                let mut degrees: Vec<usize> = rows.iter().map(|r| r.degree).collect();
                degrees.dedup();
                let mut cells: Vec<usize> = rows.iter().filter(|r| r.degree == degrees[0]).map(|r| r.cells).collect();
                cells.dedup();
                converge_space(&problem, &degrees, &cells, rows[0].dt)?
            }
            StudyKind::Time => {
                let dts: Vec<f64> = rows.iter().map(|r| r.dt).collect();
                converge_time(&problem, rows[0].degree, rows[0].cells, &dts)?
            }
        };
        report.extend(part);
    }
    Ok(report)
}

/// Compares every error and order cell of `table` against `report`.
pub fn compare(table: &ReferenceTable, report: &ConvergenceReport) -> Result<VerifyReport> {
    if table.rows.len() != report.rows.len() {
        return Err(Error::invalid(format!(
            "table {} has {} rows, report has {}",
            table.id,
            table.rows.len(),
            report.rows.len()
        )));
    }
    let tol = table.tolerances;
    let mut cells = Vec::new();
    for (i, (r, got)) in table.rows.iter().zip(&report.rows).enumerate() {
        if r.alpha != got.alpha || r.degree != got.degree || r.cells != got.cells {
            return Err(Error::invalid(format!("row {i} configuration does not match the table")));
        }
        let (err_col, ord_col, second, second_order) = match table.second {
            SecondNorm::Linf => ("linf_error", "linf_order", got.linf, got.linf_order),
            SecondNorm::L1 => ("l1_error", "l1_order", got.l1, got.l1_order),
        };
        cells.push(CellCheck::error(i, "l2_error", r.l2, got.l2, tol.error_rel));
        if let Some(o) = r.l2_order {
            cells.push(CellCheck::order(i, "l2_order", o, got.l2_order, tol.order_abs));
        }
        cells.push(CellCheck::error(i, err_col, r.second, second, tol.error_rel));
        if let Some(o) = r.second_order {
            cells.push(CellCheck::order(i, ord_col, o, second_order, tol.order_abs));
        }
    }
    Ok(VerifyReport { table: table.id, cells })
}

/// Re-runs table `id` and diffs it.
pub fn verify_paper(id: u8) -> Result<(ConvergenceReport, VerifyReport)> {
    let table = reference_table(id)?;
    let report = run_reference(&table)?;
    let verdict = compare(&table, &report)?;
    Ok((report, verdict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::convergence::ReportRow;

    fn synthetic(table: &ReferenceTable) -> ConvergenceReport {
        ConvergenceReport {
            rows: table
                .rows
                .iter()
                .map(|r| ReportRow {
                    alpha: r.alpha,
                    degree: r.degree,
                    cells: r.cells,
                    dt_eff: r.dt,
                    l2: r.l2,
                    l2_order: r.l2_order,
                    linf: r.second,
                    linf_order: r.second_order,
                    l1: r.second,
                    l1_order: r.second_order,
                })
                .collect(),
        }
    }

    #[test]
    fn identical_report_passes() {
        let t = reference_table(2).unwrap();
        let v = compare(&t, &synthetic(&t)).unwrap();
        assert!(v.passed());
        assert_eq!(v.cells.iter().filter(|c| c.relative).count(), 30);
        assert_eq!(v.cells.iter().filter(|c| !c.relative).count(), 24);
    }

    #[test]
    fn single_tampered_cell_is_flagged() {
        let t = reference_table(1).unwrap();
        let report = synthetic(&t);
        let mut tampered = t.clone();
        tampered.rows[9].l2 *= 1.5;
        let v = compare(&tampered, &report).unwrap();
        let bad: Vec<_> = v.failures().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].row, bad[0].column), (9, "l2_error"));
    }

    #[test]
    fn missing_order_fails() {
        let t = reference_table(5).unwrap();
        let mut report = synthetic(&t);
        report.rows[3].l2_order = None;
        let v = compare(&t, &report).unwrap();
        assert_eq!(v.failures().count(), 1);
    }

    #[test]
    fn mismatched_shapes_are_rejected() {
        let t = reference_table(1).unwrap();
        let mut report = synthetic(&t);
        report.rows.pop();
        assert!(compare(&t, &report).is_err());
        let mut report = synthetic(&t);
        report.rows[0].cells = 6;
        assert!(compare(&t, &report).is_err());
    }
}
