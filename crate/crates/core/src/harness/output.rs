//! CSV emission for reports, verification diffs and sampled solutions.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::DGFunction;

use super::convergence::{ConvergenceReport, ReportRow};
use super::verify::VerifyReport;

pub const REPORT_HEADER: &str = "alpha,k,N,dt_eff,l2_error,l2_order,linf_error,linf_order,l1_error,l1_order";
pub const SOLUTION_HEADER: &str = "x,u_h,u_exact";
pub const VERIFY_HEADER: &str = "table,row,column,reference,computed,deviation,tolerance,kind,pass";

/// Samples per cell in solution files.
pub const SAMPLES_PER_CELL: usize = 10;

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

// `Display` for f64 prints the shortest string that parses back to the same value.
fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes a report with [`REPORT_HEADER`]; missing orders are empty fields.
pub fn write_report_csv(report: &ConvergenceReport, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    render_report(report, &mut w).map_err(io_err(path))?;
    w.flush().map_err(io_err(path))
}

/// Same layout as [`write_report_csv`], to any writer.
pub fn render_report(report: &ConvergenceReport, w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "{REPORT_HEADER}")?;
    for r in &report.rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            r.alpha,
            r.degree,
            r.cells,
            r.dt_eff,
            r.l2,
            opt(r.l2_order),
            r.linf,
            opt(r.linf_order),
            r.l1,
            opt(r.l1_order)
        )?;
    }
    Ok(())
}

/// Parses a file written by [`write_report_csv`].
pub fn read_report_csv(path: &Path) -> Result<ConvergenceReport> {
    let csv_err = |source| Error::Csv { path: path.to_path_buf(), source };
    let mut rdr = csv::Reader::from_path(path).map_err(csv_err)?;
    let header: Vec<String> = rdr.headers().map_err(csv_err)?.iter().map(str::to_string).collect();
    if header.join(",") != REPORT_HEADER {
        return Err(Error::invalid(format!("{}: unexpected header {:?}", path.display(), header.join(","))));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        let field = |i: usize| -> Result<f64> {
            rec[i].parse().map_err(|_| Error::invalid(format!("{}: bad number {:?}", path.display(), &rec[i])))
        };
        let maybe = |i: usize| -> Result<Option<f64>> {
            if rec[i].is_empty() {
                Ok(None)
            } else {
                field(i).map(Some)
            }
        };
        let int = |i: usize| -> Result<usize> {
            rec[i].parse().map_err(|_| Error::invalid(format!("{}: bad integer {:?}", path.display(), &rec[i])))
        };
        rows.push(ReportRow {
            alpha: field(0)?,
            degree: int(1)?,
            cells: int(2)?,
            dt_eff: field(3)?,
            l2: field(4)?,
            l2_order: maybe(5)?,
            linf: field(6)?,
            linf_order: maybe(7)?,
            l1: field(8)?,
            l1_order: maybe(9)?,
        });
    }
    Ok(ConvergenceReport { rows })
}

/// Writes the per-cell diff of a verification run.
pub fn write_verify_csv(verdict: &VerifyReport, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    render_verify(verdict, &mut w).map_err(io_err(path))?;
    w.flush().map_err(io_err(path))
}

pub fn render_verify(verdict: &VerifyReport, w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "{VERIFY_HEADER}")?;
    for c in &verdict.cells {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            verdict.table,
            c.row,
            c.column,
            c.reference,
            opt(c.computed),
            opt(c.deviation()),
            c.tolerance,
            if c.relative { "relative" } else { "absolute" },
            c.pass
        )?;
    }
    Ok(())
}

/// `(x, u_h(x))` at [`SAMPLES_PER_CELL`] evenly spaced interior points of every cell.
pub fn sample_solution(u: &DGFunction) -> Vec<(f64, f64)> {
    let mesh = u.mesh();
    let mut out = Vec::with_capacity(mesh.num_cells() * SAMPLES_PER_CELL);
    for j in 0..mesh.num_cells() {
        for i in 0..SAMPLES_PER_CELL {
            let xi = -1.0 + (2 * i + 1) as f64 / SAMPLES_PER_CELL as f64;
            out.push((mesh.from_reference(j, xi), u.eval_reference(j, xi)));
        }
    }
    out
}

/// Writes `x,u_h,u_exact`; the last column is empty without an exact solution.
pub fn write_solution_csv(u: &DGFunction, exact: Option<&dyn Fn(f64) -> f64>, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    render_solution(u, exact, &mut w).map_err(io_err(path))?;
    w.flush().map_err(io_err(path))
}

pub fn render_solution(u: &DGFunction, exact: Option<&dyn Fn(f64) -> f64>, w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "{SOLUTION_HEADER}")?;
    for (x, uh) in sample_solution(u) {
        match exact {
            Some(f) => writeln!(w, "{x},{uh},{}", f(x))?,
            None => writeln!(w, "{x},{uh},")?,
        }
    }
    Ok(())
}
