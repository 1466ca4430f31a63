//! Driver behind the `fdldg` binary.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

pub mod config;

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::sync::Arc;

use clap::Parser;
use fdldg_core::harness::{
    compare, converge_space, converge_time, reference_table, render_report, render_solution, render_verify,
    run_reference, stability_problem, ConvergenceReport, ManufacturedProblem, VerifyReport,
};
use fdldg_core::{run, Mesh1D, ProblemSpec, SpaceTimeField, TimeGrid};

pub use config::{Cli, Command, Format, Params, Settings, Verb};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<fdldg_core::Error> for UsageError {
    fn from(e: fdldg_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<io::Error> for UsageError {
    fn from(e: io::Error) -> Self {
        UsageError(e.to_string())
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VERIFY_FAILED,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// `Ok(false)` only when a verification ran and failed.
pub fn execute(command: &Command) -> Result<bool, UsageError> {
    let verb = command.verb();
    let settings = Settings::resolve(verb, command.params())?;
    let mut sink = Sink::open(settings.out.as_deref())?;
    let passed = match verb {
        Verb::Run => run_once(&settings, &mut sink).map(|_| true),
        Verb::ConvergeSpace | Verb::ConvergeTime => study(verb, &settings, &mut sink).map(|_| true),
        Verb::VerifyPaper => verify(&settings, &mut sink),
    }?;
    sink.flush()?;
    Ok(passed)
}

struct Sink {
    inner: Box<dyn Write>,
    path: Option<String>,
}

impl Sink {
    fn open(path: Option<&Path>) -> Result<Self, UsageError> {
        Ok(match path {
            Some(p) => {
                let f = File::create(p).map_err(|e| UsageError(format!("cannot write {}: {e}", p.display())))?;
                Sink { inner: Box::new(BufWriter::new(f)), path: Some(p.display().to_string()) }
            }
            None => Sink { inner: Box::new(io::stdout().lock()), path: None },
        })
    }

    fn wrap(&self, e: io::Error) -> UsageError {
        match &self.path {
            Some(p) => UsageError(format!("cannot write {p}: {e}")),
            None => UsageError(format!("cannot write to stdout: {e}")),
        }
    }

    fn flush(&mut self) -> Result<(), UsageError> {
        self.inner.flush().map_err(|e| self.wrap(e))
    }
}

enum Problem {
    Manufactured(ManufacturedProblem),
    Plain(ProblemSpec),
}

impl Problem {
    fn build(name: &str, alpha: f64, tfinal: Option<f64>) -> Result<Self, UsageError> {
        if name == "stability" {
            return Ok(Problem::Plain(stability_problem(alpha, tfinal.unwrap_or(1.0))?));
        }
        let p = ManufacturedProblem::by_name(name, alpha)?;
        Ok(Problem::Manufactured(match tfinal {
            Some(t) => p.with_t_final(t)?,
            None => p,
        }))
    }

    fn spec(&self) -> &ProblemSpec {
        match self {
            Problem::Manufactured(p) => p.spec(),
            Problem::Plain(s) => s,
        }
    }

    fn manufactured(self, name: &str) -> Result<ManufacturedProblem, UsageError> {
        match self {
            Problem::Manufactured(p) => Ok(p),
            Problem::Plain(_) => Err(UsageError(format!("problem {name:?} has no exact solution to converge against"))),
        }
    }
}

fn run_once(s: &Settings, sink: &mut Sink) -> Result<(), UsageError> {
    let problem = Problem::build(&s.problem, s.alpha[0], s.tfinal)?;
    let spec = problem.spec();
    let (a, b) = spec.domain();
    let mesh = Arc::new(Mesh1D::uniform(a, b, s.cells[0])?);
    let grid = TimeGrid::from_step(spec.t_final(), s.dt[0])?;
    let result = run(spec, &mesh, s.degree[0], &grid)?;
    let t = grid.t_final();
    let exact: Option<&SpaceTimeField> = spec.exact();
    let w = &mut sink.inner;
    let written = match s.format {
        Format::Csv => {
            let f = exact.map(|u| move |x: f64| u.eval(x, t));
            render_solution(&result.solution, f.as_ref().map(|f| f as &dyn Fn(f64) -> f64), w)
        }
        Format::Text => (|| -> io::Result<()> {
            writeln!(w, "problem   {}", s.problem)?;
            writeln!(w, "alpha     {}", spec.alpha())?;
            writeln!(w, "k         {}", s.degree[0])?;
            writeln!(w, "N         {}", s.cells[0])?;
            writeln!(w, "dt_eff    {}", grid.dt())?;
            writeln!(w, "steps     {}", result.steps)?;
            writeln!(w, "T         {t}")?;
            writeln!(w, "||u_h(T)|| {:.6e}", result.solution.l2_norm())?;
            if let Some(e) = result.final_error {
                writeln!(w, "l2_error  {:.6e}", e.l2)?;
                writeln!(w, "linf_error {:.6e}", e.linf)?;
                writeln!(w, "l1_error  {:.6e}", e.l1)?;
            }
            writeln!(w, "wall_time {:.3}s", result.wall_time.as_secs_f64())
        })(),
    };
    written.map_err(|e| sink.wrap(e))
}

fn study(verb: Verb, s: &Settings, sink: &mut Sink) -> Result<(), UsageError> {
    let mut report = ConvergenceReport::default();
    for &alpha in &s.alpha {
        let problem = Problem::build(&s.problem, alpha, s.tfinal)?.manufactured(&s.problem)?;
        let part = match verb {
            Verb::ConvergeSpace => converge_space(&problem, &s.degree, &s.cells, s.dt[0])?,
            _ => converge_time(&problem, s.degree[0], s.cells[0], &s.dt)?,
        };
        report.extend(part);
    }
    let written = match s.format {
        Format::Csv => render_report(&report, &mut sink.inner),
        Format::Text => render_report_text(&report, &mut sink.inner),
    };
    written.map_err(|e| sink.wrap(e))
}

fn verify(s: &Settings, sink: &mut Sink) -> Result<bool, UsageError> {
    let mut all = true;
    for &id in &s.tables {
        let table = reference_table(id)?;
        let report = run_reference(&table)?;
        let verdict = compare(&table, &report)?;
        all &= verdict.passed();
        let written = match s.format {
            Format::Csv => render_verify(&verdict, &mut sink.inner),
            Format::Text => render_verify_text(&verdict, &mut sink.inner),
        };
        written.map_err(|e| sink.wrap(e))?;
    }
    Ok(all)
}

fn fmt_order(o: Option<f64>) -> String {
    o.map_or_else(|| "-".into(), |o| format!("{o:.2}"))
}

fn render_report_text(report: &ConvergenceReport, w: &mut impl Write) -> io::Result<()> {
    writeln!(
        w,
        "{:>5} {:>2} {:>5} {:>10} {:>13} {:>5} {:>13} {:>5} {:>13} {:>5}",
        "alpha", "k", "N", "dt_eff", "L2", "order", "Linf", "order", "L1", "order"
    )?;
    for r in &report.rows {
        writeln!(
            w,
            "{:>5} {:>2} {:>5} {:>10.6} {:>13.6e} {:>5} {:>13.6e} {:>5} {:>13.6e} {:>5}",
            r.alpha,
            r.degree,
            r.cells,
            r.dt_eff,
            r.l2,
            fmt_order(r.l2_order),
            r.linf,
            fmt_order(r.linf_order),
            r.l1,
            fmt_order(r.l1_order)
        )?;
    }
    Ok(())
}

fn render_verify_text(verdict: &VerifyReport, w: &mut impl Write) -> io::Result<()> {
    writeln!(w, "table {}", verdict.table)?;
    for c in &verdict.cells {
        writeln!(w, "  {c}")?;
    }
    let failed = verdict.failures().count();
    if failed == 0 {
        writeln!(w, "table {}: PASS ({} cells)", verdict.table, verdict.cells.len())
    } else {
        writeln!(w, "table {}: FAIL ({failed} of {} cells)", verdict.table, verdict.cells.len())
    }
}
