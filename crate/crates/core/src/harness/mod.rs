//! Manufactured problems, refinement studies, reference-table verification
//! and CSV output.

pub mod convergence;
pub mod output;
pub mod problems;
pub mod reference;
pub mod verify;

pub use convergence::{
    converge_space, converge_time, observed_order, study_threads, ConvergenceReport, ReportRow, THREADS_ENV,
};
pub use output::{
    read_report_csv, render_report, render_solution, render_verify, sample_solution, write_report_csv,
    write_solution_csv, write_verify_csv, REPORT_HEADER, SAMPLES_PER_CELL, SOLUTION_HEADER, VERIFY_HEADER,
};
pub use problems::{caputo_by_quadrature, example41, power_time_problem, stability_problem, ManufacturedProblem};
pub use reference::{reference_table, RefRow, ReferenceTable, SecondNorm, StudyKind, Tolerances};
pub use verify::{compare, run_reference, verify_paper, CellCheck, VerifyReport};
