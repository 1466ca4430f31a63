//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use fdldg_core::harness::{
    caputo_by_quadrature, converge_space, converge_time, example41, observed_order, reference_table, stability_problem,
    StudyKind,
};
use fdldg_core::{
    beta, caputo_weights, history_rhs, project_gauss_radau, project_l2, run, solve_scalar_mode, CaputoWeights,
    DGFunction, FluxOrientation, LdgOperators, Mesh1D, RadauSide, StateHistory, TimeGrid,
};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn uniform(n: usize) -> Arc<Mesh1D> {
    Arc::new(Mesh1D::uniform(0.0, 1.0, n).unwrap())
}

fn jittered(n: usize, rng: &mut ChaCha8Rng) -> Arc<Mesh1D> {
    let h = 1.0 / n as f64;
    let mut b: Vec<f64> = (0..=n).map(|j| j as f64 * h).collect();
    for x in &mut b[1..n] {
        *x += rng.gen_range(-0.3..0.3) * h;
    }
    Arc::new(Mesh1D::from_boundaries(b).unwrap())
}

fn spatial_convergence() -> Outcome {
    let mut worst_rel: f64 = 0.0;
    let mut worst_order: f64 = 0.0;
    let mut bad = Vec::new();
    for id in 1..=4 {
        let table = reference_table(id).map_err(|e| e.to_string())?;
        assert_eq!(table.kind, StudyKind::Space);
        for alpha in table.alphas() {
            let rows: Vec<_> = table.rows.iter().filter(|r| r.alpha == alpha).collect();
            let mut degrees: Vec<usize> = rows.iter().map(|r| r.degree).collect();
            degrees.dedup();
            let mut cells: Vec<usize> = rows.iter().filter(|r| r.degree == degrees[0]).map(|r| r.cells).collect();
            cells.sort_unstable();
            let problem = example41(alpha).map_err(|e| e.to_string())?;
            let report = converge_space(&problem, &degrees, &cells, 1e-3).map_err(|e| e.to_string())?;
            for r in &rows {
                let got =
                    report.rows.iter().find(|g| g.degree == r.degree && g.cells == r.cells).ok_or("missing row")?;
                let rel = (got.l2 - r.l2).abs() / r.l2;
                worst_rel = worst_rel.max(rel);
                if rel > 0.10 {
                    bad.push(format!("alpha={alpha} k={} N={}: {:e} vs {:e}", r.degree, r.cells, got.l2, r.l2));
                }
                if r.cells == 80 {
                    let order = got.l2_order.ok_or("missing order")?;
                    let dev = (order - (r.degree + 1) as f64).abs();
                    worst_order = worst_order.max(dev);
                    if dev > 0.15 {
                        bad.push(format!("alpha={alpha} k={} order {order:.3}", r.degree));
                    }
                }
            }
        }
    }
    check(
        bad.is_empty(),
        format!("worst L2 deviation {:.2}%, worst order offset {worst_order:.3} {bad:?}", 100.0 * worst_rel),
    )
}

fn temporal_convergence() -> Outcome {
    let table = reference_table(5).map_err(|e| e.to_string())?;
    let dts = [0.05, 0.04, 0.03, 0.02];
    let mut parts = Vec::new();
    let mut ok = true;
    for alpha in [1.1, 1.8] {
        let problem = example41(alpha).map_err(|e| e.to_string())?;
        let report = converge_time(&problem, 2, 200, &dts).map_err(|e| e.to_string())?;
        let last = report.rows.last().unwrap();
        let order = last.l2_order.ok_or("missing order")?;
        ok &= (order - 2.0).abs() <= 0.3;
        parts.push(format!("alpha={alpha} order {order:.3}"));
        if alpha == 1.8 {
            let want = table
                .rows
                .iter()
                .find(|r| r.alpha == 1.8 && (r.dt - 0.02).abs() < 1e-12)
                .ok_or("missing reference cell")?
                .l2;
            let rel = (last.l2 - want).abs() / want;
            ok &= rel <= 0.20;
            parts.push(format!("L2 {:e} vs {want:e} ({:.2}%)", last.l2, 100.0 * rel));
        }
    }
    check(ok, parts.join(", "))
}

fn stability() -> Outcome {
    let mesh = uniform(40);
    let mut worst: f64 = 0.0;
    for dt in [0.1, 0.01, 0.001] {
        let steps = (10.0_f64 / dt).round() as usize;
        for alpha in [1.1, 1.5, 1.9] {
            let spec = stability_problem(alpha, 10.0).map_err(|e| e.to_string())?;
            let grid = TimeGrid::new(10.0, steps).map_err(|e| e.to_string())?;
            let res = run(&spec, &mesh, 2, &grid).map_err(|e| e.to_string())?;
            // u_1 = 0, so the bound is 3 ||u_h^0||.
            let bound = 3.0 * res.level_norms[0];
            let max = res.level_norms.iter().copied().fold(0.0, f64::max);
            worst = worst.max(max / bound);
        }
    }
    check(worst <= 1.0, format!("max norm / bound = {worst:.4}"))
}

fn operator_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    let mut min_eig = f64::INFINITY;
    let mut cases = 0;
    let orientations = [FluxOrientation::UMinusPPlus, FluxOrientation::UPlusPMinus];
    let steps = [(1.2, 1e-3), (1.8, 1e-3), (1.2, 0.05), (1.8, 0.05)];
    for k in 0..=2 {
        for n in [4, 7, 16] {
            for mesh in [uniform(n), jittered(n, &mut rng)] {
                for (orientation, (alpha, dt)) in orientations.iter().flat_map(|&o| steps.iter().map(move |&s| (o, s)))
                {
                    let beta = beta(alpha, dt).unwrap();
                    let ops = LdgOperators::assemble_with_beta(&mesh, k, beta, orientation)
                        .map_err(|e| format!("k={k} N={n}: {e}"))?;
                    let skew = (ops.divergence() + ops.gradient().transpose()).amax();
                    let a = ops.system();
                    let asym = (a - a.transpose()).amax();
                    let c = project_l2(|_| 1.7, &mesh, k);
                    let cv = DVector::from_column_slice(c.coefficients());
                    let ac = (a * &cv - 3.0 * &cv).amax();
                    worst = worst.max(skew).max(asym).max(ac);
                    let eig = a.clone().symmetric_eigen().eigenvalues.min();
                    min_eig = min_eig.min(eig);
                    cases += 1;
                }
            }
        }
    }
    check(
        worst <= 1e-12 && min_eig > 0.0,
        format!("{cases} operators, max residual {worst:.2e}, min eigenvalue of A {min_eig:.4}"),
    )
}

fn projection_rates() -> Outcome {
    let f = |x: f64| (2.0 * PI * x).sin();
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    type Proj = fn(&dyn Fn(f64) -> f64, &Arc<Mesh1D>, usize) -> DGFunction;
    let projections: [(&str, Proj); 3] = [
        ("P", |f, m, k| project_l2(f, m, k)),
        ("P+", |f, m, k| project_gauss_radau(f, m, k, RadauSide::Plus)),
        ("P-", |f, m, k| project_gauss_radau(f, m, k, RadauSide::Minus)),
    ];
    for (name, proj) in projections {
        for k in 0..=2 {
            let errors: Vec<f64> = [10, 20, 40].iter().map(|&n| proj(&f, &uniform(n), k).error_norms(f).l2).collect();
            for w in errors.windows(2) {
                let order = observed_order(w[0], w[1], 2.0, 1.0).unwrap();
                let dev = (order - (k + 1) as f64).abs();
                worst = worst.max(dev);
                if dev > 0.15 {
                    bad.push(format!("{name} k={k} order {order:.3}"));
                }
            }
        }
    }
    check(bad.is_empty(), format!("worst order offset {worst:.3} {bad:?}"))
}

fn convolution_oracle(levels: &[Vec<f64>], vel: &[f64], alpha: f64, dt: f64, n: usize) -> Vec<f64> {
    // levels[i + 1] = u^i; the backward difference quotient v_i uses u^i, u^{i-1}, u^{i-2}.
    let u = |i: usize| &levels[i + 1];
    let b = |i: usize| ((i + 1) as f64).powf(2.0 - alpha) - (i as f64).powf(2.0 - alpha);
    let v = |i: usize| -> Vec<f64> {
        if i == 0 {
            return vel.to_vec();
        }
        (0..vel.len()).map(|d| (3.0 * levels[i + 1][d] - 4.0 * levels[i][d] + levels[i - 1][d]) / (2.0 * dt)).collect()
    };
    let mut sum = vec![0.0; vel.len()];
    for i in 0..n {
        let (hi, lo) = (v(i + 1), v(i));
        for d in 0..vel.len() {
            sum[d] += b(n - i - 1) * (hi[d] - lo[d]);
        }
    }
    (0..vel.len()).map(|d| 3.0 * u(n)[d] - 2.0 * dt * sum[d]).collect()
}

fn naive_solve(a: &DMatrix<f64>, rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len();
    let mut m: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| a[(i, j)]).collect()).collect();
    let mut r = rhs.to_vec();
    for col in 0..n {
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            let pivot_row = m[col].clone();
            for (dst, src) in m[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= f * src;
            }
            r[row] -= f * r[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|c| m[row][c] * x[c]).sum();
        x[row] = (r[row] - s) / m[row][row];
    }
    x
}

fn oracle_equivalences() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut hist_err: f64 = 0.0;
    for _ in 0..20 {
        let alpha = rng.gen_range(1.01..1.99);
        let n = rng.gen_range(1..40);
        let ndof = rng.gen_range(1..12);
        let grid = TimeGrid::new(1.0, n + rng.gen_range(0..10)).unwrap();
        let levels: Vec<Vec<f64>> = (0..n + 1).map(|_| (0..ndof).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let vel: Vec<f64> = (0..ndof).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut hist = StateHistory::new(levels[0].clone(), levels[1].clone(), vel.clone()).unwrap();
        for l in &levels[2..] {
            hist.push(l).unwrap();
        }
        let w = CaputoWeights::new(alpha, &grid).unwrap();
        let got = history_rhs(&hist, &w, n).map_err(|e| e.to_string())?;
        // The oracle needs some u^n; its contribution cancels.
        let mut with_un = levels.clone();
        with_un.push((0..ndof).map(|_| rng.gen_range(-1.0..1.0)).collect());
        let want = convolution_oracle(&with_un, &vel, alpha, grid.dt(), n);
        let scale = want.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let err = got.iter().zip(&want).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())) / scale;
        hist_err = hist_err.max(err);
    }

    let mesh = uniform(10);
    let ops = LdgOperators::assemble(&mesh, 1, 1.5, 0.01).unwrap();
    let rhs: Vec<f64> = (0..ops.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let x = ops.solve_step(&rhs).map_err(|e| e.to_string())?;
    let y = naive_solve(ops.system(), &rhs);
    let solve_err = x.iter().zip(&y).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));

    let mut orders = Vec::new();
    for alpha in [1.2, 1.5, 1.8] {
        for lambda in [0.0, 4.0 * PI * PI] {
            let forcing = |t: f64| 2.0 * t.powf(2.0 - alpha) / fdldg_core::gamma(3.0 - alpha) + lambda * t * t;
            let err = |m| {
                solve_scalar_mode(lambda, alpha, &TimeGrid::new(1.0, m).unwrap(), (0.0, 0.0), forcing, |t| t * t)
                    .map(|s| s.final_error)
            };
            let (e1, e2) = (err(80).map_err(|e| e.to_string())?, err(160).map_err(|e| e.to_string())?);
            orders.push(observed_order(e1, e2, 2.0, 1.0).unwrap());
        }
    }
    let order_dev = orders.iter().fold(0.0f64, |m, o| m.max((o - 2.0).abs()));
    check(
        hist_err <= 1e-12 && solve_err <= 1e-10 && order_dev <= 0.3,
        format!(
            "history {hist_err:.2e}, dense solve {solve_err:.2e}, scalar orders {:?}",
            orders.iter().map(|o| format!("{o:.3}")).collect::<Vec<_>>()
        ),
    )
}

fn weight_properties() -> Outcome {
    let mut ok = true;
    let mut smallest = f64::INFINITY;
    for alpha in [1.01, 1.5, 1.99] {
        let b = caputo_weights(alpha, 100_000).map_err(|e| e.to_string())?;
        ok &= b[0] == 1.0;
        ok &= b.iter().all(|&x| x > 0.0);
        ok &= b.windows(2).all(|w| w[0] > w[1]);
        smallest = smallest.min(*b.last().unwrap());
    }
    check(ok, format!("b_0 = 1, positive and strictly decreasing; smallest b = {smallest:.3e}"))
}

fn manufactured_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..25 {
        let alpha = rng.gen_range(1.05..1.95);
        let (x, t) = (rng.gen_range(0.0..1.0), rng.gen_range(0.01..1.0));
        let p = example41(alpha).map_err(|e| e.to_string())?;
        let quad = caputo_by_quadrature(|s| p.exact().eval(x, s), alpha, t, 1e-10);
        worst = worst.max((quad - p.fractional_term(x, t)).abs());
    }
    check(worst <= 1e-6, format!("max |quadrature - closed form| = {worst:.2e}"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("spatial convergence", spatial_convergence),
        ("temporal convergence", temporal_convergence),
        ("stability", stability),
        ("operator identities", operator_identities),
        ("projection rates", projection_rates),
        ("oracle equivalences", oracle_equivalences),
        ("weight properties", weight_properties),
        ("manufactured consistency", manufactured_consistency),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {} {tag} {name}: {detail} [{:.1}s]", i + 1, start.elapsed().as_secs_f64());
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
