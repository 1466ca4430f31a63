//! Manufactured problems with closed-form sources.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::{ScalarField, SpaceTimeField};
use crate::gamma::gamma;
use crate::quadrature::gauss_rule;
use crate::solver::ProblemSpec;

/// `u(x, t) = t^m sin(2 pi q x)` on `[0, 1] x [0, 1]`, so
/// `f = [Gamma(m+1)/Gamma(m+1-alpha) t^{m-alpha} + (2 pi q)^2 t^m] sin(2 pi q x)`.
#[derive(Debug, Clone)]
pub struct ManufacturedProblem {
    name: String,
    note: String,
    power: u32,
    mode: u32,
    spec: ProblemSpec,
    exact: SpaceTimeField,
    fractional: SpaceTimeField,
}

impl ManufacturedProblem {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// How the source was derived.
    pub fn note(&self) -> &str {
        &self.note
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn alpha(&self) -> f64 {
        self.spec.alpha()
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn mode(&self) -> u32 {
        self.mode
    }

    pub fn exact(&self) -> &SpaceTimeField {
        &self.exact
    }

    /// Closed-form Caputo derivative of the exact solution.
    pub fn fractional_term(&self, x: f64, t: f64) -> f64 {
        self.fractional.eval(x, t)
    }

    pub fn source(&self, x: f64, t: f64) -> f64 {
        self.spec.source().eval(x, t)
    }

    /// `D^alpha u - u_xx - f` with the Caputo integral evaluated by adaptive
    /// quadrature and `u_xx` by a fourth-order difference, both from the
    /// exact solution alone.
    pub fn consistency_residual(&self, x: f64, t: f64) -> f64 {
        let u = &self.exact;
        let caputo = caputo_by_quadrature(|s| u.eval(x, s), self.alpha(), t, 1e-10);
        let h = 1e-3;
        let uxx = (-u.eval(x + 2.0 * h, t) + 16.0 * u.eval(x + h, t) - 30.0 * u.eval(x, t) + 16.0 * u.eval(x - h, t)
            - u.eval(x - 2.0 * h, t))
            / (12.0 * h * h);
        caputo - uxx - self.source(x, t)
    }

    /// Copy with a different final time.
    pub fn with_t_final(mut self, t_final: f64) -> Result<Self> {
        self.spec = self.spec.with_t_final(t_final)?;
        Ok(self)
    }

    /// Looks a problem up by name: `example41` or `power:<m>:<q>`.
    pub fn by_name(name: &str, alpha: f64) -> Result<Self> {
        if name == "example41" {
            return example41(alpha);
        }
        let parts: Vec<&str> = name.split(':').collect();
        if parts.len() == 3 && parts[0] == "power" {
            let m = parts[1].parse().map_err(|_| Error::invalid(format!("bad power in {name:?}")))?;
            let q = parts[2].parse().map_err(|_| Error::invalid(format!("bad mode in {name:?}")))?;
            return power_time_problem(alpha, m, q);
        }
        Err(Error::invalid(format!("unknown problem {name:?}; expected example41 or power:<m>:<q>")))
    }
}

/// The benchmark: `u = t^2 sin(2 pi x)`, zero initial data.
pub fn example41(alpha: f64) -> Result<ManufacturedProblem> {
    let mut p = power_time_problem(alpha, 2, 1)?;
    p.name = "example41".into();
    Ok(p)
}

/// `u = t^m sin(2 pi q x)` for `m >= 2` (so `u(., 0) = u_t(., 0) = 0`).
pub fn power_time_problem(alpha: f64, m: u32, q: u32) -> Result<ManufacturedProblem> {
    if m < 2 {
        return Err(Error::invalid(format!("time power must be at least 2, got {m}")));
    }
    if q == 0 {
        return Err(Error::invalid("spatial mode must be positive"));
    }
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::invalid(format!("fractional order must lie in (1, 2), got {alpha}")));
    }
    let mf = m as f64;
    let factor = gamma(mf + 1.0) / gamma(mf + 1.0 - alpha);
    let k = 2.0 * PI * q as f64;
    let shape = move |x: f64| (k * x).sin();
    let exact = SpaceTimeField::new(move |x, t| t.powi(m as i32) * shape(x));
    let fractional = SpaceTimeField::new(move |x, t| factor * t.powf(mf - alpha) * shape(x));
    let frac = fractional.clone();
    let source = SpaceTimeField::new(move |x, t| frac.eval(x, t) + k * k * t.powi(m as i32) * shape(x));
    let spec = ProblemSpec::new(alpha, (0.0, 1.0), 1.0, ScalarField::zero(), ScalarField::zero(), source)?
        .with_exact(exact.clone());
    Ok(ManufacturedProblem {
        name: format!("power:{m}:{q}"),
        note: format!(
            "u = t^{m} sin(2 pi {q} x); D^alpha t^{m} = Gamma({})/Gamma({} - alpha) t^({m} - alpha); -u_xx = (2 pi {q})^2 u",
            m + 1,
            m + 1
        ),
        power: m,
        mode: q,
        spec,
        exact,
        fractional,
    })
}

/// Source-free problem used to probe stability:
/// `u_0 = sin(2 pi x) + 0.3 sin(4 pi x)`, `u_1 = 0`, `f = 0`.
pub fn stability_problem(alpha: f64, t_final: f64) -> Result<ProblemSpec> {
    ProblemSpec::new(
        alpha,
        (0.0, 1.0),
        t_final,
        ScalarField::new(|x| (2.0 * PI * x).sin() + 0.3 * (4.0 * PI * x).sin()),
        ScalarField::zero(),
        SpaceTimeField::zero(),
    )
}

/// Caputo derivative of order `1 < alpha < 2` at `t`,
/// `1/Gamma(2-alpha) ∫_0^t u''(s) (t-s)^{1-alpha} ds`, by adaptive Gauss
/// quadrature. `u''` comes from a fourth-order central difference of `u`.
///
/// The weak endpoint singularity is removed with `w = (t-s)^{2-alpha}/(2-alpha)`.
pub fn caputo_by_quadrature(u: impl Fn(f64) -> f64, alpha: f64, t: f64, tol: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let h = 1e-2;
    let utt =
        |s: f64| (-u(s + 2.0 * h) + 16.0 * u(s + h) - 30.0 * u(s) + 16.0 * u(s - h) - u(s - 2.0 * h)) / (12.0 * h * h);
    let g = 2.0 - alpha;
    let upper = t.powf(g) / g;
    let integrand = |w: f64| utt(t - (g * w).powf(1.0 / g));
    adaptive_gauss(&integrand, 0.0, upper, tol) / gamma(2.0 - alpha)
}

// Bisects until 8- and 16-point Gauss agree to the panel's share of `tol`.
fn adaptive_gauss(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let coarse = gauss_rule(8).expect("nonzero order");
    let fine = gauss_rule(16).expect("nonzero order");
    let density = tol / (b - a);
    let mut stack = vec![(a, b, 0u32)];
    let mut sum = 0.0;
    while let Some((lo, hi, depth)) = stack.pop() {
        let g8 = coarse.integrate(lo, hi, f);
        let g16 = fine.integrate(lo, hi, f);
        if depth >= 60 || (g16 - g8).abs() <= density * (hi - lo) {
            sum += g16;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    sum
}
