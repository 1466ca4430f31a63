//! Members of the broken polynomial space: projections, point evaluation,
//! interface traces and error norms.

use std::fmt;
use std::sync::Arc;

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::mesh::Mesh1D;
use crate::quadrature::{gauss_rule, QuadratureRule};

/// Points per cell used for every error norm.
pub const NORM_QUADRATURE_POINTS: usize = 10;

/// Quadrature order used for inner products in assembly and projection.
pub fn assembly_points(degree: usize) -> usize {
    degree + 3
}

/// A real function of one space variable, optionally tagged with the time
/// it was frozen at.
#[derive(Clone)]
pub struct ScalarField {
    func: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    time: Option<f64>,
}

impl ScalarField {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { func: Arc::new(f), time: None }
    }

    pub fn zero() -> Self {
        Self::new(|_| 0.0)
    }

    pub fn with_time(mut self, t: f64) -> Self {
        self.time = Some(t);
        self
    }

    pub fn time(&self) -> Option<f64> {
        self.time
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.func)(x)
    }
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField").field("time", &self.time).finish_non_exhaustive()
    }
}

/// A real function of `(x, t)`.
#[derive(Clone)]
pub struct SpaceTimeField(Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>);

impl SpaceTimeField {
    pub fn new(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn zero() -> Self {
        Self::new(|_, _| 0.0)
    }

    #[inline]
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        (self.0)(x, t)
    }

    /// Freezes time.
    pub fn at(&self, t: f64) -> ScalarField {
        let inner = Arc::clone(&self.0);
        ScalarField::new(move |x| inner(x, t)).with_time(t)
    }
}

impl fmt::Debug for SpaceTimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SpaceTimeField(..)")
    }
}

/// Which endpoint a Gauss–Radau projection interpolates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadauSide {
    /// `P⁺`: matches the function at the left end of every cell.
    Plus,
    /// `P⁻`: matches the function at the right end of every cell.
    Minus,
}

/// `(u⁻, u⁺)` at one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trace {
    pub minus: f64,
    pub plus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    pub l2: f64,
    pub l1: f64,
    pub linf: f64,
}

/// Piecewise polynomial of degree `k` with modal coefficients, cell-major:
/// entry `j * (k + 1) + m` multiplies `phi_{j,m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DGFunction {
    mesh: Arc<Mesh1D>,
    degree: usize,
    coeffs: Vec<f64>,
}

impl DGFunction {
    pub fn zeros(mesh: Arc<Mesh1D>, degree: usize) -> Self {
        let n = mesh.num_cells() * (degree + 1);
        Self { mesh, degree, coeffs: vec![0.0; n] }
    }

    pub fn from_coefficients(mesh: Arc<Mesh1D>, degree: usize, coeffs: Vec<f64>) -> Result<Self> {
        let want = mesh.num_cells() * (degree + 1);
        if coeffs.len() != want {
            return Err(Error::invalid(format!(
                "coefficient length {} does not match {} cells x {} modes",
                coeffs.len(),
                mesh.num_cells(),
                degree + 1
            )));
        }
        Ok(Self { mesh, degree, coeffs })
    }

    pub fn mesh(&self) -> &Arc<Mesh1D> {
        &self.mesh
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modes(&self) -> usize {
        self.degree + 1
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coefficients_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn cell_coefficients(&self, j: usize) -> &[f64] {
        let p = self.modes();
        &self.coeffs[j * p..(j + 1) * p]
    }

    /// L² norm from the coefficients (the basis is orthonormal).
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Value inside cell `j` at reference coordinate `xi`.
    pub fn eval_reference(&self, j: usize, xi: f64) -> f64 {
        let mut vals = vec![0.0; self.modes()];
        Basis::new(self.degree).values_at(xi, self.mesh.width(j), &mut vals);
        vals.iter().zip(self.cell_coefficients(j)).map(|(v, c)| v * c).sum()
    }

    /// Point value; at an interior interface the left cell's limit is used.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let j = self.mesh.locate(x)?;
        let xi = self.mesh.to_reference(j, x).clamp(-1.0, 1.0);
        Ok(self.eval_reference(j, xi))
    }

    /// Right-end value of cell `j`.
    pub fn right_value(&self, j: usize) -> f64 {
        let w = self.mesh.width(j);
        self.cell_coefficients(j).iter().enumerate().map(|(m, c)| c * Basis::scale(m, w)).sum()
    }

    /// Left-end value of cell `j`.
    pub fn left_value(&self, j: usize) -> f64 {
        let w = self.mesh.width(j);
        self.cell_coefficients(j)
            .iter()
            .enumerate()
            .map(|(m, c)| {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                sign * c * Basis::scale(m, w)
            })
            .sum()
    }

    /// Traces at every interface. Entry `j` is the interface on the right of
    /// cell `j`; the last entry wraps to the left end of cell 0.
    pub fn traces(&self) -> Vec<Trace> {
        (0..self.mesh.num_cells())
            .map(|j| Trace { minus: self.right_value(j), plus: self.left_value(self.mesh.right_of(j)) })
            .collect()
    }

    /// L² and L¹ norms of `self - exact` by 10-point Gauss quadrature per
    /// cell. L∞ is the largest deviation over those nodes and both one-sided
    /// endpoint values of every cell.
    pub fn error_norms(&self, exact: impl Fn(f64) -> f64) -> ErrorNorms {
        let rule = gauss_rule(NORM_QUADRATURE_POINTS).expect("positive order");
        let mut vals = vec![0.0; self.modes()];
        let basis = Basis::new(self.degree);
        let (mut l2, mut l1, mut linf) = (0.0f64, 0.0f64, 0.0f64);
        for j in 0..self.mesh.num_cells() {
            let w = self.mesh.width(j);
            let c = self.cell_coefficients(j);
            for (xi, wq) in rule.iter() {
                basis.values_at(xi, w, &mut vals);
                let uh: f64 = vals.iter().zip(c).map(|(v, c)| v * c).sum();
                let e = (uh - exact(self.mesh.from_reference(j, xi))).abs();
                l2 += 0.5 * w * wq * e * e;
                l1 += 0.5 * w * wq * e;
                linf = linf.max(e);
            }
            let (lo, hi) = self.mesh.cell(j);
            linf = linf.max((self.left_value(j) - exact(lo)).abs()).max((self.right_value(j) - exact(hi)).abs());
        }
        ErrorNorms { l2: l2.sqrt(), l1, linf }
    }

    pub fn axpy(&mut self, a: f64, other: &DGFunction) {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += a * y;
        }
    }
}

fn cell_moments(
    rule: &QuadratureRule,
    basis: &Basis,
    mesh: &Mesh1D,
    j: usize,
    f: &impl Fn(f64) -> f64,
    out: &mut [f64],
) {
    let w = mesh.width(j);
    let mut vals = vec![0.0; out.len()];
    out.iter_mut().for_each(|o| *o = 0.0);
    for (xi, wq) in rule.iter() {
        basis.values_at(xi, w, &mut vals);
        let fx = f(mesh.from_reference(j, xi));
        for (o, v) in out.iter_mut().zip(&vals) {
            *o += 0.5 * w * wq * fx * v;
        }
    }
}

/// L² projection onto degree-`k` polynomials cell by cell.
pub fn project_l2(f: impl Fn(f64) -> f64, mesh: &Arc<Mesh1D>, k: usize) -> DGFunction {
    let rule = gauss_rule(assembly_points(k)).expect("positive order");
    let basis = Basis::new(k);
    let mut out = DGFunction::zeros(Arc::clone(mesh), k);
    let p = k + 1;
    for j in 0..mesh.num_cells() {
        cell_moments(&rule, &basis, mesh, j, &f, &mut out.coeffs[j * p..(j + 1) * p]);
    }
    out
}

/// Gauss–Radau projection `P⁺` or `P⁻`: moments against degree `k - 1`
/// plus exact interpolation at one endpoint of every cell.
///
/// The orthonormal basis makes the local system triangular: the first `k`
/// modes are the L² moments and the top mode is fixed by the endpoint.
pub fn project_gauss_radau(f: impl Fn(f64) -> f64, mesh: &Arc<Mesh1D>, k: usize, side: RadauSide) -> DGFunction {
    let rule = gauss_rule(assembly_points(k)).expect("positive order");
    let basis = Basis::new(k);
    let mut out = DGFunction::zeros(Arc::clone(mesh), k);
    let p = k + 1;
    for j in 0..mesh.num_cells() {
        let w = mesh.width(j);
        let c = &mut out.coeffs[j * p..(j + 1) * p];
        cell_moments(&rule, &basis, mesh, j, &f, c);
        let (lo, hi) = mesh.cell(j);
        let (x_end, end_sign) = match side {
            RadauSide::Plus => (lo, -1.0f64),
            RadauSide::Minus => (hi, 1.0f64),
        };
        // phi_m at the chosen endpoint is scale_m * end_sign^m.
        let phi_end = |m: usize| Basis::scale(m, w) * end_sign.powi(m as i32);
        let lower: f64 = (0..k).map(|m| c[m] * phi_end(m)).sum();
        let pivot = phi_end(k);
        assert!(pivot != 0.0, "Gauss-Radau local system is singular");
        c[k] = (f(x_end) - lower) / pivot;
    }
    out
}
