//! Quadrature over the complex measurement plane.
//!
//! Every integrand in this crate has the shape `ρ(β) e^{-w|β|²}` with a known
//! Gaussian width `w`, so the weight is absorbed analytically and the caller
//! supplies only the reduced factor `ρ`. Two schemes are available:
//!
//! * tensor Gauss–Hermite over `(Re β, Im β)` with the change of variables
//!   `β = u/√w` (the default), and
//! * polar Gauss–Laguerre in `t = w|β|²` times a uniform angular grid, which
//!   is spectrally accurate for periodic smooth integrands.
//!
//! Nodes and weights come from the Golub–Welsch eigenproblem of the Jacobi
//! matrix. Summation order is fixed — inner sums run within a row, rows are
//! added in order — so the parallel and sequential paths produce bit-identical
//! results.

use std::f64::consts::PI;

use num_complex::Complex64;
#[cfg(feature = "rayon")]
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default points per axis for single-plane oracle integrals.
pub const DEFAULT_PLANE_POINTS: usize = 48;
/// Default points per axis for the four-dimensional two-mode integrals.
pub const DEFAULT_TWO_MODE_POINTS: usize = 24;

/// Discretization scheme for one measurement plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadScheme {
    /// Tensor product of Gauss–Hermite rules on the real and imaginary axes.
    TensorGaussHermite,
    /// Gauss–Laguerre in the squared radius times a uniform angular grid.
    PolarGaussLaguerre,
}

/// How to integrate over a measurement plane: scheme, points per axis, and
/// an optional override of the absorbed Gaussian width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    scheme: QuadScheme,
    points: usize,
    width: Option<f64>,
}

impl QuadratureSpec {
    pub const MIN_POINTS: usize = 8;

    pub fn new(scheme: QuadScheme, points: usize) -> Result<Self> {
        if points < Self::MIN_POINTS {
            return Err(Error::TooFewQuadraturePoints {
                points,
                min: Self::MIN_POINTS,
            });
        }
        Ok(Self {
            scheme,
            points,
            width: None,
        })
    }

    pub fn gauss_hermite(points: usize) -> Result<Self> {
        Self::new(QuadScheme::TensorGaussHermite, points)
    }

    pub fn polar_laguerre(points: usize) -> Result<Self> {
        Self::new(QuadScheme::PolarGaussLaguerre, points)
    }

    /// Override the Gaussian width absorbed into the nodes. The default is
    /// the envelope width of the integrand at hand.
    pub fn with_width(mut self, width: f64) -> Result<Self> {
        if !width.is_finite() || width <= 0.0 {
            return Err(Error::InvalidQuadratureWidth { width });
        }
        self.width = Some(width);
        Ok(self)
    }

    pub fn scheme(&self) -> QuadScheme {
        self.scheme
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn width_override(&self) -> Option<f64> {
        self.width
    }

    /// The same spec with twice the points per axis (convergence checks).
    pub fn doubled(&self) -> Self {
        Self {
            points: 2 * self.points,
            ..*self
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            scheme: QuadScheme::TensorGaussHermite,
            points: DEFAULT_PLANE_POINTS,
            width: None,
        }
    }
}

/// Eigenvalue form of the Golub–Welsch construction: nodes are eigenvalues
/// of the symmetric tridiagonal Jacobi matrix, weights are `µ₀` times the
/// squared first eigenvector components.
fn golub_welsch(diag: &[f64], offdiag: &[f64], mu0: f64) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
    for (i, &d) in diag.iter().enumerate() {
        m[(i, i)] = d;
    }
    for (i, &e) in offdiag.iter().enumerate() {
        m[(i, i + 1)] = e;
        m[(i + 1, i)] = e;
    }
    let eig = m.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Gauss–Hermite nodes and weights for `∫ f(x) e^{-x²} dx`.
pub(crate) fn gauss_hermite_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let diag = vec![0.0; n];
    let offdiag: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    golub_welsch(&diag, &offdiag, PI.sqrt())
}

/// Gauss–Laguerre nodes and weights for `∫₀^∞ f(t) e^{-t} dt`.
pub(crate) fn gauss_laguerre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + 1.0).collect();
    let offdiag: Vec<f64> = (1..n).map(|k| k as f64).collect();
    golub_welsch(&diag, &offdiag, 1.0)
}

/// A ready-to-run rule for `∫ ρ(β) e^{-w|β|²} d²β` over one complex plane.
#[derive(Debug, Clone)]
pub struct PlaneRule {
    scale: f64,
    row_len: usize,
    flat: Vec<(Complex64, f64)>,
}

impl PlaneRule {
    pub fn new(spec: &QuadratureSpec, default_width: f64) -> Result<Self> {
        let w = spec.width.unwrap_or(default_width);
        if !w.is_finite() || w <= 0.0 {
            return Err(Error::InvalidQuadratureWidth { width: w });
        }
        let n = spec.points;
        let (scale, flat) = match spec.scheme {
            QuadScheme::TensorGaussHermite => {
                let (xs, ws) = gauss_hermite_rule(n);
                let inv_sqrt_w = w.sqrt().recip();
                let mut flat = Vec::with_capacity(n * n);
                for (x, wx) in xs.iter().zip(&ws) {
                    for (y, wy) in xs.iter().zip(&ws) {
                        flat.push((Complex64::new(*x, *y) * inv_sqrt_w, wx * wy));
                    }
                }
                (w.recip(), flat)
            }
            QuadScheme::PolarGaussLaguerre => {
                let (ts, wt) = gauss_laguerre_rule(n);
                let mut flat = Vec::with_capacity(n * n);
                for (t, wr) in ts.iter().zip(&wt) {
                    let radius = (t / w).sqrt();
                    for j in 0..n {
                        let theta = 2.0 * PI * j as f64 / n as f64;
                        flat.push((Complex64::from_polar(radius, theta), *wr));
                    }
                }
                (PI / (n as f64 * w), flat)
            }
        };
        Ok(Self {
            scale,
            row_len: n,
            flat,
        })
    }

    /// The grid nodes with their combined weights, row-major.
    pub fn nodes(&self) -> &[(Complex64, f64)] {
        &self.flat
    }

    fn row_sum<F>(&self, row: &[(Complex64, f64)], reduced: &F) -> f64
    where
        F: Fn(Complex64) -> f64,
    {
        row.iter().map(|(beta, w)| w * reduced(*beta)).sum()
    }

    /// Integrate `ρ(β) e^{-w|β|²}` over the plane, sequentially.
    pub fn integrate<F>(&self, reduced: F) -> f64
    where
        F: Fn(Complex64) -> f64,
    {
        let total: f64 = self
            .flat
            .chunks(self.row_len)
            .map(|row| self.row_sum(row, &reduced))
            .sum();
        self.scale * total
    }

    /// Same as [`integrate`](Self::integrate) but with rows evaluated in
    /// parallel. The reduction order is unchanged, so the result is
    /// bit-identical to the sequential path.
    #[cfg(feature = "rayon")]
    pub fn par_integrate<F>(&self, reduced: F) -> f64
    where
        F: Fn(Complex64) -> f64 + Sync,
    {
        let rows: Vec<f64> = self
            .flat
            .par_chunks(self.row_len)
            .map(|row| self.row_sum(row, &reduced))
            .collect();
        self.scale * rows.iter().sum::<f64>()
    }

    fn pair_row_sum<F>(&self, a: usize, reduced: &F) -> f64
    where
        F: Fn(usize, usize) -> f64,
    {
        let wa = self.flat[a].1;
        wa * self
            .flat
            .iter()
            .enumerate()
            .map(|(b, (_, wb))| wb * reduced(a, b))
            .sum::<f64>()
    }

    /// Integrate `ρ(β₁, β₂) e^{-w(|β₁|²+|β₂|²)}` over two planes with the
    /// same rule on each, addressing nodes by index into [`nodes`](Self::nodes).
    pub fn integrate_pairs_indexed<F>(&self, reduced: F) -> f64
    where
        F: Fn(usize, usize) -> f64,
    {
        let total: f64 = (0..self.flat.len())
            .map(|a| self.pair_row_sum(a, &reduced))
            .sum();
        self.scale * self.scale * total
    }

    /// Parallel twin of [`integrate_pairs_indexed`](Self::integrate_pairs_indexed);
    /// bit-identical by the same ordered reduction.
    #[cfg(feature = "rayon")]
    pub fn par_integrate_pairs_indexed<F>(&self, reduced: F) -> f64
    where
        F: Fn(usize, usize) -> f64 + Sync,
    {
        let rows: Vec<f64> = (0..self.flat.len())
            .into_par_iter()
            .map(|a| self.pair_row_sum(a, &reduced))
            .collect();
        self.scale * self.scale * rows.iter().sum::<f64>()
    }

    /// Two-plane integration with node values supplied directly.
    pub fn integrate_pairs<F>(&self, reduced: F) -> f64
    where
        F: Fn(Complex64, Complex64) -> f64,
    {
        self.integrate_pairs_indexed(|a, b| reduced(self.flat[a].0, self.flat[b].0))
    }

    #[cfg(feature = "rayon")]
    pub fn par_integrate_pairs<F>(&self, reduced: F) -> f64
    where
        F: Fn(Complex64, Complex64) -> f64 + Sync,
    {
        self.par_integrate_pairs_indexed(|a, b| reduced(self.flat[a].0, self.flat[b].0))
    }
}
